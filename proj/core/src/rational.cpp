#include "inhomog/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace inhomog {

Rational pow2(long e) {
  Rational q;
  if (e >= 0) {
    mpz_mul_2exp(q.get_num_mpz_t(), BigInt(1).get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(q.get_den_mpz_t(), BigInt(1).get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    mpz_set_ui(q.get_num_mpz_t(), 1);
  }
  return q;
}

BigInt floor_rat(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

BigInt ceil_rat(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

Rational frac(const Rational& q) {
  Rational r = q - Rational(floor_rat(q));
  r.canonicalize();
  return r;
}

std::string to_text(const BigInt& n) { return n.get_str(); }

std::string to_text(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

static bool integer_shape(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::optional<BigInt> parse_bigint(const std::string& s) {
  if (!integer_shape(s)) return std::nullopt;
  return BigInt(s, 10);
}

std::optional<Rational> parse_rational(const std::string& s) {
  std::size_t slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!integer_shape(num) || !integer_shape(den)) return std::nullopt;
  BigInt n(num, 10), d(den, 10);
  if (d == 0) return std::nullopt;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string decimal_text(const Rational& q, int digits) {
  bool neg = q < 0;
  Rational a = neg ? Rational(-q) : q;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = floor_rat(Rational(a * Rational(scale)));
  BigInt ip = scaled / scale, fp = scaled % scale;
  std::string f = fp.get_str();
  f.insert(f.begin(), static_cast<std::size_t>(digits) - f.size(), '0');
  return (neg ? "-" : "") + ip.get_str() + "." + f;
}

long ceil_log2(const Rational& q) {
  // smallest e with q <= 2^e
  if (q <= 0) return 0;
  long e = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2)) + 1;
  while (q > pow2(e)) ++e;
  while (q <= pow2(e - 1)) --e;
  return e;
}

void PairwiseSum::add(Rational term) {
  ++count_;
  for (std::size_t i = 0;; ++i) {
    if (i == slots_.size()) {
      slots_.push_back(std::move(term));
      occupied_.push_back(true);
      return;
    }
    if (!occupied_[i]) {
      slots_[i] = std::move(term);
      occupied_[i] = true;
      return;
    }
    term += slots_[i];
    occupied_[i] = false;
  }
}

Rational PairwiseSum::total() const {
  Rational s = 0;
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (occupied_[i]) s += slots_[i];
  return s;
}

Rational pairwise_sum(const std::vector<Rational>& terms) {
  PairwiseSum acc;
  for (const auto& t : terms) acc.add(t);
  return acc.total();
}

}  // namespace inhomog
