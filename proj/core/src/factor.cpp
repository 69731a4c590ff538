#include "inhomog/factor.hpp"

#include <stdexcept>

namespace inhomog {

namespace {

bool is_prime(const BigInt& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

// Brent's cycle variant; deterministic restarts.
BigInt pollard_rho(const BigInt& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      BigInt diff = x - y;
      if (diff < 0) diff = -diff;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(BigInt n, FactorMap& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  BigInt d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

FactorMap factorize(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("factorize needs n >= 1");
  FactorMap out;
  BigInt m = n;
  for (unsigned long p = 2; p < 100000 && BigInt(p) * p <= m; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++out[BigInt(p)];
      m /= p;
    }
  }
  if (m > 1) factor_into(m, out);
  return out;
}

BigInt value_of(const FactorMap& f) {
  BigInt v = 1;
  for (const auto& [p, e] : f) {
    for (unsigned long i = 0; i < e; ++i) v *= p;
  }
  return v;
}

BigInt radical(const FactorMap& f) {
  BigInt v = 1;
  for (const auto& [p, e] : f) v *= p;
  return v;
}

BigInt totient(const FactorMap& f) {
  BigInt v = 1;
  for (const auto& [p, e] : f) {
    v *= p - 1;
    for (unsigned long i = 1; i < e; ++i) v *= p;
  }
  return v;
}

Rational totient_ratio(const FactorMap& f) {
  Rational r(1);
  for (const auto& [p, e] : f) {
    Rational t(p - 1, p);
    t.canonicalize();
    r *= t;
  }
  return r;
}

FactorMap merge_factors(const FactorMap& a, const FactorMap& b) {
  FactorMap out = a;
  for (const auto& [p, e] : b) out[p] += e;
  return out;
}

FactorMap subtract_factors(const FactorMap& a, const FactorMap& b) {
  FactorMap out = a;
  for (const auto& [p, e] : b) {
    auto it = out.find(p);
    if (it == out.end() || it->second < e)
      throw std::invalid_argument("factor multiset subtraction underflow at prime " + p.get_str());
    it->second -= e;
    if (it->second == 0) out.erase(it);
  }
  return out;
}

}  // namespace inhomog
