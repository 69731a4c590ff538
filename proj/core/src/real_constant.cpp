#include "inhomog/real_constant.hpp"

#include <stdexcept>

namespace inhomog {

namespace {

constexpr int kExactBits = 1 << 20;

Rational shift_down(const BigInt& x, long k) {
  // x / 2^k
  Rational q(x, 1);
  mpz_mul_2exp(q.get_den_mpz_t(), q.get_den().get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  q.canonicalize();
  return q;
}

int width_precision(const Rational& w) {
  if (w == 0) return kExactBits;
  long e = ceil_log2(w);
  return e >= 0 ? 0 : static_cast<int>(-e);
}

Rational dist_point_to_integers(const Rational& x) {
  Rational r = frac(x);
  Rational other = 1 - r;
  return r <= other ? r : other;
}

void extract_square_part(BigInt& c, BigInt& b) {
  for (unsigned long p = 2; p <= 10000; ++p) {
    BigInt p2 = BigInt(p) * p;
    if (p2 > c) break;
    while (mpz_divisible_p(c.get_mpz_t(), p2.get_mpz_t())) {
      c /= p2;
      b *= p;
    }
  }
  if (mpz_perfect_square_p(c.get_mpz_t())) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), c.get_mpz_t());
    b *= r;
    c = 1;
  }
}

}  // namespace

Ternary enclosure_leq(const Enclosure& e, const Rational& t) {
  if (e.hi <= t) return Ternary::yes;
  if (e.lo > t) return Ternary::no;
  return Ternary::unknown;
}

Ternary enclosure_less(const Enclosure& e, const Rational& t) {
  if (e.hi < t) return Ternary::yes;
  if (e.lo >= t) return Ternary::no;
  return Ternary::unknown;
}

RealConstant RealConstant::rational(Rational v) {
  RealConstant r;
  r.rational_ = true;
  v.canonicalize();
  r.rat_ = std::move(v);
  return r;
}

RealConstant RealConstant::surd(BigInt a, BigInt b, BigInt c, BigInt d) {
  if (d == 0) throw std::invalid_argument("surd denominator is zero");
  if (c < 0) throw std::invalid_argument("surd base is negative");
  if (b == 0 || c == 0) return rational(Rational(a, d));
  extract_square_part(c, b);
  if (c == 1) return rational(Rational(a + b, d));
  if (d < 0) {
    a = -a;
    b = -b;
    d = -d;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  RealConstant r;
  r.rational_ = false;
  r.a_ = a / g;
  r.b_ = b / g;
  r.c_ = c;
  r.d_ = d / g;
  return r;
}

Rational RealConstant::coeff_const() const {
  if (rational_) return rat_;
  Rational q(a_, d_);
  q.canonicalize();
  return q;
}

Rational RealConstant::coeff_surd() const {
  if (rational_) return Rational(0);
  Rational q(b_, d_);
  q.canonicalize();
  return q;
}

std::optional<RealConstant> RealConstant::parse(const std::string& s) {
  if (s.rfind("rat:", 0) == 0) {
    auto q = parse_rational(s.substr(4));
    if (!q) return std::nullopt;
    return rational(*q);
  }
  if (s.rfind("surd:", 0) == 0) {
    std::string body = s.substr(5);
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = body.find(',', start);
      parts.push_back(body.substr(start, comma == std::string::npos ? comma : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (parts.size() != 4) return std::nullopt;
    std::vector<BigInt> v;
    for (const auto& p : parts) {
      auto n = parse_bigint(p);
      if (!n) return std::nullopt;
      v.push_back(*n);
    }
    if (v[3] == 0 || v[2] < 0) return std::nullopt;
    return surd(v[0], v[1], v[2], v[3]);
  }
  return std::nullopt;
}

std::string RealConstant::to_text() const {
  if (rational_) return "rat:" + inhomog::to_text(rat_);
  return "surd:" + a_.get_str() + "," + b_.get_str() + "," + c_.get_str() + "," + d_.get_str();
}

bool RealConstant::operator==(const RealConstant& o) const {
  if (rational_ != o.rational_) return false;
  if (rational_) return rat_ == o.rat_;
  return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

Enclosure refine(const RealConstant& v, int precision_bits) {
  if (precision_bits < 1) precision_bits = 1;
  if (v.is_rational())
    return Enclosure{v.rational_value(), v.rational_value(), kExactBits};

  BigInt babs = abs(v.b());
  Rational need = Rational(babs, v.d()) * pow2(precision_bits);
  need.canonicalize();
  long k = ceil_log2(need);
  if (k < 0) k = 0;

  // s <= sqrt(c) * 2^k < s + 1
  BigInt c4k;
  mpz_mul_2exp(c4k.get_mpz_t(), v.c().get_mpz_t(), static_cast<mp_bitcnt_t>(2 * k));
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), c4k.get_mpz_t());
  Rational sq_lo = shift_down(s, k), sq_hi = shift_down(s + 1, k);

  Rational aq(v.a(), v.d()), bq(v.b(), v.d());
  aq.canonicalize();
  bq.canonicalize();
  Rational lo, hi;
  if (v.b() > 0) {
    lo = aq + bq * sq_lo;
    hi = aq + bq * sq_hi;
  } else {
    lo = aq + bq * sq_hi;
    hi = aq + bq * sq_lo;
  }
  return Enclosure{lo, hi, precision_bits};
}

Enclosure dist_to_integers(const Enclosure& e) {
  Rational da = dist_point_to_integers(e.lo);
  Rational db = dist_point_to_integers(e.hi);
  bool has_int = ceil_rat(e.lo) <= floor_rat(e.hi);
  Rational half = rat(1, 2);
  bool has_half = ceil_rat(Rational(e.lo - half)) <= floor_rat(Rational(e.hi - half));
  Rational lo = has_int ? Rational(0) : (da <= db ? da : db);
  Rational hi = has_half ? half : (da >= db ? da : db);
  return Enclosure{lo, hi, width_precision(Rational(hi - lo))};
}

Enclosure dist_nearest_int(const RealConstant& v, const BigInt& n, const Rational& w,
                           int precision_bits) {
  if (v.is_rational()) {
    Rational d = dist_point_to_integers(Rational(Rational(n) * v.rational_value() - w));
    return Enclosure{d, d, kExactBits};
  }
  if (n == 0) {
    Rational d = dist_point_to_integers(Rational(-w));
    return Enclosure{d, d, kExactBits};
  }
  long nbits = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  Enclosure e = refine(v, precision_bits + static_cast<int>(nbits) + 2);
  Rational nq(n);
  Rational a = nq * e.lo - w, b = nq * e.hi - w;
  if (n < 0) std::swap(a, b);
  return dist_to_integers(Enclosure{a, b, 0});
}

bool certified_leq(const RealConstant& v, const BigInt& n, const Rational& w,
                   const Rational& t, const CertifyOptions& opts) {
  for (int p = opts.start_bits;; p *= 2) {
    Enclosure e = dist_nearest_int(v, n, w, p);
    switch (enclosure_leq(e, t)) {
      case Ternary::yes:
        return true;
      case Ternary::no:
        return false;
      case Ternary::unknown:
        break;
    }
    if (p >= opts.max_bits)
      throw PrecisionError("dist(" + to_text(n) + "*x - " + to_text(w) + ", Z) <= " +
                           to_text(t) + " undecided at " + std::to_string(opts.max_bits) +
                           " bits");
  }
}

bool certified_less(const RealConstant& v, const BigInt& n, const Rational& w,
                    const Rational& t, const CertifyOptions& opts) {
  for (int p = opts.start_bits;; p *= 2) {
    Enclosure e = dist_nearest_int(v, n, w, p);
    switch (enclosure_less(e, t)) {
      case Ternary::yes:
        return true;
      case Ternary::no:
        return false;
      case Ternary::unknown:
        break;
    }
    if (p >= opts.max_bits)
      throw PrecisionError("dist(" + to_text(n) + "*x - " + to_text(w) + ", Z) < " +
                           to_text(t) + " undecided at " + std::to_string(opts.max_bits) +
                           " bits");
  }
}

Enclosure signed_rep(const RealConstant& v, const BigInt& n, const Rational& w,
                     const CertifyOptions& opts) {
  Rational half = rat(1, 2);
  for (int p = opts.start_bits;; p *= 2) {
    Enclosure e;
    if (v.is_rational()) {
      Rational t = Rational(n) * v.rational_value() - w;
      e = Enclosure{t, t, kExactBits};
    } else {
      long nbits = n == 0 ? 1 : static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
      Enclosure r = refine(v, p + static_cast<int>(nbits) + 2);
      Rational nq(n);
      Rational a = nq * r.lo - w, b = nq * r.hi - w;
      if (n < 0) std::swap(a, b);
      e = Enclosure{a, b, p};
    }
    // representative is t - floor(t + 1/2); unambiguous when both ends round alike
    BigInt la = floor_rat(Rational(e.lo + half));
    BigInt lb = floor_rat(Rational(e.hi + half));
    if (la == lb) {
      Rational lo = e.lo - Rational(la), hi = e.hi - Rational(la);
      return Enclosure{lo, hi, width_precision(Rational(hi - lo))};
    }
    if (v.is_rational() || p >= opts.max_bits)
      throw PrecisionError("signed representative of " + to_text(n) + "*x - " + to_text(w) +
                           " undecided at " + std::to_string(p) + " bits");
  }
}

bool certified_combo_leq(const std::vector<Rational>& coeffs,
                         const std::vector<RealConstant>& vals, const Rational& b,
                         const Rational& t, const CertifyOptions& opts) {
  for (int p = opts.start_bits;; p *= 2) {
    Enclosure e = dist_to_integers(combination_enclosure(coeffs, vals, b, p));
    switch (enclosure_leq(e, t)) {
      case Ternary::yes:
        return true;
      case Ternary::no:
        return false;
      case Ternary::unknown:
        break;
    }
    bool all_rational = true;
    for (const auto& v : vals)
      if (!v.is_rational()) all_rational = false;
    if (all_rational || p >= opts.max_bits)
      throw PrecisionError("combination distance vs " + to_text(t) + " undecided at " +
                           std::to_string(p) + " bits");
  }
}

Enclosure combination_enclosure(const std::vector<Rational>& coeffs,
                                const std::vector<RealConstant>& vals, const Rational& b,
                                int precision_bits) {
  if (coeffs.size() != vals.size())
    throw std::invalid_argument("coefficient/value count mismatch");
  long headroom = ceil_log2(Rational(static_cast<long>(coeffs.size()) + 1));
  Rational lo = b, hi = b;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Rational mag = coeffs[i] > 0 ? coeffs[i] : Rational(-coeffs[i]);
    long extra = mag > 1 ? ceil_log2(mag) : 0;
    Enclosure e = refine(vals[i], precision_bits + static_cast<int>(headroom + extra) + 1);
    if (coeffs[i] > 0) {
      lo += coeffs[i] * e.lo;
      hi += coeffs[i] * e.hi;
    } else {
      lo += coeffs[i] * e.hi;
      hi += coeffs[i] * e.lo;
    }
  }
  return Enclosure{lo, hi, precision_bits};
}

}  // namespace inhomog
