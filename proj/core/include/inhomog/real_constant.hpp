#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inhomog/errors.hpp"
#include "inhomog/rational.hpp"

namespace inhomog {

// Exact rational bracket around a real value. Invariant: lo <= hi and
// hi - lo <= 2^-precision_bits.
struct Enclosure {
  Rational lo, hi;
  int precision_bits = 0;

  Rational width() const { return Rational(hi - lo); }
  Rational midpoint() const { return Rational((lo + hi) / 2); }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

enum class Ternary { yes, no, unknown };

// Decides "value <= t" from a bracket alone; unknown when t falls inside.
Ternary enclosure_leq(const Enclosure& e, const Rational& t);
// Strict "value < t"; exact equality of a zero-width bracket resolves to no.
Ternary enclosure_less(const Enclosure& e, const Rational& t);

struct CertifyOptions {
  int start_bits = 64;
  int max_bits = 4096;
};

// A real number the certificates can name exactly: either a rational p/q or a
// quadratic surd (a + b*sqrt(c))/d. Canonical surd form: c squarefree-reduced
// (square factors pulled into b, up to a trial bound), c >= 2, b != 0, d >= 1,
// gcd(a, b, d) = 1. Anything that collapses (b = 0, c in {0, 1}) is stored as
// a rational.
class RealConstant {
 public:
  RealConstant() : rational_(true), rat_(0) {}

  static RealConstant rational(Rational v);
  static RealConstant surd(BigInt a, BigInt b, BigInt c, BigInt d);

  bool is_rational() const { return rational_; }
  const Rational& rational_value() const { return rat_; }

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& d() const { return d_; }

  // value = coeff_const + coeff_surd * sqrt(surd_base); coeff_surd = 0 and
  // surd_base = 0 for rationals.
  Rational coeff_const() const;
  Rational coeff_surd() const;
  const BigInt& surd_base() const { return c_; }

  // "rat:p/q" or "surd:a,b,c,d"
  static std::optional<RealConstant> parse(const std::string& s);
  std::string to_text() const;

  bool operator==(const RealConstant& o) const;

 private:
  bool rational_;
  Rational rat_;
  BigInt a_ = 0, b_ = 0, c_ = 0, d_ = 1;
};

// Bracket of width <= 2^-precision_bits. sqrt is bounded via integer sqrt of
// c * 4^k, rounded outward. Brackets nest as precision grows.
Enclosure refine(const RealConstant& v, int precision_bits);

// Enclosure of dist(n*v - w, Z), the circle distance in [0, 1/2]. Exact
// (zero width) for rational v.
Enclosure dist_nearest_int(const RealConstant& v, const BigInt& n,
                           const Rational& w = Rational(0), int precision_bits = 64);

// Certified "dist(n*v - w, Z) <= t". Doubles working precision on unknown up
// to opts.max_bits, then raises PrecisionError. Terminates for every input
// whose distance is not exactly t, and always for rational v.
bool certified_leq(const RealConstant& v, const BigInt& n, const Rational& w,
                   const Rational& t, const CertifyOptions& opts = {});

// Same contract for strict "<".
bool certified_less(const RealConstant& v, const BigInt& n, const Rational& w,
                    const Rational& t, const CertifyOptions& opts = {});

// Signed representative of n*v - w modulo 1, taken in [-1/2, 1/2). Refines
// until the bracket resolves an unambiguous representative.
Enclosure signed_rep(const RealConstant& v, const BigInt& n, const Rational& w,
                     const CertifyOptions& opts = {});

// Bracket of b + sum coeffs[i] * vals[i] at the requested precision.
Enclosure combination_enclosure(const std::vector<Rational>& coeffs,
                                const std::vector<RealConstant>& vals,
                                const Rational& b, int precision_bits);

// Distance of a bracketed value to the integer lattice.
Enclosure dist_to_integers(const Enclosure& e);

// Certified "dist(b + sum coeffs[i] * vals[i], Z) <= t" with the usual
// refinement loop. Decides immediately when every value is rational.
bool certified_combo_leq(const std::vector<Rational>& coeffs,
                         const std::vector<RealConstant>& vals, const Rational& b,
                         const Rational& t, const CertifyOptions& opts = {});

}  // namespace inhomog
