#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace inhomog {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// 2^e for either sign of e.
Rational pow2(long e);

BigInt floor_rat(const Rational& q);
BigInt ceil_rat(const Rational& q);
// x - floor(x), in [0, 1)
Rational frac(const Rational& q);

// Canonical text forms: integers in base 10, rationals always "p/q" in lowest
// terms with q >= 1 (so "3" round-trips as "3/1").
std::string to_text(const BigInt& n);
std::string to_text(const Rational& q);
std::optional<BigInt> parse_bigint(const std::string& s);
std::optional<Rational> parse_rational(const std::string& s);

// Truncated fixed-point rendering for human-facing report lines.
std::string decimal_text(const Rational& q, int digits = 6);

// ceil(log2(q)) for q > 0; 0 for q <= 1 is not assumed, callers get the signed value.
long ceil_log2(const Rational& q);

// Exact sum whose intermediates have denominators no worse than balanced
// pairing allows. Slot i holds a partial sum of 2^i terms.
class PairwiseSum {
 public:
  void add(Rational term);
  Rational total() const;
  std::size_t terms() const { return count_; }

 private:
  std::vector<Rational> slots_;
  std::vector<bool> occupied_;
  std::size_t count_ = 0;
};

Rational pairwise_sum(const std::vector<Rational>& terms);

}  // namespace inhomog
