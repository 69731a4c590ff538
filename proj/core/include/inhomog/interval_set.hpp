#pragma once

#include <cstddef>
#include <vector>

#include "inhomog/errors.hpp"
#include "inhomog/rational.hpp"

namespace inhomog {

inline constexpr std::size_t kDefaultIntervalBudget = 10'000'000;

// One piece of a subset of [0, 1]. left <= right; a degenerate piece
// (left == right) is a point and must be closed on both sides.
struct Interval {
  Rational left, right;
  bool closed_left = true, closed_right = true;
};

// Finite union of intervals with exact rational endpoints, kept sorted,
// disjoint and non-adjacent (touching pieces are merged when at least one
// side is closed). Measure ignores the open/closed flags; membership and
// set algebra honor them.
class IntervalSetMod1 {
 public:
  IntervalSetMod1() = default;

  static IntervalSetMod1 empty() { return IntervalSetMod1(); }
  // the circle fundamental domain [0, 1)
  static IntervalSetMod1 full_circle();
  // the closed unit interval [0, 1]
  static IntervalSetMod1 unit_closed();
  static IntervalSetMod1 from_intervals(std::vector<Interval> pieces);

  const std::vector<Interval>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  bool is_empty() const { return pieces_.empty(); }

  Rational measure() const;
  Rational min_positive_length() const;  // 0 when no positive-length piece exists
  bool contains_point(const Rational& x) const;
  // superset test: other is a subset of *this
  bool contains(const IntervalSetMod1& other) const;

  bool operator==(const IntervalSetMod1& o) const;

 private:
  std::vector<Interval> pieces_;
};

enum class SetOp { unite, intersect, subtract };

IntervalSetMod1 combine(const IntervalSetMod1& a, const IntervalSetMod1& b, SetOp op);

inline IntervalSetMod1 set_union(const IntervalSetMod1& a, const IntervalSetMod1& b) {
  return combine(a, b, SetOp::unite);
}
inline IntervalSetMod1 set_intersect(const IntervalSetMod1& a, const IntervalSetMod1& b) {
  return combine(a, b, SetOp::intersect);
}
inline IntervalSetMod1 set_difference(const IntervalSetMod1& a, const IntervalSetMod1& b) {
  return combine(a, b, SetOp::subtract);
}

// { x in [0,1) : dist(x, (Z + offset)/k) < half_width }, i.e. the k-fold
// arithmetic progression of intervals on the circle; closed variant uses <=.
// Intervals wrapping 0 are split, so the 1-end stays open and the 0-end is
// closed (the point 1 is identified with 0). Covers the whole circle once
// 2 * half_width * k >= 1. Throws BudgetError when k exceeds the budget.
IntervalSetMod1 progression_set(const BigInt& k, const Rational& offset,
                                const Rational& half_width, bool closed = false,
                                std::size_t interval_budget = kDefaultIntervalBudget);

// { y in [0,1] : dist(n*y, Z) <= eps }, a closed subset of the unit interval
// with pieces around l/n for l = 0..n. Used for nested Cantor-type sets.
IntervalSetMod1 line_closeness_set(const BigInt& n, const Rational& eps,
                                   std::size_t interval_budget = kDefaultIntervalBudget);

}  // namespace inhomog
