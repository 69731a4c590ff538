#include "inhomog/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace inhomog {

namespace {

void push_nonempty(std::vector<Interval>& out, Rational l, bool cl, Rational r, bool cr) {
  if (l < r) {
    out.push_back(Interval{std::move(l), std::move(r), cl, cr});
  } else if (l == r && cl && cr) {
    out.push_back(Interval{l, std::move(r), true, true});
  }
}

}  // namespace

IntervalSetMod1 IntervalSetMod1::full_circle() {
  return from_intervals({Interval{Rational(0), Rational(1), true, false}});
}

IntervalSetMod1 IntervalSetMod1::unit_closed() {
  return from_intervals({Interval{Rational(0), Rational(1), true, true}});
}

IntervalSetMod1 IntervalSetMod1::from_intervals(std::vector<Interval> pieces) {
  std::vector<Interval> kept;
  kept.reserve(pieces.size());
  for (auto& p : pieces) {
    if (p.left > p.right) throw std::invalid_argument("interval with left > right");
    if (p.left < 0 || p.right > 1) throw std::invalid_argument("interval outside [0, 1]");
    if (p.left == p.right && !(p.closed_left && p.closed_right)) continue;  // empty
    kept.push_back(std::move(p));
  }
  std::sort(kept.begin(), kept.end(), [](const Interval& x, const Interval& y) {
    if (x.left != y.left) return x.left < y.left;
    if (x.closed_left != y.closed_left) return x.closed_left;  // closed end first
    return x.right > y.right;
  });

  IntervalSetMod1 s;
  for (auto& nxt : kept) {
    if (!s.pieces_.empty()) {
      Interval& cur = s.pieces_.back();
      bool joins = nxt.left < cur.right ||
                   (nxt.left == cur.right && (cur.closed_right || nxt.closed_left));
      if (joins) {
        if (nxt.left == cur.left) cur.closed_left = cur.closed_left || nxt.closed_left;
        if (nxt.right > cur.right) {
          cur.right = nxt.right;
          cur.closed_right = nxt.closed_right;
        } else if (nxt.right == cur.right) {
          cur.closed_right = cur.closed_right || nxt.closed_right;
        }
        continue;
      }
    }
    s.pieces_.push_back(std::move(nxt));
  }
  return s;
}

Rational IntervalSetMod1::measure() const {
  PairwiseSum acc;
  for (const auto& p : pieces_) acc.add(Rational(p.right - p.left));
  return acc.total();
}

Rational IntervalSetMod1::min_positive_length() const {
  Rational best(0);
  bool found = false;
  for (const auto& p : pieces_) {
    Rational len(p.right - p.left);
    if (len > 0 && (!found || len < best)) {
      best = len;
      found = true;
    }
  }
  return best;
}

bool IntervalSetMod1::contains_point(const Rational& x) const {
  std::size_t lo = 0, hi = pieces_.size();
  while (lo < hi) {  // first piece with left > x
    std::size_t mid = (lo + hi) / 2;
    if (pieces_[mid].left <= x)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == 0) return false;
  const Interval& p = pieces_[lo - 1];
  if (x == p.left && !p.closed_left) return false;
  if (x > p.right) return false;
  if (x == p.right && !p.closed_right) return false;
  return true;
}

bool IntervalSetMod1::contains(const IntervalSetMod1& other) const {
  return set_difference(other, *this).is_empty();
}

bool IntervalSetMod1::operator==(const IntervalSetMod1& o) const {
  if (pieces_.size() != o.pieces_.size()) return false;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Interval &a = pieces_[i], &b = o.pieces_[i];
    if (a.left != b.left || a.right != b.right || a.closed_left != b.closed_left ||
        a.closed_right != b.closed_right)
      return false;
  }
  return true;
}

namespace {

IntervalSetMod1 intersect_sets(const IntervalSetMod1& A, const IntervalSetMod1& B) {
  const auto &a = A.pieces(), &b = B.pieces();
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Interval &x = a[i], &y = b[j];
    Rational l;
    bool cl;
    if (x.left > y.left) {
      l = x.left;
      cl = x.closed_left;
    } else if (y.left > x.left) {
      l = y.left;
      cl = y.closed_left;
    } else {
      l = x.left;
      cl = x.closed_left && y.closed_left;
    }
    Rational r;
    bool cr;
    if (x.right < y.right) {
      r = x.right;
      cr = x.closed_right;
    } else if (y.right < x.right) {
      r = y.right;
      cr = y.closed_right;
    } else {
      r = x.right;
      cr = x.closed_right && y.closed_right;
    }
    push_nonempty(out, std::move(l), cl, std::move(r), cr);
    if (x.right < y.right)
      ++i;
    else if (y.right < x.right)
      ++j;
    else {
      ++i;
      ++j;
    }
  }
  return IntervalSetMod1::from_intervals(std::move(out));
}

IntervalSetMod1 subtract_sets(const IntervalSetMod1& A, const IntervalSetMod1& B) {
  const auto &a = A.pieces(), &b = B.pieces();
  std::vector<Interval> out;
  std::size_t j0 = 0;
  for (const Interval& x : a) {
    // pieces of b ending strictly before x never matter again
    while (j0 < b.size() && b[j0].right < x.left) ++j0;
    Rational cur = x.left;
    bool ccl = x.closed_left;
    bool alive = true;
    for (std::size_t j = j0; j < b.size(); ++j) {
      const Interval& y = b[j];
      bool starts_after_piece =
          y.left > x.right || (y.left == x.right && !(y.closed_left && x.closed_right));
      if (starts_after_piece) break;
      bool ends_before_cur =
          y.right < cur || (y.right == cur && !(y.closed_right && ccl));
      if (ends_before_cur) continue;
      push_nonempty(out, cur, ccl, y.left, !y.closed_left);
      cur = y.right;
      ccl = !y.closed_right;
      if (cur > x.right) {
        alive = false;
        break;
      }
    }
    if (alive) push_nonempty(out, std::move(cur), ccl, x.right, x.closed_right);
  }
  return IntervalSetMod1::from_intervals(std::move(out));
}

}  // namespace

IntervalSetMod1 combine(const IntervalSetMod1& a, const IntervalSetMod1& b, SetOp op) {
  switch (op) {
    case SetOp::unite: {
      std::vector<Interval> all = a.pieces();
      all.insert(all.end(), b.pieces().begin(), b.pieces().end());
      return IntervalSetMod1::from_intervals(std::move(all));
    }
    case SetOp::intersect:
      return intersect_sets(a, b);
    case SetOp::subtract:
      return subtract_sets(a, b);
  }
  throw std::logic_error("unreachable");
}

IntervalSetMod1 progression_set(const BigInt& k, const Rational& offset,
                                const Rational& half_width, bool closed,
                                std::size_t interval_budget) {
  if (k < 1) throw std::invalid_argument("progression modulus must be >= 1");
  if (half_width < 0) throw std::invalid_argument("negative half width");
  Rational span = Rational(2) * half_width * Rational(k);
  if (span > 1 || (span == 1 && closed)) return IntervalSetMod1::full_circle();
  if (half_width == 0 && !closed) return IntervalSetMod1::empty();
  if (k > BigInt(static_cast<unsigned long>(interval_budget)))
    throw BudgetError("progression_set: modulus " + to_text(k) + " exceeds interval budget " +
                      std::to_string(interval_budget));

  unsigned long ku = mpz_get_ui(k.get_mpz_t());
  Rational off = frac(offset);
  std::vector<Interval> pieces;
  pieces.reserve(ku + 1);
  for (unsigned long l = 0; l < ku; ++l) {
    Rational c(Rational(l) + off);
    c /= Rational(k);
    Rational lo = c - half_width, hi = c + half_width;
    if (lo < 0) {
      push_nonempty(pieces, Rational(0), true, hi, closed);
      push_nonempty(pieces, Rational(lo + 1), closed, Rational(1), false);
    } else if (hi > 1) {
      push_nonempty(pieces, std::move(lo), closed, Rational(1), false);
      push_nonempty(pieces, Rational(0), true, Rational(hi - 1), closed);
    } else if (hi == 1) {
      push_nonempty(pieces, std::move(lo), closed, Rational(1), false);
      if (closed) push_nonempty(pieces, Rational(0), true, Rational(0), true);
    } else {
      push_nonempty(pieces, std::move(lo), closed, std::move(hi), closed);
    }
  }
  return IntervalSetMod1::from_intervals(std::move(pieces));
}

IntervalSetMod1 line_closeness_set(const BigInt& n, const Rational& eps,
                                   std::size_t interval_budget) {
  if (n < 1) throw std::invalid_argument("line_closeness_set needs n >= 1");
  if (eps < 0) throw std::invalid_argument("negative eps");
  if (eps >= rat(1, 2)) return IntervalSetMod1::unit_closed();
  if (n + 1 > BigInt(static_cast<unsigned long>(interval_budget)))
    throw BudgetError("line_closeness_set: " + to_text(BigInt(n + 1)) + " pieces exceed budget " +
                      std::to_string(interval_budget));
  unsigned long nu = mpz_get_ui(n.get_mpz_t());
  Rational w = eps / Rational(n);
  std::vector<Interval> pieces;
  pieces.reserve(nu + 1);
  for (unsigned long l = 0; l <= nu; ++l) {
    Rational c(l, 1);
    c /= Rational(n);
    c.canonicalize();
    Rational lo = c - w, hi = c + w;
    if (lo < 0) lo = 0;
    if (hi > 1) hi = 1;
    push_nonempty(pieces, std::move(lo), true, std::move(hi), true);
  }
  return IntervalSetMod1::from_intervals(std::move(pieces));
}

}  // namespace inhomog
