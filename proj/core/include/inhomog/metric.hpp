#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "inhomog/interval_set.hpp"
#include "inhomog/real_constant.hpp"
#include "inhomog/verdict.hpp"

namespace inhomog {

// Approximating function for the averaging experiments: a constant, c/n, or
// an explicit table with value 0 off the table. Values must be >= 0.
struct PsiSpec {
  enum class Kind { constant, reciprocal, table };
  Kind kind = Kind::constant;
  Rational c;
  std::map<BigInt, Rational> table;

  static PsiSpec constant(Rational value);
  static PsiSpec reciprocal(Rational coeff);  // n -> coeff / n
  static PsiSpec from_table(std::map<BigInt, Rational> values);
  Rational at(const BigInt& n) const;
};

// { x : dist(n x + y, Z) < psi_n }, an open progression around (Z - y)/n.
IntervalSetMod1 approx_set(const BigInt& n, const Rational& y, const Rational& psi_n,
                           std::size_t interval_budget = kDefaultIntervalBudget);

struct PairOverlap {
  Rational joint;    // lambda(E_n ∩ E_k)
  Rational product;  // lambda(E_n) * lambda(E_k)
};

// Exact intersection measure of two approximation sets sharing nothing but
// the point x. Piece count is about n + k, charged against the budget.
PairOverlap pair_overlap(const BigInt& n, const Rational& y_n, const Rational& psi_n,
                         const BigInt& k, const Rational& y_k, const Rational& psi_k,
                         std::size_t interval_budget = kDefaultIntervalBudget);

struct CesaroReport {
  std::vector<std::pair<long, Rational>> partial_means;  // horizons 1, 2, 4, ..., M
  Rational limit;          // product of the two set measures
  Rational surrogate_bar;  // worst-case drift from replacing gamma by a rational
  long shifts = 0;
};

// Shift schedule y_m = frac(m * gamma). The pair measure
// lambda(E_n^{y_m} ∩ E_k^{y_m}) is Lipschitz in the shift, so for irrational
// gamma its Cesaro means tend to the product of the measures. gamma is
// replaced once by a rational midpoint tight enough that the accumulated
// drift over all M shifts stays below surrogate_bar; every mean is then
// exact rational arithmetic. Rational gamma is allowed but periodic, so the
// means need not settle at the product.
CesaroReport cesaro_pair_average(const BigInt& n, const BigInt& k, const PsiSpec& psi,
                                 const RealConstant& gamma, long shifts,
                                 std::size_t interval_budget = kDefaultIntervalBudget);

// Nonnegative step function on [0, 1): value values[i] on [cuts[i], cuts[i+1]).
struct StepFunction {
  std::vector<Rational> cuts;  // 0 = cuts.front() < ... < cuts.back() = 1
  std::vector<Rational> values;

  // f = number of sets containing x; endpoints of the sets become the cuts.
  static StepFunction indicator_sum(const std::vector<IntervalSetMod1>& sets);

  Rational integral() const;
  Rational square_integral() const;
  Rational measure_square_at_least(const Rational& t) const;  // lambda{ f^2 >= t }
};

// Anti-concentration from the second moment: when (∫f)^2 >= a^2 ∫f^2 with
// 0 < b < a <= 1, the set { f^2 >= b^2 ∫f^2 } has measure at least (a - b)^2.
// not_applicable when the hypothesis fails for this f.
Verdict paley_zygmund_check(const StepFunction& f, const Rational& a, const Rational& b);

struct SecondMomentReport {
  Rational first_moment;  // sum of the set measures = E of the hit count
  Rational diagonal;      // same sum (an indicator squared is itself)
  Rational off_diagonal;  // sum over ordered pairs n != k, exact or scaled estimate
  bool off_diagonal_exact = true;
  std::size_t sampled_pairs = 0;
  double ratio = 0;  // second moment / first moment^2
};

// Second moment of Delta(x) = #{ i : x in E_{indices[i]}^{shifts[i]} }.
// All pairs are computed exactly when there are at most pair_samples of them;
// otherwise a uniform pair subsample (deterministic in the seed) is scaled up.
SecondMomentReport second_moment_ratio(const std::vector<BigInt>& indices,
                                       const std::vector<Rational>& shifts,
                                       const PsiSpec& psi, std::uint64_t seed,
                                       std::size_t pair_samples = 200,
                                       std::size_t interval_budget = kDefaultIntervalBudget);

struct DensityRow {
  std::size_t horizon = 0;
  Rational good_fraction;  // fraction of defects below eps among the first horizon
  Rational markov_floor;   // max(0, 1 - mean/eps) at the same horizon
};

struct DensityReport {
  std::vector<DensityRow> rows;  // horizons 1, 2, 4, ..., and the full length
  bool markov_holds = true;      // good_fraction >= markov_floor on every row
};

// Density of indices whose defect stays below eps; the averaging bound makes
// the fraction at least 1 - mean/eps at every horizon.
DensityReport density_one_indices(const std::vector<Rational>& defects, const Rational& eps);

struct HitCountOptions {
  long horizon = 100'000;  // count hits over n = 1..horizon
  long shifts = 8;         // schedule positions m = 1..shifts
  long trials = 64;        // x draws per shift
  long long target = 1;    // success threshold R on the hit count
  std::uint64_t seed = 1;
  int threads = 1;
};

struct HitCountReport {
  Rational expected_hits;              // sum of min(1, 2 psi(n)) over the horizon
  bool expectation_sufficient = true;  // expected_hits >= 2 * target
  long long successes = 0;
  long long total = 0;
  double mean_hits = 0;
  double ratio_to_expected = 0;                // mean_hits / expected_hits
  std::vector<long long> successes_per_shift;  // indexed by m - 1, each out of trials
};

// Draws x uniformly from the 2^64 grid and counts n <= horizon with
// dist(n x + y_m, Z) < psi(n), where y_m = frac(m * gamma) snapped to the
// grid. All grid arithmetic is exact (64-bit wraparound); per-draw streams
// keep the tally identical for every thread count.
HitCountReport hit_count_experiment(const PsiSpec& psi, const RealConstant& gamma,
                                    const HitCountOptions& opts = {});

// Exact reference counter: #{ n <= |shifts| : dist(n x + shifts[n-1], Z) < psi(n) }.
long long hit_count(const Rational& x, const std::vector<Rational>& shifts,
                    const PsiSpec& psi);

}  // namespace inhomog
