#pragma once

#include <cstdint>
#include <utility>

#include "inhomog/psi.hpp"
#include "inhomog/rng.hpp"

namespace inhomog {

// Integer congruence system { n ≡ R_m (mod T_m) }.
struct ResidueSystem {
  std::vector<std::pair<long, long>> pairs;  // (modulus, residue), moduli ascending

  static ResidueSystem make(std::vector<std::pair<long, long>> pairs);
};

// Density of integers avoiding every congruence class, computed over one
// period lcm(T_m). Zero exactly when the system covers.
Rational residue_density(const ResidueSystem& sys, long lcm_budget = 100'000'000);
bool is_covering(const ResidueSystem& sys, long lcm_budget = 100'000'000);

// prod_m (1 - eps/t_m): the expected uncovered measure when the offsets are
// uniform and independent.
Rational alpha_product(const Rational& eps, const std::vector<long>& t);

// Real relaxation on the circle of scale K = prod t_m: progression m covers
// (t_m Z + r_m)/K inflated by eps/(2K) on each side.
struct RealProgressionUnion {
  std::vector<long> t;          // 1 <= t_1 < t_2 < ...
  std::vector<RealConstant> r;  // offsets, one per modulus, on the scale [0, K)
  Rational eps;

  BigInt K() const;
  static RealProgressionUnion make(std::vector<long> t, std::vector<RealConstant> r,
                                   Rational eps);
};

struct MuExact {
  Rational mu;         // uncovered measure of [0, 1)
  Rational error_bar;  // 0 when all offsets are rational
};

// Exact uncovered measure via interval algebra. Surd offsets are replaced by
// canonical rational surrogates within eta = eps / 2^20; the reported bar
// bounds the total perturbation of the measure.
MuExact mu_exact(const RealProgressionUnion& u,
                 std::size_t interval_budget = kDefaultIntervalBudget);

struct MuEstimate {
  Rational estimate;  // hit fraction on the 2^64 grid
  Rational std_error; // conservative binomial standard error
  long long samples = 0;
};

// Membership of each sampled grid point is certified exactly; only the
// sampling itself is random.
MuEstimate mu_estimate(const RealProgressionUnion& u, long long samples, std::uint64_t seed,
                       int threads = 1);

struct ExpectationReport {
  Rational mean;            // average uncovered measure over random offsets
  Rational alpha;           // predicted product
  Rational std_error;       // sample standard error of the mean
  Rational sample_variance; // unbiased
  long long trials = 0;
  std::uint64_t seed = 0;
  bool within_four_sigma = false;
};

// Draws offsets r_m uniformly from the 2^64 grid on [0, K) and measures the
// uncovered set exactly per trial.
ExpectationReport mu_expectation_mc(const std::vector<long>& t, const Rational& eps,
                                    long long trials, std::uint64_t seed, int threads = 1,
                                    std::size_t interval_budget = kDefaultIntervalBudget);

struct VarianceReport {
  Rational sample_variance;
  Rational alpha;
  double predicted_scale = 0;  // alpha^2 log(t1/eps) / (t1/eps)^2
  double ratio = 0;            // sample_variance / predicted_scale
  double bound_constant = 0;
  bool within_bound = false;
  bool applicable = false;  // t1/eps must exceed 1 for the scale to make sense
  long long trials = 0;
  std::uint64_t seed = 0;
};

VarianceReport mu_variance_mc(const std::vector<long>& t, const Rational& eps,
                              long long trials, std::uint64_t seed, int threads = 1,
                              double bound_constant = 100.0,
                              std::size_t interval_budget = kDefaultIntervalBudget);

// Steered subsequence generator: inside the box max_i dist(n y_i - w_i, Z)
// <= eps/2, each step s keeps the orbit in the box, the step chosen by the
// sign pattern (octant) of the current displacements.
struct GapSubsequence {
  std::vector<RealConstant> ys;
  std::vector<Rational> w;
  Rational eps;
  BigInt initial;
  std::vector<BigInt> steps;  // indexed by octant mask, bit i set when rep_i >= 0

  std::vector<BigInt> generate(std::size_t count, const CertifyOptions& opts = {}) const;
};

GapSubsequence find_gap_subsequence(const std::vector<RealConstant>& ys,
                                    const std::vector<Rational>& w, const Rational& eps,
                                    long long scan_budget = 1'000'000,
                                    const CertifyOptions& opts = {});

struct ExploreOptions {
  long long candidate_budget = 200'000;  // candidate times examined
  std::size_t max_times = 64;
  std::size_t interval_budget = 2'000'000;
  long long mc_samples = 20'000;  // fallback when the union outgrows the budget
  std::uint64_t seed = 1;
  CertifyOptions certify;
};

// Greedy cover of the circle by { x : dist(k_m x - z, Z) < eps k_m / K },
// i.e. the sets (Z + z)/k_m inflated by eps/(2K).
struct CoverPlan {
  RealConstant z;
  std::vector<RealConstant> ys;
  Rational eps;
  Rational delta;
  std::vector<BigInt> times;
  BigInt K;
  std::vector<BigInt> ks;
  Rational coverage;      // covered measure, exact or estimated
  Rational coverage_bar;  // subtractive slack (surrogates / estimation error)
  bool exact = true;
  bool satisfied = false;
  std::vector<Witness> witnesses;  // recoverable shifts w_i per parameter
};

// Precondition: z does not lie in the rational span of {1, y_1, ..., y_l};
// violations throw std::invalid_argument. Search is best effort: the plan
// comes back with satisfied = false when the budget ran out first.
CoverPlan explore_conjecture(const RealConstant& z, const std::vector<RealConstant>& ys,
                             const Rational& eps, const Rational& delta, const BigInt& n_start,
                             const ExploreOptions& opts = {});

bool in_rational_span(const RealConstant& z, const std::vector<RealConstant>& ys);

// Recompute a plan's coverage from (times, z, eps) alone, with the same
// surrogate policy; used to cross-check serialized plans.
std::pair<Rational, Rational> coverage_of(const CoverPlan& plan,
                                          const ExploreOptions& opts = {});

// Longest run of consecutive integers sharing a factor with n, scanned over
// one period of rad(n) with wraparound.
long coprime_run_length(const BigInt& n, long radical_budget = 100'000'000);

}  // namespace inhomog
