#pragma once

#include "inhomog/covering.hpp"
#include "inhomog/psi.hpp"

namespace inhomog {

struct ConstructOptions {
  long long scan_budget = 5'000'000;  // candidate times examined per level
  CertifyOptions certify;
  std::size_t interval_budget = kDefaultIntervalBudget;
};

// Scans n = n_start + 1, n_start + 2, ... collecting every n with
// dist(n * y_i, Z) <= threshold for all i, stopping at the first n where
// sum 1/(n_m + 1) >= target_sum; the collected set is the minimal qualifying
// prefix. Throws BudgetError (message carries the partial sum and count) when
// the scan budget runs out first, or when the start point is already so large
// that the budget provably cannot reach the target.
LevelPlan find_level_times(const std::vector<RealConstant>& ys, int level,
                           const Rational& threshold, const Rational& target_sum,
                           const BigInt& n_start, const ConstructOptions& opts = {});

// Levels j = 1..level_count; level j constrains the first min(j, |ys|)
// parameters. Strict chaining starts level j above K_{j-1}, scaled chaining
// above the previous level's last time.
Certificate construct_sequence_counterexample(const std::vector<RealConstant>& ys,
                                              int level_count, const ScaleProfile& profile,
                                              const ConstructOptions& opts = {});

// Nested closed sets C_0 = [0,1] ⊇ C_1 ⊇ ...; level j picks anchors from the
// components of C_{j-1}, requires every time to be at least L_j (so each
// component is longer than 1/n_m), and cuts C_j = C_{j-1} ∩ {dist(n_m y, Z)
// <= eps_j for all m}. Anchors are component midpoints, leftmost first.
Certificate construct_cantor(int level_count, int anchors_per_level,
                             const ScaleProfile& profile, const ConstructOptions& opts = {});

// Interleaves the z targets block by block (prefixes of length 2, 3, ...) and
// runs the cover explorer once per level with eps = 2 * eps_j and the level's
// delta. Witness shifts recovered by the explorer are recorded per level.
Certificate construct_moreover(const std::vector<RealConstant>& ys,
                               const std::vector<RealConstant>& zs, int level_count,
                               const std::vector<Rational>& deltas,
                               const ScaleProfile& profile, const ExploreOptions& explore = {},
                               const ConstructOptions& opts = {});

// Element of the concatenated-prefix schedule z_1 z_2, z_1 z_2 z_3, ... at
// 1-based position j.
const RealConstant& moreover_target_at(const std::vector<RealConstant>& zs, int j);

}  // namespace inhomog
