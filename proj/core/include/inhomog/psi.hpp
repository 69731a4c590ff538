#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "inhomog/interval_set.hpp"
#include "inhomog/rational.hpp"
#include "inhomog/real_constant.hpp"

namespace inhomog {

// Finitely supported approximating function. Off-support value is 0.
struct PsiFunction {
  std::map<BigInt, Rational> values;
  std::map<BigInt, int> level_of;

  Rational at(const BigInt& k) const {
    auto it = values.find(k);
    return it == values.end() ? Rational(0) : it->second;
  }
};

// Certified upper bound on dist(n_m * y_i - shift, Z) recorded during search.
struct NormBound {
  std::size_t time_index = 0;
  std::size_t param_index = 0;
  Rational bound;
};

// One stage of the recursive construction: times n_1 < ... < n_M with
// sum 1/(n_m + 1) >= target_sum, all dist(n_m y_i, Z) <= threshold, and the
// derived modulus K = prod (n_m + 1), k_m = K / (n_m + 1).
struct LevelPlan {
  int level = 0;
  Rational threshold;   // eps_j
  Rational target_sum;  // s_j
  std::vector<BigInt> times;
  BigInt K;
  std::vector<BigInt> ks;
  Rational reciprocal_sum;  // sum 1/(n_m + 1), exact
  std::vector<NormBound> norm_bounds;
};

// Declares a geometric envelope j -> coeff * ratio^j used by the summability
// and divergence checks.
struct GeometricDecl {
  Rational coeff, ratio;
};

enum class Chaining {
  strict,  // level j starts above K_{j-1}; faithful but explodes fast
  scaled,  // level j starts above the last time of level j-1; desk scale
};

struct ScaleProfile {
  Chaining chaining = Chaining::strict;
  // per-level overrides, 1-based by level; defaults below when absent
  std::vector<Rational> thresholds;
  std::vector<Rational> targets;
  // eps_j <= coeff * ratio^j; ratio < 1 makes the slab series summable
  std::optional<GeometricDecl> eps_tail;
  // eps_j * s_j >= coeff * ratio^j; ratio >= 1 keeps sum psi divergent
  std::optional<GeometricDecl> level_product;

  static ScaleProfile strict_default();
  static ScaleProfile scaled_default();

  Rational threshold_at(int j) const;
  Rational target_at(int j) const;
};

struct Witness {
  std::size_t param_index = 0;  // which y_i
  Rational center;              // w_i, rational representative
  Rational radius;              // certified |shift| bound around the center
};

enum class CertMode { sequence, cantor, moreover };

struct CantorLevel {
  IntervalSetMod1 set;            // C_j
  std::size_t anchor_count = 0;   // parameters consumed by this level
  BigInt L = 0;                   // every component of C_{j-1} at least 1/L long
};

struct Certificate {
  CertMode mode = CertMode::sequence;
  std::vector<RealConstant> parameters;    // y_i (sequence/moreover) or anchors (cantor)
  std::vector<RealConstant> z_parameters;  // moreover target points
  ScaleProfile profile;
  std::vector<LevelPlan> levels;

  std::vector<CantorLevel> cantor_levels;          // cantor mode, one per level
  std::vector<Rational> coverages;                 // moreover, one per level
  std::vector<Rational> coverage_bars;             // moreover, enclosure slack
  std::vector<Rational> deltas;                    // moreover, one per level
  std::vector<std::vector<Witness>> witnesses;     // moreover, per level
};

// psi supported on all k_m of all levels, value eps_j / (n_m + 1) at level j.
// Throws std::invalid_argument when two levels collide on the same k.
PsiFunction build_psi(const std::vector<LevelPlan>& levels);

const char* to_cstr(CertMode m);
const char* to_cstr(Chaining c);

}  // namespace inhomog
