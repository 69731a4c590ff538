#include "doctest.h"
#include "inhomog/construct.hpp"

using namespace inhomog;

namespace {

const RealConstant kSqrt2 = RealConstant::surd(0, 1, 2, 1);

ScaleProfile gentle_scaled() {
  ScaleProfile p = ScaleProfile::scaled_default();
  p.thresholds = {rat(1, 4), rat(1, 8)};
  p.targets = {rat(1, 2), rat(1, 2)};
  // realized products are 1/8 and 1/16; declare the weaker flat floor
  p.level_product = GeometricDecl{rat(1, 16), rat(1)};
  return p;
}

}  // namespace

TEST_CASE("unconstrained level takes the shortest prefix") {
  // y = 0 qualifies every n, so n = 1 already meets target 1/2
  LevelPlan lv = find_level_times({RealConstant::rational(rat(0))}, 1, rat(1, 4), rat(1, 2), 0);
  CHECK(lv.times == std::vector<BigInt>{1});
  CHECK(lv.K == 2);
  CHECK(lv.ks == std::vector<BigInt>{1});
  CHECK(lv.reciprocal_sum == rat(1, 2));
}

TEST_CASE("zero parameter gives consecutive times") {
  LevelPlan lv = find_level_times({RealConstant::rational(rat(0))}, 1, rat(1, 4), rat(1), 0);
  CHECK(lv.times == std::vector<BigInt>{1, 2, 3});
  CHECK(lv.K == 24);
  CHECK(lv.ks == std::vector<BigInt>{12, 8, 6});
  CHECK(lv.reciprocal_sum == rat(13, 12));
}

TEST_CASE("y = 1/2 keeps even times only") {
  LevelPlan lv =
      find_level_times({RealConstant::rational(rat(1, 2))}, 1, rat(1, 4), rat(1, 2), 0);
  CHECK(lv.times == std::vector<BigInt>{2, 4});
  CHECK(lv.K == 15);
  CHECK(lv.ks == std::vector<BigInt>{5, 3});
  CHECK(lv.reciprocal_sum == rat(8, 15));
}

TEST_CASE("scan agrees with a direct certified sweep") {
  Rational threshold = rat(1, 4), target = rat(1, 2);
  LevelPlan lv = find_level_times({kSqrt2}, 1, threshold, target, 0);

  std::vector<BigInt> expect;
  Rational sum(0);
  for (BigInt n = 1; sum < target; ++n) {
    if (!certified_leq(kSqrt2, n, rat(0), threshold)) continue;
    expect.push_back(n);
    Rational term(1, n + 1);
    term.canonicalize();
    sum += term;
  }
  CHECK(lv.times == expect);
  CHECK(lv.reciprocal_sum == sum);
  // minimal qualifying prefix: dropping the last time loses the target
  Rational last(1, lv.times.back() + 1);
  last.canonicalize();
  CHECK(lv.reciprocal_sum >= target);
  CHECK(lv.reciprocal_sum - last < target);
}

TEST_CASE("scan budget failures name the budget") {
  ConstructOptions tiny;
  tiny.scan_budget = 1;
  CHECK_THROWS_AS(find_level_times({kSqrt2}, 1, rat(1, 4), rat(1, 2), 0, tiny), BudgetError);
  // a start point the budget provably cannot recover from fails immediately
  ConstructOptions hopeless;
  hopeless.scan_budget = 10;
  CHECK_THROWS_AS(find_level_times({RealConstant::rational(rat(0))}, 1, rat(1, 4), rat(1, 2),
                                   BigInt(1000000000), hopeless),
                  BudgetError);
}

TEST_CASE("sequence certificate internal identities") {
  Certificate cert = construct_sequence_counterexample({kSqrt2}, 2, gentle_scaled());
  REQUIRE(cert.levels.size() == 2);
  CHECK(cert.mode == CertMode::sequence);

  PsiFunction psi = build_psi(cert.levels);
  for (const LevelPlan& lv : cert.levels) {
    BigInt prod = 1;
    for (const auto& n : lv.times) prod *= n + 1;
    CHECK(lv.K == prod);
    REQUIRE(lv.ks.size() == lv.times.size());
    for (std::size_t m = 0; m < lv.times.size(); ++m) {
      CHECK(lv.ks[m] * (lv.times[m] + 1) == lv.K);
      // psi(k_m)/k_m = eps_j/K_j, the exact scaling the containment needs
      CHECK(psi.at(lv.ks[m]) * lv.K == lv.threshold * lv.ks[m]);
    }
    CHECK(lv.reciprocal_sum >= lv.target_sum);
  }
  // scaled chaining: the next level starts above the previous last time
  CHECK(cert.levels[1].times.front() > cert.levels[0].times.back());
}

TEST_CASE("strict chaining starts above the previous modulus") {
  ScaleProfile p = ScaleProfile::strict_default();
  p.thresholds = {rat(1, 4), rat(1, 4)};
  p.targets = {rat(1, 2), rat(1, 2)};
  p.level_product = GeometricDecl{rat(1, 10), rat(1)};
  Certificate cert =
      construct_sequence_counterexample({RealConstant::rational(rat(0))}, 2, p);
  REQUIRE(cert.levels.size() == 2);
  // level 1 is {1} with K = 2, so level 2 scans from 3
  CHECK(cert.levels[0].times == std::vector<BigInt>{1});
  CHECK(cert.levels[0].K == 2);
  CHECK(cert.levels[1].times == std::vector<BigInt>{3, 4, 5});
  CHECK(cert.levels[1].times.front() > cert.levels[0].K);
}

TEST_CASE("cantor certificate nests with anchors inside") {
  ScaleProfile p = gentle_scaled();
  Certificate cert = construct_cantor(2, 1, p);
  REQUIRE(cert.levels.size() == 2);
  REQUIRE(cert.cantor_levels.size() == 2);
  CHECK(cert.parameters.size() == 2);  // one anchor per level

  const IntervalSetMod1& c1 = cert.cantor_levels[0].set;
  const IntervalSetMod1& c2 = cert.cantor_levels[1].set;
  CHECK_FALSE(c1.is_empty());
  CHECK_FALSE(c2.is_empty());
  CHECK(c1.contains(c2));

  // the floor L_j makes every level-(j-1) component longer than 1/n for the
  // new times
  CHECK(cert.cantor_levels[1].L >= 1);
  CHECK(rat(1) <= c1.min_positive_length() * cert.cantor_levels[1].L);
  CHECK(cert.levels[1].times.front() >= cert.cantor_levels[1].L);

  // anchors are rational points of their level's set
  for (const RealConstant& a : cert.parameters) {
    REQUIRE(a.is_rational());
  }
  CHECK(c1.contains_point(cert.parameters[0].rational_value()));
  CHECK(c2.contains_point(cert.parameters[1].rational_value()));
}

TEST_CASE("moreover schedule walks growing prefixes") {
  RealConstant a = RealConstant::rational(rat(1, 7));
  RealConstant b = RealConstant::rational(rat(2, 7));
  RealConstant c = RealConstant::rational(rat(3, 7));
  std::vector<RealConstant> zs{a, b, c};
  // blocks: (z1 z2), (z1 z2 z3), (z1 z2 z3), ...
  CHECK(moreover_target_at(zs, 1) == a);
  CHECK(moreover_target_at(zs, 2) == b);
  CHECK(moreover_target_at(zs, 3) == a);
  CHECK(moreover_target_at(zs, 4) == b);
  CHECK(moreover_target_at(zs, 5) == c);
  CHECK(moreover_target_at(zs, 6) == a);

  std::vector<RealConstant> both{a, b};
  CHECK(moreover_target_at(both, 3) == a);
  CHECK(moreover_target_at(both, 4) == b);
  CHECK_THROWS_AS(moreover_target_at({}, 1), std::invalid_argument);
}

TEST_CASE("moreover level records the cover") {
  Certificate cert = construct_moreover({}, {kSqrt2}, 1, {rat(1, 2)},
                                        ScaleProfile::scaled_default());
  REQUIRE(cert.levels.size() == 1);
  REQUIRE(cert.coverages.size() == 1);
  REQUIRE(cert.deltas.size() == 1);
  CHECK(cert.mode == CertMode::moreover);
  // eps = 2 * threshold = 1/2, so the recorded target is (1 - delta)/eps = 1
  CHECK(cert.levels[0].target_sum == rat(1));
  CHECK(cert.coverages[0] - cert.coverage_bars[0] >= rat(1, 2));
  CHECK(cert.witnesses.size() == 1);
}
