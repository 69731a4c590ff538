#include "doctest.h"
#include "inhomog/metric.hpp"
#include "inhomog/rng.hpp"

using namespace inhomog;

namespace {
const RealConstant kSqrt2 = RealConstant::surd(0, 1, 2, 1);

Rational abs_rat(Rational q) {
  if (q < 0) q = -q;
  return q;
}
}  // namespace

TEST_CASE("psi spec evaluation") {
  CHECK(PsiSpec::constant(rat(1, 10)).at(7) == rat(1, 10));
  CHECK(PsiSpec::reciprocal(rat(3)).at(12) == rat(1, 4));
  PsiSpec table = PsiSpec::from_table({{BigInt(2), rat(1, 5)}, {BigInt(9), rat(1, 7)}});
  CHECK(table.at(2) == rat(1, 5));
  CHECK(table.at(9) == rat(1, 7));
  CHECK(table.at(3) == rat(0));  // off support
}

TEST_CASE("approximation set geometry") {
  // dist(3x + 1/4) < 1/8: arcs of radius 1/24 at 1/4, 7/12, 11/12
  IntervalSetMod1 s = approx_set(3, rat(1, 4), rat(1, 8));
  CHECK(s.measure() == rat(1, 4));
  CHECK(s.contains_point(rat(1, 4)));
  CHECK(s.contains_point(rat(7, 12)));
  CHECK_FALSE(s.contains_point(rat(1, 4) + rat(1, 24)));  // open boundary
  CHECK_FALSE(s.contains_point(rat(0)));
}

TEST_CASE("pair overlap with frozen values") {
  PairOverlap o = pair_overlap(2, rat(0), rat(1, 10), 3, rat(0), rat(1, 10));
  CHECK(o.joint == rat(1, 15));
  CHECK(o.product == rat(1, 25));

  PairOverlap swapped = pair_overlap(3, rat(0), rat(1, 10), 2, rat(0), rat(1, 10));
  CHECK(swapped.joint == o.joint);
  CHECK(swapped.product == o.product);

  // joint is dominated by either factor, product is the measure product
  PairOverlap shifted = pair_overlap(5, rat(1, 3), rat(1, 8), 8, rat(2, 7), rat(1, 9));
  CHECK(shifted.joint <= rat(1, 4));  // lambda(E_5) = 2 psi
  CHECK(shifted.joint <= rat(2, 9));
  CHECK(shifted.product == rat(1, 18));
}

TEST_CASE("cesaro means settle near the product for sqrt 2") {
  CesaroReport r =
      cesaro_pair_average(2, 3, PsiSpec::constant(rat(1, 10)), kSqrt2, 2048);
  CHECK(r.limit == rat(1, 25));
  CHECK(r.shifts == 2048);
  CHECK(r.surrogate_bar > rat(0));
  CHECK(r.surrogate_bar < rat(1, 1000000));
  REQUIRE_FALSE(r.partial_means.empty());
  CHECK(r.partial_means.back().first == 2048);
  CHECK(abs_rat(r.partial_means.back().second - rat(1, 25)) < rat(1, 1000));
}

TEST_CASE("rational shift schedule is exact and periodic") {
  CesaroReport r =
      cesaro_pair_average(2, 3, PsiSpec::constant(rat(1, 10)), RealConstant::rational(rat(1, 4)),
                          64);
  CHECK(r.surrogate_bar == rat(0));
  // period 4 schedule: the mean over full periods repeats exactly
  REQUIRE(r.partial_means.size() >= 2);
}

TEST_CASE("step function from indicator sums") {
  IntervalSetMod1 a = IntervalSetMod1::from_intervals({{rat(0), rat(1, 2), true, false}});
  IntervalSetMod1 b = IntervalSetMod1::from_intervals({{rat(1, 4), rat(3, 4), true, false}});
  StepFunction f = StepFunction::indicator_sum({a, b});
  CHECK(f.integral() == rat(1));
  CHECK(f.square_integral() == rat(3, 2));
  CHECK(f.measure_square_at_least(rat(4)) == rat(1, 4));
  CHECK(f.measure_square_at_least(rat(1)) == rat(3, 4));
  CHECK(f.measure_square_at_least(rat(5)) == rat(0));
}

TEST_CASE("anti-concentration verdict") {
  IntervalSetMod1 a = IntervalSetMod1::from_intervals({{rat(0), rat(1, 2), true, false}});
  IntervalSetMod1 b = IntervalSetMod1::from_intervals({{rat(1, 4), rat(3, 4), true, false}});
  StepFunction f = StepFunction::indicator_sum({a, b});
  // (integral f)^2 = 1, integral f^2 = 3/2: a = 4/5 satisfies the hypothesis
  Verdict ok = paley_zygmund_check(f, rat(4, 5), rat(2, 5));
  CHECK(ok.passed());
  // a = 1 pushes a^2 integral f^2 above 1
  Verdict na = paley_zygmund_check(f, rat(1), rat(1, 2));
  CHECK(na.status == CheckStatus::not_applicable);
  CHECK_THROWS_AS(paley_zygmund_check(f, rat(1, 2), rat(1, 2)), std::invalid_argument);
}

TEST_CASE("second moment exact on two indices") {
  SecondMomentReport r =
      second_moment_ratio({2, 3}, {rat(0), rat(0)}, PsiSpec::constant(rat(1, 10)), 1);
  CHECK(r.first_moment == rat(2, 5));
  CHECK(r.diagonal == rat(2, 5));
  CHECK(r.off_diagonal == rat(2, 15));
  CHECK(r.off_diagonal_exact);
  // (2/5 + 2/15) / (2/5)^2 = 10/3
  CHECK(r.ratio == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("second moment pair sampling is seed deterministic") {
  std::vector<BigInt> idx;
  std::vector<Rational> shifts;
  for (long i = 1; i <= 40; ++i) {
    idx.push_back(2 * i + 1);
    Rational s(i, 97);
    s.canonicalize();
    shifts.push_back(s);
  }
  PsiSpec psi = PsiSpec::constant(rat(1, 12));
  SecondMomentReport a = second_moment_ratio(idx, shifts, psi, 7, 100);
  SecondMomentReport b = second_moment_ratio(idx, shifts, psi, 7, 100);
  CHECK_FALSE(a.off_diagonal_exact);
  CHECK(a.sampled_pairs == 100);
  CHECK(a.off_diagonal == b.off_diagonal);
  SecondMomentReport c = second_moment_ratio(idx, shifts, psi, 8, 100);
  CHECK(c.off_diagonal != a.off_diagonal);
}

TEST_CASE("density report with markov floor") {
  DensityReport r = density_one_indices(
      {rat(1, 10), rat(1, 2), rat(1, 100), rat(1, 10), rat(1, 3)}, rat(1, 4));
  REQUIRE_FALSE(r.rows.empty());
  CHECK(r.markov_holds);
  const DensityRow& last = r.rows.back();
  CHECK(last.horizon == 5);
  CHECK(last.good_fraction == rat(3, 5));
  CHECK(last.markov_floor == rat(62, 375));
  for (const DensityRow& row : r.rows) CHECK(row.good_fraction >= row.markov_floor);
}

TEST_CASE("hit counts grow with the horizon") {
  PsiSpec psi = PsiSpec::constant(rat(1, 10));
  Xoshiro256 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    Rational x = rng.next_unit_rational();
    std::vector<Rational> shifts;
    long long prev = 0;
    for (long n = 1; n <= 200; ++n) {
      Rational s(n % 7, 7);
      s.canonicalize();
      shifts.push_back(s);
      if (n % 50 == 0) {
        long long cur = hit_count(x, shifts, psi);
        CHECK(cur >= prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("grid experiment matches the exact counter") {
  // rational gamma makes the snapped shift schedule exactly recoverable
  PsiSpec psi = PsiSpec::constant(rat(1, 10));
  RealConstant gamma = RealConstant::rational(rat(1, 4));
  HitCountOptions opts;
  opts.horizon = 50;
  opts.shifts = 3;
  opts.trials = 2;
  opts.target = 8;
  opts.seed = 11;
  opts.threads = 1;
  HitCountReport r = hit_count_experiment(psi, gamma, opts);
  CHECK(r.total == 6);
  REQUIRE(r.successes_per_shift.size() == 3);

  long long successes = 0;
  double hit_sum = 0;
  for (long job = 0; job < 6; ++job) {
    Xoshiro256 rng(opts.seed, static_cast<std::uint64_t>(job));
    Rational x(BigInt(rng.next()), BigInt(1));
    mpz_mul_2exp(x.get_den_mpz_t(), x.get_den().get_mpz_t(), 64);
    x.canonicalize();
    long m = job / opts.trials + 1;
    Rational y = frac(rat(m, 4));
    std::vector<Rational> shifts(static_cast<std::size_t>(opts.horizon), y);
    long long hits = hit_count(x, shifts, psi);
    hit_sum += static_cast<double>(hits);
    if (hits >= opts.target) ++successes;
  }
  CHECK(r.successes == successes);
  CHECK(r.mean_hits == doctest::Approx(hit_sum / 6.0).epsilon(1e-12));

  HitCountOptions eight = opts;
  eight.threads = 8;
  HitCountReport r8 = hit_count_experiment(psi, gamma, eight);
  CHECK(r8.successes == r.successes);
  CHECK(r8.mean_hits == r.mean_hits);
  CHECK(r8.successes_per_shift == r.successes_per_shift);
}

TEST_CASE("expected hits gate") {
  PsiSpec psi = PsiSpec::constant(rat(1, 10));
  HitCountOptions opts;
  opts.horizon = 400;
  opts.shifts = 2;
  opts.trials = 2;
  opts.target = 40;
  HitCountReport r = hit_count_experiment(psi, kSqrt2, opts);
  CHECK(r.expected_hits == rat(80));
  CHECK(r.expectation_sufficient);  // 80 >= 2 * 40
  opts.target = 41;
  HitCountReport tight = hit_count_experiment(psi, kSqrt2, opts);
  CHECK_FALSE(tight.expectation_sufficient);
}
