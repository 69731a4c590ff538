#include "inhomog/metric.hpp"

#include <algorithm>
#include <stdexcept>

#include "inhomog/rng.hpp"
#include "parallel.hpp"

namespace inhomog {

namespace {

Rational set_measure_of(const Rational& psi_n) {
  Rational m = 2 * psi_n;
  return m > 1 ? Rational(1) : m;
}

void require_nonneg(const Rational& v, const char* what) {
  if (v < 0) throw std::invalid_argument(std::string(what) + " must be >= 0");
}

}  // namespace

PsiSpec PsiSpec::constant(Rational value) {
  require_nonneg(value, "psi value");
  PsiSpec s;
  s.kind = Kind::constant;
  s.c = std::move(value);
  return s;
}

PsiSpec PsiSpec::reciprocal(Rational coeff) {
  require_nonneg(coeff, "psi coefficient");
  PsiSpec s;
  s.kind = Kind::reciprocal;
  s.c = std::move(coeff);
  return s;
}

PsiSpec PsiSpec::from_table(std::map<BigInt, Rational> values) {
  for (const auto& [n, v] : values) {
    if (n < 1) throw std::invalid_argument("psi table index must be >= 1");
    require_nonneg(v, "psi value");
  }
  PsiSpec s;
  s.kind = Kind::table;
  s.table = std::move(values);
  return s;
}

Rational PsiSpec::at(const BigInt& n) const {
  if (n < 1) throw std::invalid_argument("psi argument must be >= 1");
  switch (kind) {
    case Kind::constant:
      return c;
    case Kind::reciprocal:
      return c / Rational(n);
    case Kind::table: {
      auto it = table.find(n);
      return it == table.end() ? Rational(0) : it->second;
    }
  }
  return Rational(0);
}

IntervalSetMod1 approx_set(const BigInt& n, const Rational& y, const Rational& psi_n,
                           std::size_t interval_budget) {
  if (n < 1) throw std::invalid_argument("modulus must be >= 1");
  require_nonneg(psi_n, "psi value");
  return progression_set(n, Rational(-y), psi_n / Rational(n), false, interval_budget);
}

PairOverlap pair_overlap(const BigInt& n, const Rational& y_n, const Rational& psi_n,
                         const BigInt& k, const Rational& y_k, const Rational& psi_k,
                         std::size_t interval_budget) {
  IntervalSetMod1 a = approx_set(n, y_n, psi_n, interval_budget);
  IntervalSetMod1 b = approx_set(k, y_k, psi_k, interval_budget);
  PairOverlap out;
  out.joint = set_intersect(a, b).measure();
  out.product = set_measure_of(psi_n) * set_measure_of(psi_k);
  return out;
}

CesaroReport cesaro_pair_average(const BigInt& n, const BigInt& k, const PsiSpec& psi,
                                 const RealConstant& gamma, long shifts,
                                 std::size_t interval_budget) {
  if (n == k) throw std::invalid_argument("pair needs two distinct moduli");
  if (shifts < 1) throw std::invalid_argument("need at least one shift");

  Rational psi_n = psi.at(n), psi_k = psi.at(k);
  CesaroReport rep;
  rep.shifts = shifts;
  rep.limit = set_measure_of(psi_n) * set_measure_of(psi_k);

  // rotating the shift by d moves each set by d/n resp. d/k, so the pair
  // measure moves by at most 8d; accumulated over y_m = m * gamma_mid the
  // drift stays below 2 (M+1) 2^-P
  Rational gamma_mid;
  if (gamma.is_rational()) {
    gamma_mid = gamma.rational_value();
    rep.surrogate_bar = 0;
  } else {
    long p = 40 + ceil_log2(Rational(shifts + 1));
    Enclosure e = refine(gamma, static_cast<int>(p));
    gamma_mid = e.midpoint();
    rep.surrogate_bar = 2 * Rational(shifts + 1) * pow2(-p);
  }

  PairwiseSum acc;
  long next_record = 1;
  for (long m = 1; m <= shifts; ++m) {
    Rational y = frac(Rational(m) * gamma_mid);
    IntervalSetMod1 a = approx_set(n, y, psi_n, interval_budget);
    IntervalSetMod1 b = approx_set(k, y, psi_k, interval_budget);
    acc.add(set_intersect(a, b).measure());
    if (m == next_record || m == shifts) {
      rep.partial_means.emplace_back(m, Rational(acc.total() / Rational(m)));
      while (next_record <= m) next_record *= 2;
    }
  }
  return rep;
}

StepFunction StepFunction::indicator_sum(const std::vector<IntervalSetMod1>& sets) {
  std::vector<Rational> cuts{Rational(0), Rational(1)};
  for (const auto& s : sets)
    for (const auto& piece : s.pieces()) {
      cuts.push_back(piece.left);
      cuts.push_back(piece.right);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  while (!cuts.empty() && cuts.front() < 0) cuts.erase(cuts.begin());
  while (!cuts.empty() && cuts.back() > 1) cuts.pop_back();

  StepFunction f;
  f.cuts = cuts;
  f.values.reserve(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // cell interiors never meet a set boundary, so the midpoint decides
    Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    long count = 0;
    for (const auto& s : sets) count += s.contains_point(mid) ? 1 : 0;
    f.values.push_back(Rational(count));
  }
  return f;
}

Rational StepFunction::integral() const {
  PairwiseSum acc;
  for (std::size_t i = 0; i < values.size(); ++i)
    acc.add(Rational(values[i] * (cuts[i + 1] - cuts[i])));
  return acc.total();
}

Rational StepFunction::square_integral() const {
  PairwiseSum acc;
  for (std::size_t i = 0; i < values.size(); ++i)
    acc.add(Rational(values[i] * values[i] * (cuts[i + 1] - cuts[i])));
  return acc.total();
}

Rational StepFunction::measure_square_at_least(const Rational& t) const {
  PairwiseSum acc;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] * values[i] >= t) acc.add(Rational(cuts[i + 1] - cuts[i]));
  return acc.total();
}

Verdict paley_zygmund_check(const StepFunction& f, const Rational& a, const Rational& b) {
  const std::string name = "anti-concentration";
  if (!(0 < b && b < a && a <= 1))
    throw std::invalid_argument("need 0 < b < a <= 1");
  if (f.cuts.size() < 2 || f.values.size() + 1 != f.cuts.size())
    throw std::invalid_argument("malformed step function");
  for (const auto& v : f.values) require_nonneg(v, "step value");

  Rational m1 = f.integral();
  Rational m2 = f.square_integral();
  if (m1 * m1 < a * a * m2)
    return Verdict{name, CheckStatus::not_applicable,
                   "hypothesis fails: (integral f)^2 = " + decimal_text(m1 * m1, 8) +
                       " < a^2 integral f^2 = " + decimal_text(Rational(a * a * m2), 8)};
  Rational lam = f.measure_square_at_least(Rational(b * b * m2));
  Rational floor = (a - b) * (a - b);
  if (lam < floor)
    return Verdict{name, CheckStatus::fail,
                   "super-level measure " + decimal_text(lam, 8) + " below " +
                       decimal_text(floor, 8)};
  return Verdict{name, CheckStatus::pass,
                 "super-level measure " + decimal_text(lam, 8) + " >= (a-b)^2 = " +
                     decimal_text(floor, 8)};
}

SecondMomentReport second_moment_ratio(const std::vector<BigInt>& indices,
                                       const std::vector<Rational>& shifts,
                                       const PsiSpec& psi, std::uint64_t seed,
                                       std::size_t pair_samples,
                                       std::size_t interval_budget) {
  if (indices.size() < 2) throw std::invalid_argument("need at least two indices");
  if (shifts.size() != indices.size())
    throw std::invalid_argument("one shift per index required");
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (indices[i] <= indices[i - 1])
      throw std::invalid_argument("indices must be strictly increasing");

  const std::size_t s = indices.size();
  std::vector<Rational> psis(s);
  PairwiseSum first;
  for (std::size_t i = 0; i < s; ++i) {
    psis[i] = psi.at(indices[i]);
    first.add(set_measure_of(psis[i]));
  }

  SecondMomentReport rep;
  rep.first_moment = first.total();
  rep.diagonal = rep.first_moment;

  auto joint = [&](std::size_t i, std::size_t j) {
    return pair_overlap(indices[i], shifts[i], psis[i], indices[j], shifts[j], psis[j],
                        interval_budget)
        .joint;
  };

  const unsigned long long all_pairs =
      static_cast<unsigned long long>(s) * (s - 1) / 2;
  if (all_pairs <= pair_samples) {
    PairwiseSum off;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j) off.add(joint(i, j));
    rep.off_diagonal = 2 * off.total();
    rep.off_diagonal_exact = true;
    rep.sampled_pairs = static_cast<std::size_t>(all_pairs);
  } else {
    PairwiseSum off;
    for (std::size_t d = 0; d < pair_samples; ++d) {
      Xoshiro256 rng(seed, static_cast<std::uint64_t>(d));
      std::size_t i = static_cast<std::size_t>(rng.next() % s);
      std::size_t j = static_cast<std::size_t>(rng.next() % (s - 1));
      if (j >= i) ++j;
      off.add(joint(std::min(i, j), std::max(i, j)));
    }
    Rational mean = off.total() / Rational(static_cast<unsigned long>(pair_samples));
    rep.off_diagonal = 2 * Rational(static_cast<unsigned long>(all_pairs)) * mean;
    rep.off_diagonal_exact = false;
    rep.sampled_pairs = pair_samples;
  }

  Rational second = rep.diagonal + rep.off_diagonal;
  Rational denom = rep.first_moment * rep.first_moment;
  rep.ratio = denom == 0 ? 0.0 : Rational(second / denom).get_d();
  return rep;
}

DensityReport density_one_indices(const std::vector<Rational>& defects,
                                  const Rational& eps) {
  if (defects.empty()) throw std::invalid_argument("no defects given");
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  for (const auto& d : defects) require_nonneg(d, "defect");

  DensityReport rep;
  PairwiseSum mean_acc;
  std::size_t good = 0, next_record = 1;
  for (std::size_t m = 0; m < defects.size(); ++m) {
    mean_acc.add(defects[m]);
    if (defects[m] < eps) ++good;
    if (m + 1 == next_record || m + 1 == defects.size()) {
      Rational horizon(static_cast<unsigned long>(m + 1));
      Rational fraction(static_cast<unsigned long>(good));
      fraction /= horizon;
      Rational floor = 1 - mean_acc.total() / (horizon * eps);
      if (floor < 0) floor = 0;
      rep.rows.push_back(DensityRow{m + 1, fraction, floor});
      if (fraction < floor) rep.markov_holds = false;
      while (next_record <= m + 1) next_record *= 2;
    }
  }
  return rep;
}

HitCountReport hit_count_experiment(const PsiSpec& psi, const RealConstant& gamma,
                                    const HitCountOptions& opts) {
  if (opts.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (opts.shifts < 1 || opts.trials < 1)
    throw std::invalid_argument("need at least one shift and one trial");
  if (opts.target < 0) throw std::invalid_argument("target must be >= 0");

  // thresholds as p/q with the condition min(T, 2^64-T) * q < p * 2^64;
  // values whose numerator or denominator outgrows 64 bits take the exact
  // rational path
  struct Term {
    std::uint64_t p = 0, q = 1;
    bool wide = false;
    Rational exact;
  };
  std::vector<Term> terms(static_cast<std::size_t>(opts.horizon));
  PairwiseSum expect;
  for (long n = 1; n <= opts.horizon; ++n) {
    Rational v = psi.at(n);
    expect.add(set_measure_of(v));
    Term& t = terms[static_cast<std::size_t>(n - 1)];
    if (mpz_fits_ulong_p(v.get_num().get_mpz_t()) &&
        mpz_fits_ulong_p(v.get_den().get_mpz_t())) {
      t.p = mpz_get_ui(v.get_num().get_mpz_t());
      t.q = mpz_get_ui(v.get_den().get_mpz_t());
    } else {
      t.wide = true;
      t.exact = v;
    }
  }

  // one grid point per shift position; the snap error is part of the
  // experiment's definition, the counts below are exact for these y_m
  std::vector<std::uint64_t> ys(static_cast<std::size_t>(opts.shifts));
  Rational gamma_mid;
  if (gamma.is_rational()) {
    gamma_mid = gamma.rational_value();
  } else {
    long p = 72 + ceil_log2(Rational(opts.shifts + 1));
    gamma_mid = refine(gamma, static_cast<int>(p)).midpoint();
  }
  for (long m = 1; m <= opts.shifts; ++m) {
    Rational scaled = frac(Rational(m) * gamma_mid) * pow2(64);
    ys[static_cast<std::size_t>(m - 1)] =
        mpz_get_ui(BigInt(floor_rat(scaled)).get_mpz_t());
  }

  const long long total = static_cast<long long>(opts.shifts) * opts.trials;
  std::vector<long long> hits(static_cast<std::size_t>(total), 0);
  const Rational grid_den = pow2(64);

  run_indexed(total, opts.threads, [&](long long job) {
    Xoshiro256 rng(opts.seed, static_cast<std::uint64_t>(job));
    std::uint64_t x = rng.next();
    std::uint64_t y = ys[static_cast<std::size_t>(job / opts.trials)];
    long long count = 0;
    std::uint64_t t = y;  // t = (n x + y) mod 2^64, advanced by x each step
    for (long n = 1; n <= opts.horizon; ++n) {
      t += x;
      std::uint64_t d = std::min(t, static_cast<std::uint64_t>(0) - t);
      const Term& term = terms[static_cast<std::size_t>(n - 1)];
      bool hit;
      if (!term.wide) {
        hit = static_cast<unsigned __int128>(d) * term.q <
              static_cast<unsigned __int128>(term.p) << 64;
      } else {
        Rational dist(d);
        dist /= grid_den;
        hit = dist < term.exact;
      }
      if (hit) ++count;
    }
    hits[static_cast<std::size_t>(job)] = count;
  });

  HitCountReport rep;
  rep.expected_hits = expect.total();
  rep.expectation_sufficient =
      rep.expected_hits >= Rational(2) * Rational(static_cast<long>(opts.target));
  rep.total = total;
  rep.successes_per_shift.assign(static_cast<std::size_t>(opts.shifts), 0);
  long long sum = 0;
  for (long long job = 0; job < total; ++job) {
    long long h = hits[static_cast<std::size_t>(job)];
    sum += h;
    if (h >= opts.target) {
      ++rep.successes;
      ++rep.successes_per_shift[static_cast<std::size_t>(job / opts.trials)];
    }
  }
  rep.mean_hits = static_cast<double>(sum) / static_cast<double>(total);
  double expected = rep.expected_hits.get_d();
  rep.ratio_to_expected = expected > 0 ? rep.mean_hits / expected : 0.0;
  return rep;
}

long long hit_count(const Rational& x, const std::vector<Rational>& shifts,
                    const PsiSpec& psi) {
  long long count = 0;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    BigInt n(static_cast<unsigned long>(i + 1));
    Rational d = frac(Rational(Rational(n) * x + shifts[i]));
    Rational dist = d > rat(1, 2) ? Rational(1 - d) : d;
    if (dist < psi.at(n)) ++count;
  }
  return count;
}

}  // namespace inhomog
