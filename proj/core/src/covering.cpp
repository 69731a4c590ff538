#include "inhomog/covering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "inhomog/factor.hpp"
#include "parallel.hpp"

namespace inhomog {

namespace {

// Upper bound on sqrt(q): sqrt(a/b) <= (isqrt(a*b) + 1) / b.
Rational sqrt_upper(const Rational& q) {
  if (q < 0) throw std::invalid_argument("sqrt of negative");
  BigInt ab = q.get_num() * q.get_den();
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), ab.get_mpz_t());
  Rational r(s + 1, q.get_den());
  r.canonicalize();
  return r;
}

}  // namespace

ResidueSystem ResidueSystem::make(std::vector<std::pair<long, long>> pairs) {
  if (pairs.empty()) throw std::invalid_argument("empty residue system");
  for (auto& [t, r] : pairs) {
    if (t < 1) throw std::invalid_argument("modulus must be >= 1");
    r %= t;
    if (r < 0) r += t;
  }
  std::sort(pairs.begin(), pairs.end());
  ResidueSystem s;
  s.pairs = std::move(pairs);
  return s;
}

Rational residue_density(const ResidueSystem& sys, long lcm_budget) {
  BigInt L = 1;
  for (const auto& [t, r] : sys.pairs) {
    BigInt tb(t);
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), tb.get_mpz_t());
    if (L > lcm_budget)
      throw BudgetError("residue_density: lcm exceeds budget " + std::to_string(lcm_budget));
  }
  long Lu = mpz_get_si(L.get_mpz_t());
  std::vector<bool> hit(static_cast<std::size_t>(Lu), false);
  for (const auto& [t, r] : sys.pairs)
    for (long i = r; i < Lu; i += t) hit[static_cast<std::size_t>(i)] = true;
  long misses = 0;
  for (bool h : hit)
    if (!h) ++misses;
  Rational d(misses, Lu);
  d.canonicalize();
  return d;
}

bool is_covering(const ResidueSystem& sys, long lcm_budget) {
  return residue_density(sys, lcm_budget) == 0;
}

Rational alpha_product(const Rational& eps, const std::vector<long>& t) {
  if (t.empty()) throw std::invalid_argument("empty modulus list");
  if (eps <= 0 || eps > t.front())
    throw std::invalid_argument("eps must lie in (0, t_1]");
  Rational a(1);
  for (long tm : t) {
    Rational f = 1 - eps / Rational(tm);
    a *= f;
  }
  return a;
}

BigInt RealProgressionUnion::K() const {
  BigInt k = 1;
  for (long tm : t) k *= tm;
  return k;
}

RealProgressionUnion RealProgressionUnion::make(std::vector<long> t,
                                               std::vector<RealConstant> r, Rational eps) {
  if (t.empty()) throw std::invalid_argument("empty modulus list");
  if (t.size() != r.size()) throw std::invalid_argument("offset count mismatch");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 1) throw std::invalid_argument("modulus must be >= 1");
    if (i && t[i] <= t[i - 1]) throw std::invalid_argument("moduli must increase strictly");
  }
  if (eps <= 0 || eps > Rational(t.front()))
    throw std::invalid_argument("eps must lie in (0, t_1]");
  RealProgressionUnion u;
  u.t = std::move(t);
  u.r = std::move(r);
  u.eps = std::move(eps);
  return u;
}

namespace {

// Surrogate offset within eta of the true one; exact for rationals.
Rational surrogate_offset(const RealConstant& r, const Rational& eta) {
  if (r.is_rational()) return r.rational_value();
  long p = ceil_log2(Rational(1 / eta)) + 1;
  if (p < 1) p = 1;
  return refine(r, static_cast<int>(p)).midpoint();
}

}  // namespace

MuExact mu_exact(const RealProgressionUnion& u, std::size_t interval_budget) {
  BigInt K = u.K();
  BigInt pieces = 0;
  for (long tm : u.t) pieces += K / tm;
  if (pieces > BigInt(static_cast<unsigned long>(interval_budget)))
    throw BudgetError("mu_exact: " + to_text(pieces) + " intervals exceed budget " +
                      std::to_string(interval_budget) + "; use mu_estimate");

  Rational eta = u.eps / pow2(20);
  Rational half_width = u.eps / (2 * Rational(K));
  IntervalSetMod1 covered;
  Rational bar(0);
  for (std::size_t m = 0; m < u.t.size(); ++m) {
    Rational off = surrogate_offset(u.r[m], eta) / Rational(u.t[m]);
    covered = set_union(covered,
                        progression_set(K / u.t[m], off, half_width, false, interval_budget));
    if (!u.r[m].is_rational()) bar += 2 * eta / Rational(u.t[m]);
  }
  return MuExact{Rational(1 - covered.measure()), bar};
}

MuEstimate mu_estimate(const RealProgressionUnion& u, long long samples, std::uint64_t seed,
                       int threads) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  BigInt K = u.K();
  Rational half = u.eps / 2;

  std::vector<unsigned char> uncovered(static_cast<std::size_t>(samples), 0);
  std::function<void(long long)> body = [&](long long i) {
    Xoshiro256 rng(seed, static_cast<std::uint64_t>(i));
    Rational x = rng.next_unit_rational();
    Rational Kx = Rational(K) * x;
    bool in_any = false;
    for (std::size_t m = 0; m < u.t.size() && !in_any; ++m) {
      const Rational tm(u.t[m]);
      const Rational thr = half / tm;
      if (u.r[m].is_rational()) {
        Rational v = (Kx - u.r[m].rational_value()) / tm;
        Rational d = frac(v);
        if (d > rat(1, 2)) d = 1 - d;
        in_any = d < thr;
      } else {
        for (int p = 64;; p *= 2) {
          Enclosure re = refine(u.r[m], p);
          Enclosure e{Rational((Kx - re.hi) / tm), Rational((Kx - re.lo) / tm), p};
          Ternary v = enclosure_less(dist_to_integers(e), thr);
          if (v != Ternary::unknown) {
            in_any = v == Ternary::yes;
            break;
          }
          if (p >= 4096)
            throw PrecisionError("mu_estimate membership undecided at 4096 bits");
        }
      }
    }
    if (!in_any) uncovered[static_cast<std::size_t>(i)] = 1;
  };
  run_indexed(samples, threads, body);

  long long misses = 0;
  for (auto b : uncovered) misses += b;
  Rational est(static_cast<long>(misses), static_cast<long>(samples));
  est.canonicalize();
  Rational var = est * (1 - est) / Rational(static_cast<long>(samples));
  return MuEstimate{est, sqrt_upper(var), samples};
}

ExpectationReport mu_expectation_mc(const std::vector<long>& t, const Rational& eps,
                                    long long trials, std::uint64_t seed, int threads,
                                    std::size_t interval_budget) {
  if (trials < 2) throw std::invalid_argument("need at least two trials");
  Rational alpha = alpha_product(eps, t);
  BigInt K = 1;
  for (long tm : t) K *= tm;

  std::vector<Rational> mus(static_cast<std::size_t>(trials));
  std::function<void(long long)> body = [&](long long i) {
    Xoshiro256 rng(seed, static_cast<std::uint64_t>(i));
    std::vector<RealConstant> rs;
    rs.reserve(t.size());
    for (std::size_t m = 0; m < t.size(); ++m)
      rs.push_back(RealConstant::rational(Rational(rng.next_unit_rational() * Rational(K))));
    auto u = RealProgressionUnion::make(t, std::move(rs), eps);
    mus[static_cast<std::size_t>(i)] = mu_exact(u, interval_budget).mu;
  };
  run_indexed(trials, threads, body);

  PairwiseSum acc;
  for (const auto& m : mus) acc.add(m);
  Rational mean = acc.total() / Rational(static_cast<long>(trials));
  PairwiseSum sq;
  for (const auto& m : mus) {
    Rational d = m - mean;
    sq.add(Rational(d * d));
  }
  Rational var = sq.total() / Rational(static_cast<long>(trials - 1));
  Rational se2 = var / Rational(static_cast<long>(trials));

  ExpectationReport rep;
  rep.mean = mean;
  rep.alpha = alpha;
  rep.sample_variance = var;
  rep.std_error = sqrt_upper(se2);
  rep.trials = trials;
  rep.seed = seed;
  Rational diff = mean - alpha;
  rep.within_four_sigma = diff * diff <= 16 * se2;
  return rep;
}

VarianceReport mu_variance_mc(const std::vector<long>& t, const Rational& eps,
                              long long trials, std::uint64_t seed, int threads,
                              double bound_constant, std::size_t interval_budget) {
  ExpectationReport base = mu_expectation_mc(t, eps, trials, seed, threads, interval_budget);
  VarianceReport rep;
  rep.sample_variance = base.sample_variance;
  rep.alpha = base.alpha;
  rep.trials = trials;
  rep.seed = seed;
  rep.bound_constant = bound_constant;
  Rational ratio_te = Rational(t.front()) / eps;
  rep.applicable = ratio_te > 1;
  if (rep.applicable) {
    double a = base.alpha.get_d();
    double x = ratio_te.get_d();
    rep.predicted_scale = a * a * std::log(x) / (x * x);
    rep.ratio = base.sample_variance.get_d() / rep.predicted_scale;
    rep.within_bound = rep.ratio <= bound_constant;
  }
  return rep;
}

std::vector<BigInt> GapSubsequence::generate(std::size_t count, const CertifyOptions& opts) const {
  std::vector<BigInt> out;
  out.reserve(count);
  Rational half = eps / 2;
  BigInt n = initial;
  while (out.size() < count) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      // box invariant comes from the step rule; re-certify rather than trust
      if (!certified_leq(ys[i], n, w[i], half, opts))
        throw std::logic_error("gap subsequence left its box at n = " + to_text(n));
      CertifyOptions o = opts;
      for (int p = o.start_bits;; p *= 2) {
        CertifyOptions cur = o;
        cur.start_bits = p;
        Enclosure rep = signed_rep(ys[i], n, w[i], cur);
        if (rep.lo >= 0) {
          mask |= std::size_t{1} << i;
          break;
        }
        if (rep.hi < 0) break;
        if (p >= o.max_bits)
          throw PrecisionError("octant sign undecided at " + std::to_string(p) + " bits");
      }
    }
    out.push_back(n);
    n += steps[mask];
  }
  return out;
}

GapSubsequence find_gap_subsequence(const std::vector<RealConstant>& ys,
                                    const std::vector<Rational>& w, const Rational& eps,
                                    long long scan_budget, const CertifyOptions& opts) {
  if (ys.empty() || ys.size() != w.size())
    throw std::invalid_argument("need matching parameter and center lists");
  if (ys.size() > 20) throw std::invalid_argument("too many parameters for octant masks");
  if (eps <= 0 || eps > 1) throw std::invalid_argument("eps must lie in (0, 1]");

  Rational half = eps / 2;
  GapSubsequence g;
  g.ys = ys;
  g.w = w;
  g.eps = eps;

  const BigInt scan_limit(static_cast<long>(scan_budget));
  bool found = false;
  for (BigInt n = 1; n <= scan_limit; ++n) {
    bool ok = true;
    for (std::size_t i = 0; i < ys.size() && ok; ++i)
      ok = certified_leq(ys[i], n, w[i], half, opts);
    if (ok) {
      g.initial = n;
      found = true;
      break;
    }
  }
  if (!found)
    throw BudgetError("no initial point inside the box within scan budget " +
                      std::to_string(scan_budget));

  std::size_t masks = std::size_t{1} << ys.size();
  g.steps.resize(masks);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    bool got = false;
    for (BigInt s = 1; s <= scan_limit; ++s) {
      bool ok = true;
      for (std::size_t i = 0; i < ys.size() && ok; ++i) {
        bool upper = (mask >> i) & 1;  // displacement in [0, eps/2]: step must pull down
        for (int p = opts.start_bits;; p *= 2) {
          CertifyOptions cur = opts;
          cur.start_bits = p;
          Enclosure rep = signed_rep(ys[i], s, Rational(0), cur);
          Rational lo = upper ? -half : Rational(0);
          Rational hi = upper ? Rational(0) : half;
          if (rep.lo >= lo && rep.hi <= hi) break;        // inside
          if (rep.hi < lo || rep.lo > hi) {               // outside
            ok = false;
            break;
          }
          if (p >= opts.max_bits) {
            ok = false;  // undecidable straddle: only possible at exact endpoints
            break;
          }
        }
      }
      if (ok) {
        g.steps[mask] = s;
        got = true;
        break;
      }
    }
    if (!got)
      throw BudgetError("no step for octant mask " + std::to_string(mask) +
                        " within scan budget " + std::to_string(scan_budget));
  }
  return g;
}

bool in_rational_span(const RealConstant& z, const std::vector<RealConstant>& ys) {
  // Everything lives in Q + Q*sqrt(c); z is spanned by {1, ys} exactly when z
  // is rational or shares its surd base with some y.
  if (z.is_rational()) return true;
  for (const auto& y : ys)
    if (!y.is_rational() && y.surd_base() == z.surd_base()) return true;
  return false;
}

namespace {

struct CoverageResult {
  Rational value, bar;
  bool exact = true;
};

CoverageResult union_coverage(const std::vector<BigInt>& times, const RealConstant& z,
                              const Rational& eps, const ExploreOptions& opts) {
  BigInt K = 1;
  for (const auto& n : times) K *= n + 1;
  BigInt pieces = 0;
  for (const auto& n : times) pieces += K / (n + 1);

  Rational eta = eps / pow2(20);
  Rational zoff = surrogate_offset(z, eta);
  bool surd = !z.is_rational();

  if (pieces <= BigInt(static_cast<unsigned long>(opts.interval_budget))) {
    Rational half_width = eps / (2 * Rational(K));
    IntervalSetMod1 covered;
    Rational bar(0);
    for (const auto& n : times) {
      BigInt k = K / (n + 1);
      covered = set_union(
          covered, progression_set(k, Rational(zoff / Rational(k)), half_width, false,
                                   opts.interval_budget));
      if (surd) bar += 2 * eta;
    }
    return CoverageResult{covered.measure(), bar, true};
  }

  // sampled fallback: membership dist(k_m x - z, Z) < eps / (2 (n_m + 1));
  // for surd z count only certain hits so the estimate stays conservative
  Rational margin = surd ? eta : Rational(0);
  std::vector<unsigned char> hit(static_cast<std::size_t>(opts.mc_samples), 0);
  for (long long i = 0; i < opts.mc_samples; ++i) {
    Xoshiro256 rng(opts.seed, static_cast<std::uint64_t>(i));
    Rational x = rng.next_unit_rational();
    for (const auto& n : times) {
      BigInt k = K / (n + 1);
      Rational v = Rational(k) * x - zoff;
      Rational d = frac(v);
      if (d > rat(1, 2)) d = 1 - d;
      Rational thr = eps / (2 * Rational(n + 1));
      if (d < thr - margin) {
        hit[static_cast<std::size_t>(i)] = 1;
        break;
      }
    }
  }
  long long hits = 0;
  for (auto b : hit) hits += b;
  Rational est(static_cast<long>(hits), static_cast<long>(opts.mc_samples));
  est.canonicalize();
  Rational var = est * (1 - est) / Rational(static_cast<long>(opts.mc_samples));
  return CoverageResult{est, Rational(4 * sqrt_upper(var)), false};
}

}  // namespace

std::pair<Rational, Rational> coverage_of(const CoverPlan& plan, const ExploreOptions& opts) {
  CoverageResult c = union_coverage(plan.times, plan.z, plan.eps, opts);
  return {c.value, c.bar};
}

CoverPlan explore_conjecture(const RealConstant& z, const std::vector<RealConstant>& ys,
                             const Rational& eps, const Rational& delta, const BigInt& n_start,
                             const ExploreOptions& opts) {
  if (in_rational_span(z, ys))
    throw std::invalid_argument(
        "target lies in the rational span of {1, parameters}; cover cannot separate it");
  if (eps <= 0 || eps > 1) throw std::invalid_argument("eps must lie in (0, 1]");
  if (delta <= 0 || delta >= 1) throw std::invalid_argument("delta must lie in (0, 1)");

  CoverPlan plan;
  plan.z = z;
  plan.ys = ys;
  plan.eps = eps;
  plan.delta = delta;
  plan.coverage = 0;
  plan.coverage_bar = 0;

  Rational half = eps / 2;
  Rational goal = 1 - delta;
  BigInt n = n_start;
  bool have_witnesses = false;

  for (long long step = 0; step < opts.candidate_budget; ++step) {
    if (plan.times.size() >= opts.max_times) break;
    ++n;

    if (have_witnesses) {
      bool boxed = true;
      for (std::size_t i = 0; i < ys.size() && boxed; ++i)
        boxed = certified_combo_leq({Rational(n + 1), Rational(-1)}, {z, ys[i]},
                                    Rational(-plan.witnesses[i].center), half, opts.certify);
      if (!boxed) continue;
    }

    std::vector<BigInt> tentative = plan.times;
    tentative.push_back(n);
    CoverageResult cov = union_coverage(tentative, z, eps, opts);
    if (cov.exact && cov.value <= plan.coverage && !plan.times.empty()) continue;

    plan.times = std::move(tentative);
    plan.coverage = cov.value;
    plan.coverage_bar = cov.bar;
    plan.exact = cov.exact;

    if (!have_witnesses) {
      // first accepted time pins the witness box centers
      have_witnesses = true;
      plan.witnesses.clear();
      for (std::size_t i = 0; i < ys.size(); ++i) {
        std::vector<Rational> coeffs{Rational(n + 1), Rational(-1)};
        std::vector<RealConstant> vals{z, ys[i]};
        long pbits = ceil_log2(Rational(1 / half)) + 24;
        Enclosure e = combination_enclosure(coeffs, vals, Rational(0),
                                            static_cast<int>(pbits));
        Rational rep = frac(e.midpoint());
        if (rep >= rat(1, 2)) rep -= 1;  // representative in [-1/2, 1/2)
        plan.witnesses.push_back(Witness{i, rep, half});
      }
    }

    if (plan.coverage - plan.coverage_bar >= goal) {
      plan.satisfied = true;
      break;
    }
  }

  plan.K = 1;
  for (const auto& m : plan.times) plan.K *= m + 1;
  plan.ks.clear();
  for (const auto& m : plan.times) plan.ks.push_back(BigInt(plan.K / (m + 1)));
  return plan;
}

long coprime_run_length(const BigInt& n, long radical_budget) {
  if (n < 1) throw std::invalid_argument("coprime run needs n >= 1");
  if (n == 1) return 0;
  FactorMap f = factorize(n);
  BigInt radb = radical(f);
  if (radb > radical_budget)
    throw BudgetError("coprime_run_length: radical " + to_text(radb) + " exceeds budget " +
                      std::to_string(radical_budget));
  long rad = mpz_get_si(radb.get_mpz_t());
  std::vector<bool> shares(static_cast<std::size_t>(rad), false);
  for (const auto& [p, e] : f) {
    long pl = mpz_get_si(p.get_mpz_t());
    for (long i = 0; i < rad; i += pl) shares[static_cast<std::size_t>(i)] = true;
  }
  // longest circular run; i = 1 never shares a factor, so runs never wrap twice
  long best = 0, cur = 0;
  for (long pass = 0; pass < 2; ++pass) {
    for (long i = 0; i < rad; ++i) {
      if (shares[static_cast<std::size_t>(i)]) {
        ++cur;
        if (cur > best) best = cur;
      } else {
        cur = 0;
      }
    }
  }
  return best;
}

}  // namespace inhomog
