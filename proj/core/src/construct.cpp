#include "inhomog/construct.hpp"

#include <algorithm>
#include <stdexcept>

namespace inhomog {

namespace {

constexpr int kFixedBits = 96;

// Scan-time distance test in fixed point, falling back to the certified path
// only when the coarse bracket straddles the threshold.
struct FastDist {
  bool exact = false;
  BigInt p, q;         // rational y = p/q, q >= 1
  BigInt ylo, width;   // surd: y in [ylo, ylo + width] / 2^96
  BigInt S, half;

  explicit FastDist(const RealConstant& y) {
    mpz_mul_2exp(S.get_mpz_t(), BigInt(1).get_mpz_t(), kFixedBits);
    half = S / 2;
    if (y.is_rational()) {
      exact = true;
      p = y.rational_value().get_num();
      q = y.rational_value().get_den();
    } else {
      Enclosure e = refine(y, kFixedBits);
      ylo = floor_rat(Rational(e.lo * Rational(S)));
      width = ceil_rat(Rational(e.hi * Rational(S))) - ylo;
    }
  }

  // dist(n*y, Z) <= ta/tb ?
  Ternary leq(const BigInt& n, const BigInt& ta, const BigInt& tb) const {
    if (exact) {
      BigInt t;
      mpz_mod(t.get_mpz_t(), BigInt(n * p).get_mpz_t(), q.get_mpz_t());
      BigInt d = t <= q - t ? t : q - t;
      return d * tb <= ta * q ? Ternary::yes : Ternary::no;
    }
    BigInt a = n * ylo, span = n * width;
    BigInt am;
    mpz_mod(am.get_mpz_t(), a.get_mpz_t(), S.get_mpz_t());
    BigInt bm;
    mpz_mod(bm.get_mpz_t(), BigInt(a + span).get_mpz_t(), S.get_mpz_t());
    bool has_int = am == 0 || am + span >= S;
    BigInt ah;
    mpz_mod(ah.get_mpz_t(), BigInt(a - half).get_mpz_t(), S.get_mpz_t());
    bool has_half = ah == 0 || ah + span >= S;
    BigInt da = am <= S - am ? am : S - am;
    BigInt db = bm <= S - bm ? bm : S - bm;
    BigInt lo = has_int ? BigInt(0) : (da <= db ? da : db);
    BigInt hi = has_half ? half : (da >= db ? da : db);
    if (hi * tb <= ta * S) return Ternary::yes;
    if (lo * tb > ta * S) return Ternary::no;
    return Ternary::unknown;
  }
};

std::string magnitude_text(const BigInt& n) {
  std::string s = n.get_str();
  if (s.size() <= 20) return s;
  return s.substr(0, 8) + "...e" + std::to_string(s.size() - 1) + " (" +
         std::to_string(s.size()) + " digits)";
}

}  // namespace

LevelPlan find_level_times(const std::vector<RealConstant>& ys, int level,
                           const Rational& threshold, const Rational& target_sum,
                           const BigInt& n_start, const ConstructOptions& opts) {
  if (ys.empty()) throw std::invalid_argument("find_level_times needs at least one parameter");
  if (threshold <= 0 || target_sum <= 0)
    throw std::invalid_argument("threshold and target must be positive");
  if (n_start < 0) throw std::invalid_argument("negative scan start");

  // Even if every candidate qualified, the reciprocal sum over scan_budget
  // integers above n_start cannot exceed scan_budget / (n_start + 2).
  if (Rational(static_cast<long>(opts.scan_budget)) < target_sum * Rational(n_start + 2))
    throw BudgetError("level " + std::to_string(level) + ": scan start " +
                      magnitude_text(n_start) + " is too large for budget " +
                      std::to_string(opts.scan_budget) + " to reach target sum " +
                      to_text(target_sum) + "; strict chaining outgrows desk scale, " +
                      "use scaled chaining");

  std::vector<FastDist> fast;
  fast.reserve(ys.size());
  for (const auto& y : ys) fast.emplace_back(y);
  const BigInt ta = threshold.get_num(), tb = threshold.get_den();

  LevelPlan plan;
  plan.level = level;
  plan.threshold = threshold;
  plan.target_sum = target_sum;

  PairwiseSum sum;
  double approx = 0;
  const double target_d = target_sum.get_d();
  BigInt n = n_start;
  for (long long step = 0; step < opts.scan_budget; ++step) {
    ++n;
    bool ok = true;
    for (std::size_t i = 0; i < ys.size() && ok; ++i) {
      Ternary t = fast[i].leq(n, ta, tb);
      if (t == Ternary::unknown)
        t = certified_leq(ys[i], n, Rational(0), threshold, opts.certify) ? Ternary::yes
                                                                         : Ternary::no;
      ok = t == Ternary::yes;
    }
    if (!ok) continue;
    plan.times.push_back(n);
    Rational term(1, n + 1);
    term.canonicalize();
    sum.add(term);
    approx += 1.0 / (n.get_d() + 1.0);
    if (approx >= target_d - 1e-6) {
      Rational exact = sum.total();
      if (exact >= target_sum) {
        plan.reciprocal_sum = exact;
        plan.K = 1;
        for (const auto& m : plan.times) plan.K *= m + 1;
        plan.ks.reserve(plan.times.size());
        for (const auto& m : plan.times) plan.ks.push_back(BigInt(plan.K / (m + 1)));
        for (std::size_t ti = 0; ti < plan.times.size(); ++ti) {
          for (std::size_t pi = 0; pi < ys.size(); ++pi) {
            Enclosure e = dist_nearest_int(ys[pi], plan.times[ti]);
            Rational bound = e.hi < threshold ? e.hi : threshold;
            plan.norm_bounds.push_back(NormBound{ti, pi, bound});
          }
        }
        return plan;
      }
    }
  }
  throw BudgetError("level " + std::to_string(level) + ": scan budget " +
                    std::to_string(opts.scan_budget) + " exhausted after reaching n = " +
                    magnitude_text(n) + " with " + std::to_string(plan.times.size()) +
                    " times and partial sum " + decimal_text(sum.total()) + " < " +
                    to_text(target_sum));
}

Certificate construct_sequence_counterexample(const std::vector<RealConstant>& ys,
                                              int level_count, const ScaleProfile& profile,
                                              const ConstructOptions& opts) {
  if (ys.empty()) throw std::invalid_argument("need at least one parameter");
  if (level_count < 1) throw std::invalid_argument("need at least one level");
  Certificate cert;
  cert.mode = CertMode::sequence;
  cert.parameters = ys;
  cert.profile = profile;
  BigInt chain = 0;
  for (int j = 1; j <= level_count; ++j) {
    std::vector<RealConstant> prefix(
        ys.begin(), ys.begin() + std::min<std::size_t>(j, ys.size()));
    LevelPlan plan = find_level_times(prefix, j, profile.threshold_at(j),
                                      profile.target_at(j), chain, opts);
    chain = profile.chaining == Chaining::strict ? plan.K : plan.times.back();
    cert.levels.push_back(std::move(plan));
  }
  build_psi(cert.levels);  // validates support distinctness
  return cert;
}

Certificate construct_cantor(int level_count, int anchors_per_level,
                             const ScaleProfile& profile, const ConstructOptions& opts) {
  if (level_count < 1) throw std::invalid_argument("need at least one level");
  if (anchors_per_level < 1) throw std::invalid_argument("need at least one anchor per level");
  Certificate cert;
  cert.mode = CertMode::cantor;
  cert.profile = profile;
  IntervalSetMod1 C = IntervalSetMod1::unit_closed();
  BigInt chain = 0;
  for (int j = 1; j <= level_count; ++j) {
    Rational minlen = C.min_positive_length();
    if (minlen == 0)
      throw BudgetError("level " + std::to_string(j) +
                        ": no positive-length component left to anchor");
    BigInt L = ceil_rat(Rational(1 / minlen));

    std::vector<RealConstant> anchors;
    for (const auto& piece : C.pieces()) {
      if (piece.left == piece.right) continue;
      if (anchors.size() == static_cast<std::size_t>(anchors_per_level)) break;
      anchors.push_back(RealConstant::rational(Rational((piece.left + piece.right) / 2)));
    }

    BigInt n_start = chain > L - 1 ? chain : L - 1;
    LevelPlan plan = find_level_times(anchors, j, profile.threshold_at(j),
                                      profile.target_at(j), n_start, opts);
    for (const auto& n : plan.times)
      C = set_intersect(C, line_closeness_set(n, plan.threshold, opts.interval_budget));
    for (const auto& a : anchors) {
      if (!C.contains_point(a.rational_value()))
        throw std::logic_error("anchor fell out of its refined component");
    }
    cert.cantor_levels.push_back(CantorLevel{C, anchors.size(), L});
    for (auto& a : anchors) cert.parameters.push_back(std::move(a));
    chain = profile.chaining == Chaining::strict ? plan.K : plan.times.back();
    cert.levels.push_back(std::move(plan));
  }
  build_psi(cert.levels);
  return cert;
}

const RealConstant& moreover_target_at(const std::vector<RealConstant>& zs, int j) {
  if (zs.empty()) throw std::invalid_argument("empty target list");
  long pos = j;
  for (long block = 2;; ++block) {
    long len = std::min<long>(block, static_cast<long>(zs.size()));
    if (pos <= len) return zs[static_cast<std::size_t>(pos - 1)];
    pos -= len;
  }
}

Certificate construct_moreover(const std::vector<RealConstant>& ys,
                               const std::vector<RealConstant>& zs, int level_count,
                               const std::vector<Rational>& deltas,
                               const ScaleProfile& profile, const ExploreOptions& explore,
                               const ConstructOptions& opts) {
  if (zs.empty()) throw std::invalid_argument("need at least one target point");
  if (level_count < 1) throw std::invalid_argument("need at least one level");
  if (deltas.empty()) throw std::invalid_argument("need per-level deltas");
  for (const auto& d : deltas)
    if (d <= 0 || d >= 1) throw std::invalid_argument("deltas must lie in (0, 1)");

  Certificate cert;
  cert.mode = CertMode::moreover;
  cert.parameters = ys;
  cert.z_parameters = zs;
  cert.profile = profile;
  BigInt chain = 0;
  for (int j = 1; j <= level_count; ++j) {
    Rational threshold = profile.threshold_at(j);
    Rational eps = Rational(2) * threshold;
    Rational delta = deltas[std::min<std::size_t>(j, deltas.size()) - 1];
    std::vector<RealConstant> prefix(
        ys.begin(), ys.begin() + std::min<std::size_t>(j, ys.size()));
    const RealConstant& z = moreover_target_at(zs, j);

    ExploreOptions ex = explore;
    ex.seed = explore.seed + static_cast<std::uint64_t>(j);
    CoverPlan cp = explore_conjecture(z, prefix, eps, delta, chain, ex);
    if (!cp.satisfied)
      throw BudgetError("level " + std::to_string(j) + ": cover explorer stopped at coverage " +
                        decimal_text(cp.coverage) + " (bar " + decimal_text(cp.coverage_bar) +
                        ") < 1 - delta = " + decimal_text(Rational(1 - delta)) +
                        "; raise budgets or relax delta");

    LevelPlan plan;
    plan.level = j;
    plan.threshold = threshold;
    plan.target_sum = Rational((1 - delta) / eps);
    plan.times = cp.times;
    plan.K = cp.K;
    plan.ks = cp.ks;
    PairwiseSum sum;
    for (const auto& n : plan.times) {
      Rational term(1, n + 1);
      term.canonicalize();
      sum.add(term);
    }
    plan.reciprocal_sum = sum.total();

    cert.coverages.push_back(cp.coverage);
    cert.coverage_bars.push_back(cp.coverage_bar);
    cert.deltas.push_back(delta);
    cert.witnesses.push_back(cp.witnesses);
    chain = profile.chaining == Chaining::strict ? plan.K : plan.times.back();
    cert.levels.push_back(std::move(plan));
  }
  build_psi(cert.levels);
  return cert;
}

}  // namespace inhomog
