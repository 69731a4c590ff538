// Command-line front end. Every number prints in exact rational form (plus a
// truncated decimal where that helps a human), so identical invocations give
// byte-identical output regardless of thread count.
//
// Exit codes: 0 success, 1 failed verification or unsatisfied search,
// 2 usage or input error, 3 deterministic budget or precision cutoff.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "inhomog/construct.hpp"
#include "inhomog/covering.hpp"
#include "inhomog/factor.hpp"
#include "inhomog/metric.hpp"
#include "inhomog/serialize.hpp"
#include "inhomog/verify.hpp"

namespace {

using namespace inhomog;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RealConstant parse_const_arg(const std::string& s) {
  if (auto v = RealConstant::parse(s)) return *v;
  if (auto q = parse_rational(s)) return RealConstant::rational(*q);
  throw UsageError("expected rat:p/q, surd:a,b,c,d or a plain rational, got '" + s + "'");
}

Rational parse_rat_arg(const std::string& s) {
  if (auto q = parse_rational(s)) return *q;
  throw UsageError("expected a rational p/q, got '" + s + "'");
}

BigInt parse_int_arg(const std::string& s) {
  if (auto n = parse_bigint(s)) return *n;
  throw UsageError("expected an integer, got '" + s + "'");
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

// const:<r> | recip:<r> | table:<n>=<r>(,<n>=<r>)*
PsiSpec parse_psi_arg(const std::string& s) {
  auto pos = s.find(':');
  if (pos == std::string::npos) throw UsageError("psi spec needs const:, recip: or table:");
  std::string kind = s.substr(0, pos), rest = s.substr(pos + 1);
  if (kind == "const") return PsiSpec::constant(parse_rat_arg(rest));
  if (kind == "recip") return PsiSpec::reciprocal(parse_rat_arg(rest));
  if (kind == "table") {
    std::map<BigInt, Rational> table;
    for (const auto& item : split_list(rest, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("table entries are n=p/q");
      table[parse_int_arg(item.substr(0, eq))] = parse_rat_arg(item.substr(eq + 1));
    }
    return PsiSpec::from_table(std::move(table));
  }
  throw UsageError("unknown psi kind '" + kind + "'");
}

// "c,r" sets the declaration, "none" clears it, empty keeps the profile default
void apply_decl_arg(std::optional<GeometricDecl>& decl, const std::string& s) {
  if (s.empty()) return;
  if (s == "none") {
    decl.reset();
    return;
  }
  auto parts = split_list(s, ',');
  if (parts.size() != 2) throw UsageError("geometric declaration is coeff,ratio or none");
  decl = GeometricDecl{parse_rat_arg(parts[0]), parse_rat_arg(parts[1])};
}

ScaleProfile resolve_profile(const std::string& name, const std::string& thresholds,
                             const std::string& targets, const std::string& eps_tail,
                             const std::string& level_product) {
  ScaleProfile p;
  if (name == "strict")
    p = ScaleProfile::strict_default();
  else if (name == "scaled")
    p = ScaleProfile::scaled_default();
  else
    throw UsageError("profile must be 'strict' or 'scaled'");
  if (!thresholds.empty())
    for (const auto& t : split_list(thresholds, ',')) p.thresholds.push_back(parse_rat_arg(t));
  if (!targets.empty())
    for (const auto& t : split_list(targets, ',')) p.targets.push_back(parse_rat_arg(t));
  apply_decl_arg(p.eps_tail, eps_tail);
  apply_decl_arg(p.level_product, level_product);
  return p;
}

std::string profile_text(const ScaleProfile& p) {
  std::string out = std::string("chaining=") + to_cstr(p.chaining);
  if (!p.thresholds.empty()) {
    out += " thresholds=";
    for (std::size_t i = 0; i < p.thresholds.size(); ++i)
      out += (i ? "," : "") + to_text(p.thresholds[i]);
  }
  if (!p.targets.empty()) {
    out += " targets=";
    for (std::size_t i = 0; i < p.targets.size(); ++i)
      out += (i ? "," : "") + to_text(p.targets[i]);
  }
  if (p.eps_tail)
    out += " eps_tail=" + to_text(p.eps_tail->coeff) + "," + to_text(p.eps_tail->ratio);
  if (p.level_product)
    out += " level_product=" + to_text(p.level_product->coeff) + "," +
           to_text(p.level_product->ratio);
  return out;
}

void write_or_print(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << payload;
  std::cout << "wrote " << path << " (" << payload.size() << " bytes)\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_cert_summary(const Certificate& cert) {
  std::cout << "certificate mode=" << to_cstr(cert.mode)
            << " parameters=" << cert.parameters.size();
  if (!cert.z_parameters.empty()) std::cout << " targets=" << cert.z_parameters.size();
  std::cout << " levels=" << cert.levels.size() << "\n";
  for (std::size_t j = 0; j < cert.levels.size(); ++j) {
    const LevelPlan& lv = cert.levels[j];
    std::cout << "  level " << lv.level << ": times=" << lv.times.size() << " ["
              << to_text(lv.times.front()) << ".." << to_text(lv.times.back())
              << "] threshold=" << to_text(lv.threshold)
              << " target=" << to_text(lv.target_sum)
              << " sum=" << decimal_text(lv.reciprocal_sum, 8) << " K_digits="
              << mpz_sizeinbase(lv.K.get_mpz_t(), 10) << "\n";
    if (cert.mode == CertMode::cantor && j < cert.cantor_levels.size()) {
      const CantorLevel& cl = cert.cantor_levels[j];
      std::cout << "    cut set pieces=" << cl.set.size()
                << " measure=" << decimal_text(cl.set.measure(), 8)
                << " anchors=" << cl.anchor_count << " L=" << to_text(cl.L) << "\n";
    }
    if (cert.mode == CertMode::moreover && j < cert.coverages.size()) {
      std::cout << "    coverage=" << decimal_text(cert.coverages[j], 8)
                << " bar=" << decimal_text(cert.coverage_bars[j], 8)
                << " delta=" << to_text(cert.deltas[j]) << "\n";
    }
  }
}

int print_verdicts(const std::vector<Verdict>& verdicts) {
  bool any_fail = false;
  for (const auto& v : verdicts) {
    std::cout << v.check_name << ": " << to_cstr(v.status);
    if (!v.detail.empty()) std::cout << "  " << v.detail;
    std::cout << "\n";
    any_fail = any_fail || v.failed();
  }
  std::cout << (any_fail ? "RESULT: FAIL" : "RESULT: ok") << "\n";
  return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact-arithmetic laboratory for inhomogeneous approximation counterexamples"};
  app.require_subcommand(1);
  std::function<int()> action;

  // ---- construct ----
  auto* construct = app.add_subcommand("construct", "build certificates");
  construct->require_subcommand(1);

  struct {
    std::vector<std::string> ys, zs, deltas;
    int levels = 2;
    int anchors = 1;
    std::string profile = "scaled", thresholds, targets, eps_tail, level_product, out;
    long long scan_budget = 5'000'000;
    long long candidate_budget = 200'000;
    long long mc_samples = 20'000;
    std::size_t max_times = 64;
    std::uint64_t seed = 1;
  } c;

  auto add_profile_flags = [&](CLI::App* cmd) {
    cmd->add_option("--profile", c.profile, "scale profile: strict or scaled")
        ->capture_default_str();
    cmd->add_option("--thresholds", c.thresholds,
                    "per-level threshold overrides, comma list of rationals");
    cmd->add_option("--targets", c.targets,
                    "per-level reciprocal-sum targets, comma list of rationals");
    cmd->add_option("--eps-tail", c.eps_tail,
                    "declared threshold envelope coeff,ratio (or 'none')");
    cmd->add_option("--level-product", c.level_product,
                    "declared eps*sum floor coeff,ratio (or 'none')");
    cmd->add_option("--scan-budget", c.scan_budget, "candidate times examined per level")
        ->capture_default_str();
    cmd->add_option("--out", c.out, "write the serialized certificate here ('-' = stdout)");
  };

  auto* cseq = construct->add_subcommand("sequence", "multi-parameter time sequence");
  cseq->add_option("--y", c.ys, "parameter y_i (rat:p/q, surd:a,b,c,d or p/q)")->required();
  cseq->add_option("--levels", c.levels, "construction depth")->capture_default_str();
  add_profile_flags(cseq);
  cseq->callback([&] {
    action = [&]() -> int {
      std::vector<RealConstant> ys;
      for (const auto& s : c.ys) ys.push_back(parse_const_arg(s));
      ScaleProfile profile = resolve_profile(c.profile, c.thresholds, c.targets, c.eps_tail, c.level_product);
      ConstructOptions opts;
      opts.scan_budget = c.scan_budget;
      std::cout << "config: mode=sequence levels=" << c.levels << " parameters=" << ys.size()
                << " " << profile_text(profile) << " scan_budget=" << c.scan_budget << "\n";
      Certificate cert = construct_sequence_counterexample(ys, c.levels, profile, opts);
      print_cert_summary(cert);
      if (!c.out.empty()) write_or_print(c.out, serialize(cert));
      return 0;
    };
  });

  auto* ccan = construct->add_subcommand("cantor", "nested-set anchors");
  ccan->add_option("--levels", c.levels, "construction depth")->capture_default_str();
  ccan->add_option("--anchors", c.anchors, "anchors picked per level")->capture_default_str();
  add_profile_flags(ccan);
  ccan->callback([&] {
    action = [&]() -> int {
      ScaleProfile profile = resolve_profile(c.profile, c.thresholds, c.targets, c.eps_tail, c.level_product);
      ConstructOptions opts;
      opts.scan_budget = c.scan_budget;
      std::cout << "config: mode=cantor levels=" << c.levels << " anchors=" << c.anchors
                << " " << profile_text(profile) << " scan_budget=" << c.scan_budget << "\n";
      Certificate cert = construct_cantor(c.levels, c.anchors, profile, opts);
      print_cert_summary(cert);
      if (!c.out.empty()) write_or_print(c.out, serialize(cert));
      return 0;
    };
  });

  auto* cmor = construct->add_subcommand("moreover", "shifted-target coverage schedule");
  cmor->add_option("--y", c.ys, "parameter y_i");
  cmor->add_option("--z", c.zs, "target z_i for the concatenated-prefix schedule")
      ->required();
  cmor->add_option("--levels", c.levels, "construction depth")->capture_default_str();
  cmor->add_option("--delta", c.deltas, "uncovered allowance per level (one value = all)")
      ->required();
  cmor->add_option("--candidate-budget", c.candidate_budget, "explorer candidate times")
      ->capture_default_str();
  cmor->add_option("--max-times", c.max_times, "explorer cap on accepted times")
      ->capture_default_str();
  cmor->add_option("--mc-samples", c.mc_samples, "coverage samples past the piece budget")
      ->capture_default_str();
  cmor->add_option("--seed", c.seed, "explorer sampling seed")->capture_default_str();
  add_profile_flags(cmor);
  cmor->callback([&] {
    action = [&]() -> int {
      std::vector<RealConstant> ys, zs;
      for (const auto& s : c.ys) ys.push_back(parse_const_arg(s));
      for (const auto& s : c.zs) zs.push_back(parse_const_arg(s));
      std::vector<Rational> deltas;
      for (const auto& s : c.deltas) deltas.push_back(parse_rat_arg(s));
      if (deltas.size() == 1) deltas.assign(static_cast<std::size_t>(c.levels), deltas[0]);
      ScaleProfile profile = resolve_profile(c.profile, c.thresholds, c.targets, c.eps_tail, c.level_product);
      ExploreOptions explore;
      explore.candidate_budget = c.candidate_budget;
      explore.max_times = c.max_times;
      explore.mc_samples = c.mc_samples;
      explore.seed = c.seed;
      ConstructOptions opts;
      opts.scan_budget = c.scan_budget;
      std::cout << "config: mode=moreover levels=" << c.levels << " parameters=" << ys.size()
                << " targets=" << zs.size() << " " << profile_text(profile)
                << " candidate_budget=" << c.candidate_budget << " seed=" << c.seed << "\n";
      Certificate cert =
          construct_moreover(ys, zs, c.levels, deltas, profile, explore, opts);
      print_cert_summary(cert);
      if (!c.out.empty()) write_or_print(c.out, serialize(cert));
      return 0;
    };
  });

  // ---- verify ----
  struct {
    std::string in, combo;
    long long mc_samples = 20'000;
    std::uint64_t seed = 1;
  } v;
  auto* verify = app.add_subcommand("verify", "recheck a serialized certificate");
  verify->add_option("--in", v.in, "certificate file")->required();
  verify->add_option("--combo", v.combo,
                     "also check the shifted target sum a_i y_i + b, format a1,a2:b");
  verify->add_option("--mc-samples", v.mc_samples, "coverage recheck samples")
      ->capture_default_str();
  verify->add_option("--seed", v.seed, "coverage recheck seed")->capture_default_str();
  verify->callback([&] {
    action = [&]() -> int {
      Certificate cert = parse_certificate(read_file(v.in));
      VerifyOptions opts;
      opts.mc_samples = v.mc_samples;
      opts.seed = v.seed;
      std::cout << "config: in=" << v.in << " mode=" << to_cstr(cert.mode)
                << " levels=" << cert.levels.size() << "\n";
      std::vector<Verdict> verdicts = verify_all(cert, opts);
      if (!v.combo.empty()) {
        auto parts = split_list(v.combo, ':');
        if (parts.size() != 2) throw UsageError("--combo format is a1,a2,...:b");
        std::vector<Rational> coeffs;
        for (const auto& s : split_list(parts[0], ',')) coeffs.push_back(parse_rat_arg(s));
        verdicts.push_back(
            verify_rational_combination(cert, coeffs, parse_rat_arg(parts[1]), opts));
      }
      return print_verdicts(verdicts);
    };
  });

  // ---- cover ----
  auto* cover = app.add_subcommand("cover", "congruence and progression covers");
  cover->require_subcommand(1);

  struct {
    std::vector<std::string> mods, rs;
    std::string ts, eps = "1/2";
    long long trials = 100, samples = 0;
    std::uint64_t seed = 1;
    int threads = 1;
    double bound_constant = 100.0;
  } cv;

  auto* cdens = cover->add_subcommand("density", "uncovered density of a residue system");
  cdens->add_option("--mod", cv.mods, "congruence t,r meaning n = r mod t")->required();
  cdens->callback([&] {
    action = [&]() -> int {
      std::vector<std::pair<long, long>> pairs;
      for (const auto& s : cv.mods) {
        auto parts = split_list(s, ',');
        if (parts.size() != 2) throw UsageError("--mod format is t,r");
        pairs.emplace_back(std::stol(parts[0]), std::stol(parts[1]));
      }
      auto sys = ResidueSystem::make(pairs);
      Rational d = residue_density(sys);
      std::cout << "config: moduli=" << sys.pairs.size() << "\n";
      std::cout << "uncovered density = " << to_text(d) << " (" << decimal_text(d, 8)
                << ")\n";
      std::cout << "covering: " << (d == 0 ? "yes" : "no") << "\n";
      return 0;
    };
  });

  auto* cmu = cover->add_subcommand("mu", "uncovered measure of a progression union");
  cmu->add_option("--t", cv.ts, "moduli, comma list")->required();
  cmu->add_option("--r", cv.rs, "offset per modulus (constant)")->required();
  cmu->add_option("--eps", cv.eps, "inflation eps")->capture_default_str();
  cmu->add_option("--samples", cv.samples, "also sample-estimate with this many points")
      ->capture_default_str();
  cmu->add_option("--seed", cv.seed, "sampling seed")->capture_default_str();
  cmu->add_option("--threads", cv.threads, "sampling threads")->capture_default_str();
  cmu->callback([&] {
    action = [&]() -> int {
      std::vector<long> t;
      for (const auto& s : split_list(cv.ts, ',')) t.push_back(std::stol(s));
      std::vector<RealConstant> r;
      for (const auto& s : cv.rs) r.push_back(parse_const_arg(s));
      Rational eps = parse_rat_arg(cv.eps);
      auto u = RealProgressionUnion::make(t, r, eps);
      std::cout << "config: moduli=" << t.size() << " eps=" << to_text(eps)
                << " K=" << to_text(u.K()) << "\n";
      MuExact mu = mu_exact(u);
      std::cout << "mu = " << to_text(mu.mu) << " (" << decimal_text(mu.mu, 8)
                << ") bar=" << decimal_text(mu.error_bar, 10) << "\n";
      std::cout << "alpha = " << to_text(alpha_product(eps, t)) << "\n";
      if (cv.samples > 0) {
        MuEstimate est = mu_estimate(u, cv.samples, cv.seed, cv.threads);
        std::cout << "sampled mu = " << decimal_text(est.estimate, 8)
                  << " se=" << decimal_text(est.std_error, 8) << " samples=" << est.samples
                  << "\n";
      }
      return 0;
    };
  });

  auto* cexp = cover->add_subcommand("expect", "mean uncovered measure over random offsets");
  cexp->add_option("--t", cv.ts, "moduli, comma list")->required();
  cexp->add_option("--eps", cv.eps, "inflation eps")->capture_default_str();
  cexp->add_option("--trials", cv.trials, "offset draws")->capture_default_str();
  cexp->add_option("--seed", cv.seed, "rng seed")->capture_default_str();
  cexp->add_option("--threads", cv.threads, "worker threads")->capture_default_str();
  cexp->callback([&] {
    action = [&]() -> int {
      std::vector<long> t;
      for (const auto& s : split_list(cv.ts, ',')) t.push_back(std::stol(s));
      Rational eps = parse_rat_arg(cv.eps);
      std::cout << "config: moduli=" << t.size() << " eps=" << to_text(eps)
                << " trials=" << cv.trials << " seed=" << cv.seed << "\n";
      ExpectationReport rep = mu_expectation_mc(t, eps, cv.trials, cv.seed, cv.threads);
      std::cout << "mean = " << decimal_text(rep.mean, 10) << "\n";
      std::cout << "alpha = " << to_text(rep.alpha) << " (" << decimal_text(rep.alpha, 10)
                << ")\n";
      std::cout << "std_error = " << decimal_text(rep.std_error, 10)
                << " within_four_sigma=" << (rep.within_four_sigma ? "yes" : "no") << "\n";
      return 0;
    };
  });

  auto* cvar = cover->add_subcommand("variance", "offset variance against the predicted scale");
  cvar->add_option("--t", cv.ts, "moduli, comma list")->required();
  cvar->add_option("--eps", cv.eps, "inflation eps")->capture_default_str();
  cvar->add_option("--trials", cv.trials, "offset draws")->capture_default_str();
  cvar->add_option("--seed", cv.seed, "rng seed")->capture_default_str();
  cvar->add_option("--threads", cv.threads, "worker threads")->capture_default_str();
  cvar->add_option("--bound-constant", cv.bound_constant, "acceptance multiple of the scale")
      ->capture_default_str();
  cvar->callback([&] {
    action = [&]() -> int {
      std::vector<long> t;
      for (const auto& s : split_list(cv.ts, ',')) t.push_back(std::stol(s));
      Rational eps = parse_rat_arg(cv.eps);
      std::cout << "config: moduli=" << t.size() << " eps=" << to_text(eps)
                << " trials=" << cv.trials << " seed=" << cv.seed << "\n";
      VarianceReport rep =
          mu_variance_mc(t, eps, cv.trials, cv.seed, cv.threads, cv.bound_constant);
      std::cout << "sample_variance = " << decimal_text(rep.sample_variance, 12) << "\n";
      std::cout << "predicted_scale = " << rep.predicted_scale << " ratio=" << rep.ratio
                << " applicable=" << (rep.applicable ? "yes" : "no")
                << " within_bound=" << (rep.within_bound ? "yes" : "no") << "\n";
      return 0;
    };
  });

  // ---- explore ----
  struct {
    std::vector<std::string> ys;
    std::string z, eps = "1/2", delta = "1/2", start = "0", out;
    long long candidate_budget = 200'000;
    long long mc_samples = 20'000;
    std::size_t max_times = 64;
    std::uint64_t seed = 1;
  } ex;
  auto* explore = app.add_subcommand("explore", "search for coverage plans");
  explore->require_subcommand(1);
  auto* econ = explore->add_subcommand("conjecture", "greedy circle cover for a target z");
  econ->add_option("--z", ex.z, "target constant")->required();
  econ->add_option("--y", ex.ys, "parameters spanned against");
  econ->add_option("--eps", ex.eps, "inflation eps")->capture_default_str();
  econ->add_option("--delta", ex.delta, "allowed uncovered measure")->capture_default_str();
  econ->add_option("--start", ex.start, "first candidate time minus one")
      ->capture_default_str();
  econ->add_option("--candidate-budget", ex.candidate_budget, "candidate times examined")
      ->capture_default_str();
  econ->add_option("--max-times", ex.max_times, "cap on accepted times")
      ->capture_default_str();
  econ->add_option("--mc-samples", ex.mc_samples, "coverage samples past the piece budget")
      ->capture_default_str();
  econ->add_option("--seed", ex.seed, "sampling seed")->capture_default_str();
  econ->add_option("--out", ex.out, "write the serialized plan here ('-' = stdout)");
  econ->callback([&] {
    action = [&]() -> int {
      RealConstant z = parse_const_arg(ex.z);
      std::vector<RealConstant> ys;
      for (const auto& s : ex.ys) ys.push_back(parse_const_arg(s));
      Rational eps = parse_rat_arg(ex.eps), delta = parse_rat_arg(ex.delta);
      BigInt start = parse_int_arg(ex.start);
      ExploreOptions opts;
      opts.candidate_budget = ex.candidate_budget;
      opts.max_times = ex.max_times;
      opts.mc_samples = ex.mc_samples;
      opts.seed = ex.seed;
      std::cout << "config: z=" << z.to_text() << " parameters=" << ys.size()
                << " eps=" << to_text(eps) << " delta=" << to_text(delta)
                << " start=" << to_text(start) << " budget=" << ex.candidate_budget << "\n";
      CoverPlan plan = explore_conjecture(z, ys, eps, delta, start, opts);
      std::cout << "times=" << plan.times.size();
      if (!plan.times.empty())
        std::cout << " [" << to_text(plan.times.front()) << ".."
                  << to_text(plan.times.back()) << "]";
      std::cout << " coverage=" << decimal_text(plan.coverage, 8)
                << " bar=" << decimal_text(plan.coverage_bar, 8)
                << " exact=" << (plan.exact ? "yes" : "no")
                << " satisfied=" << (plan.satisfied ? "yes" : "no") << "\n";
      for (const Witness& w : plan.witnesses)
        std::cout << "witness " << w.param_index + 1 << ": " << to_text(w.center)
                  << " radius " << to_text(w.radius) << "\n";
      if (!ex.out.empty()) write_or_print(ex.out, serialize(plan));
      return plan.satisfied ? 0 : 1;
    };
  });

  // ---- experiment ----
  auto* experiment = app.add_subcommand("experiment", "averaging experiments");
  experiment->require_subcommand(1);

  struct {
    std::string n = "3", k = "5", psi = "const:1/10", gamma = "surd:0,1,2,1";
    long shifts = 256, count = 64, horizon = 100'000, xtrials = 64;
    long long target = 1;
    std::size_t pair_samples = 200;
    std::uint64_t seed = 1;
    int threads = 1;
  } xp;

  auto* xpair = experiment->add_subcommand("pairavg", "shift-averaged pair intersection");
  xpair->add_option("--n", xp.n, "first modulus")->capture_default_str();
  xpair->add_option("--k", xp.k, "second modulus")->capture_default_str();
  xpair->add_option("--psi", xp.psi, "psi spec (const:r, recip:r, table:n=r,...)")
      ->capture_default_str();
  xpair->add_option("--gamma", xp.gamma, "shift generator")->capture_default_str();
  xpair->add_option("--shifts", xp.shifts, "schedule length M")->capture_default_str();
  xpair->callback([&] {
    action = [&]() -> int {
      BigInt n = parse_int_arg(xp.n), k = parse_int_arg(xp.k);
      PsiSpec psi = parse_psi_arg(xp.psi);
      RealConstant gamma = parse_const_arg(xp.gamma);
      std::cout << "config: n=" << to_text(n) << " k=" << to_text(k) << " psi=" << xp.psi
                << " gamma=" << gamma.to_text() << " shifts=" << xp.shifts << "\n";
      CesaroReport rep = cesaro_pair_average(n, k, psi, gamma, xp.shifts);
      for (const auto& [m, mean] : rep.partial_means)
        std::cout << "M=" << m << " mean=" << decimal_text(mean, 10) << "\n";
      std::cout << "limit = " << to_text(rep.limit) << " (" << decimal_text(rep.limit, 10)
                << ") surrogate_bar=" << decimal_text(rep.surrogate_bar, 14) << "\n";
      return 0;
    };
  });

  auto* xratio = experiment->add_subcommand("ratio", "second moment over first moment squared");
  xratio->add_option("--count", xp.count, "indices 1..count")->capture_default_str();
  xratio->add_option("--psi", xp.psi, "psi spec")->capture_default_str();
  xratio->add_option("--gamma", xp.gamma, "shift generator")->capture_default_str();
  xratio->add_option("--pair-samples", xp.pair_samples, "max exact pairs before subsampling")
      ->capture_default_str();
  xratio->add_option("--seed", xp.seed, "pair sampling seed")->capture_default_str();
  xratio->callback([&] {
    action = [&]() -> int {
      PsiSpec psi = parse_psi_arg(xp.psi);
      RealConstant gamma = parse_const_arg(xp.gamma);
      std::vector<BigInt> indices;
      std::vector<Rational> shifts;
      Rational gamma_mid = gamma.is_rational()
                               ? gamma.rational_value()
                               : refine(gamma, 64 + static_cast<int>(ceil_log2(
                                                       Rational(xp.count + 1))))
                                     .midpoint();
      for (long i = 1; i <= xp.count; ++i) {
        indices.push_back(BigInt(i));
        shifts.push_back(frac(Rational(i) * gamma_mid));
      }
      std::cout << "config: count=" << xp.count << " psi=" << xp.psi
                << " gamma=" << gamma.to_text() << " pair_samples=" << xp.pair_samples
                << " seed=" << xp.seed << "\n";
      SecondMomentReport rep =
          second_moment_ratio(indices, shifts, psi, xp.seed, xp.pair_samples);
      std::cout << "first_moment = " << decimal_text(rep.first_moment, 8) << "\n";
      std::cout << "off_diagonal = " << decimal_text(rep.off_diagonal, 8)
                << " exact=" << (rep.off_diagonal_exact ? "yes" : "no")
                << " pairs=" << rep.sampled_pairs << "\n";
      std::cout << "ratio = " << rep.ratio << "\n";
      return 0;
    };
  });

  auto* xhit = experiment->add_subcommand("hitcount", "hit counts for random grid points");
  xhit->add_option("--psi", xp.psi, "psi spec")->capture_default_str();
  xhit->add_option("--gamma", xp.gamma, "shift generator")->capture_default_str();
  xhit->add_option("--horizon", xp.horizon, "count hits for n up to here")
      ->capture_default_str();
  xhit->add_option("--shifts", xp.shifts, "schedule positions")->capture_default_str();
  xhit->add_option("--trials", xp.xtrials, "x draws per shift")->capture_default_str();
  xhit->add_option("--target", xp.target, "success threshold R")->capture_default_str();
  xhit->add_option("--seed", xp.seed, "rng seed")->capture_default_str();
  xhit->add_option("--threads", xp.threads, "worker threads")->capture_default_str();
  xhit->callback([&] {
    action = [&]() -> int {
      PsiSpec psi = parse_psi_arg(xp.psi);
      RealConstant gamma = parse_const_arg(xp.gamma);
      HitCountOptions opts;
      opts.horizon = xp.horizon;
      opts.shifts = xp.shifts;
      opts.trials = xp.xtrials;
      opts.target = xp.target;
      opts.seed = xp.seed;
      opts.threads = xp.threads;
      std::cout << "config: psi=" << xp.psi << " gamma=" << gamma.to_text()
                << " horizon=" << xp.horizon << " shifts=" << xp.shifts
                << " trials=" << xp.xtrials << " target=" << xp.target
                << " seed=" << xp.seed << "\n";
      HitCountReport rep = hit_count_experiment(psi, gamma, opts);
      std::cout << "expected_hits = " << decimal_text(rep.expected_hits, 6)
                << " sufficient=" << (rep.expectation_sufficient ? "yes" : "no") << "\n";
      std::cout << "successes = " << rep.successes << "/" << rep.total << "\n";
      std::cout << "mean_hits = " << rep.mean_hits
                << " ratio_to_expected = " << rep.ratio_to_expected << "\n";
      return 0;
    };
  });

  // ---- util ----
  auto* util = app.add_subcommand("util", "small exact helpers");
  util->require_subcommand(1);

  struct {
    std::string n = "2", v, w = "0/1";
    std::vector<std::string> progs;
    int bits = 64;
  } ut;

  auto* ucop = util->add_subcommand("coprime-run", "longest run of non-coprime neighbors");
  ucop->add_option("--n", ut.n, "modulus")->required();
  ucop->callback([&] {
    action = [&]() -> int {
      BigInt n = parse_int_arg(ut.n);
      std::cout << "config: n=" << to_text(n) << "\n";
      std::cout << "run_length = " << coprime_run_length(n) << "\n";
      return 0;
    };
  });

  auto* udist = util->add_subcommand("dist", "certified distance to the integer lattice");
  udist->add_option("--v", ut.v, "constant")->required();
  udist->add_option("--n", ut.n, "multiplier")->capture_default_str();
  udist->add_option("--w", ut.w, "shift")->capture_default_str();
  udist->add_option("--bits", ut.bits, "working precision")->capture_default_str();
  udist->callback([&] {
    action = [&]() -> int {
      RealConstant v = parse_const_arg(ut.v);
      BigInt n = parse_int_arg(ut.n);
      Rational w = parse_rat_arg(ut.w);
      Enclosure e = dist_nearest_int(v, n, w, ut.bits);
      std::cout << "config: v=" << v.to_text() << " n=" << to_text(n)
                << " w=" << to_text(w) << " bits=" << ut.bits << "\n";
      std::cout << "dist in [" << decimal_text(e.lo, 12) << ", " << decimal_text(e.hi, 12)
                << "] width=" << decimal_text(e.width(), 14) << "\n";
      return 0;
    };
  });

  auto* umeas = util->add_subcommand("measure", "measure of a union of progressions");
  umeas->add_option("--prog", ut.progs, "progression k:offset:half_width")->required();
  umeas->callback([&] {
    action = [&]() -> int {
      IntervalSetMod1 acc;
      for (const auto& s : ut.progs) {
        auto parts = split_list(s, ':');
        if (parts.size() != 3) throw UsageError("--prog format is k:offset:half_width");
        acc = set_union(acc, progression_set(parse_int_arg(parts[0]),
                                             parse_rat_arg(parts[1]),
                                             parse_rat_arg(parts[2])));
      }
      std::cout << "config: progressions=" << ut.progs.size() << "\n";
      Rational m = acc.measure();
      std::cout << "pieces = " << acc.size() << "\n";
      std::cout << "measure = " << to_text(m) << " (" << decimal_text(m, 10) << ")\n";
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionError& e) {
    std::cerr << "precision cap: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
