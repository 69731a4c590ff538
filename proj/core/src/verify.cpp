#include "inhomog/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include "inhomog/construct.hpp"
#include "inhomog/factor.hpp"

namespace inhomog {

namespace {

Verdict pass(std::string name, std::string detail) {
  return Verdict{std::move(name), CheckStatus::pass, std::move(detail)};
}
Verdict fail(std::string name, std::string detail) {
  return Verdict{std::move(name), CheckStatus::fail, std::move(detail)};
}
Verdict na(std::string name, std::string detail) {
  return Verdict{std::move(name), CheckStatus::not_applicable, std::move(detail)};
}

Rational geom_at(const GeometricDecl& g, int j) {
  Rational r = g.coeff;
  for (int i = 0; i < j; ++i) r *= g.ratio;
  return r;
}

std::size_t active_params(const Certificate& cert, int level) {
  return std::min<std::size_t>(static_cast<std::size_t>(level), cert.parameters.size());
}

// cantor parameters are grouped per level
std::pair<int, std::size_t> cantor_level_of(const Certificate& cert, std::size_t param_index) {
  std::size_t seen = 0;
  for (std::size_t j = 0; j < cert.cantor_levels.size(); ++j) {
    if (param_index < seen + cert.cantor_levels[j].anchor_count)
      return {static_cast<int>(j + 1), param_index - seen};
    seen += cert.cantor_levels[j].anchor_count;
  }
  return {-1, 0};
}

}  // namespace

Verdict verify_structure(const Certificate& cert) {
  const std::string name = "structure";
  if (cert.levels.empty()) return fail(name, "no levels");
  if (cert.mode != CertMode::moreover && cert.parameters.empty())
    return fail(name, "no parameters");
  if (cert.mode == CertMode::moreover && cert.z_parameters.empty())
    return fail(name, "no target points");

  int prev_level = 0;
  BigInt prev_chain = -1;  // K_{j-1} or last time, depending on chaining
  for (const auto& lv : cert.levels) {
    std::string at = "level " + std::to_string(lv.level) + ": ";
    if (lv.level <= prev_level) return fail(name, at + "levels not strictly ascending");
    if (lv.threshold <= 0) return fail(name, at + "threshold not positive");
    if (lv.target_sum <= 0) return fail(name, at + "target not positive");
    if (lv.times.empty()) return fail(name, at + "no times");

    BigInt K = 1;
    for (std::size_t m = 0; m < lv.times.size(); ++m) {
      if (lv.times[m] < 1) return fail(name, at + "time below 1");
      if (m && lv.times[m] <= lv.times[m - 1])
        return fail(name, at + "times not strictly increasing at position " +
                              std::to_string(m + 1));
      K *= lv.times[m] + 1;
    }
    if (lv.K != K)
      return fail(name, at + "K mismatch: stored " + to_text(lv.K) + ", product " +
                            to_text(K));
    if (lv.ks.size() != lv.times.size()) return fail(name, at + "ks length mismatch");
    for (std::size_t m = 0; m < lv.times.size(); ++m)
      if (lv.ks[m] * (lv.times[m] + 1) != K)
        return fail(name, at + "k_" + std::to_string(m + 1) + " inconsistent with K");

    if (prev_chain >= 0 && lv.times.front() <= prev_chain)
      return fail(name, at + "first time " + to_text(lv.times.front()) +
                            " does not clear the previous level (" + to_text(prev_chain) +
                            ")");
    prev_chain = cert.profile.chaining == Chaining::strict ? K : lv.times.back();

    PairwiseSum sum;
    for (const auto& n : lv.times) {
      Rational term(1, n + 1);
      term.canonicalize();
      sum.add(term);
    }
    Rational total = sum.total();
    if (cert.mode != CertMode::moreover) {
      if (total < lv.target_sum)
        return fail(name, at + "reciprocal sum below target");
      Rational last(1, lv.times.back() + 1);
      last.canonicalize();
      if (total - last >= lv.target_sum)
        return fail(name, at + "prefix not minimal: dropping the last time still meets " +
                              "the target");
    }
    prev_level = lv.level;
  }

  try {
    build_psi(cert.levels);
  } catch (const std::invalid_argument& e) {
    return fail(name, e.what());
  }

  if (cert.mode == CertMode::cantor) {
    if (cert.cantor_levels.size() != cert.levels.size())
      return fail(name, "cantor payload count mismatch");
    std::size_t anchors = 0;
    for (std::size_t j = 0; j < cert.cantor_levels.size(); ++j) {
      const auto& cl = cert.cantor_levels[j];
      if (cl.set.is_empty())
        return fail(name, "level " + std::to_string(j + 1) + ": empty cut set");
      if (cl.L < 1) return fail(name, "level " + std::to_string(j + 1) + ": L below 1");
      if (cert.levels[j].times.front() < cl.L)
        return fail(name, "level " + std::to_string(j + 1) + ": first time below L");
      anchors += cl.anchor_count;
    }
    if (anchors != cert.parameters.size())
      return fail(name, "anchor counts do not add up to the parameter count");
  }

  if (cert.mode == CertMode::moreover) {
    if (cert.coverages.size() != cert.levels.size() ||
        cert.deltas.size() != cert.levels.size() ||
        cert.coverage_bars.size() != cert.levels.size() ||
        cert.witnesses.size() != cert.levels.size())
      return fail(name, "moreover payload count mismatch");
    for (std::size_t j = 0; j < cert.levels.size(); ++j) {
      std::string at = "level " + std::to_string(cert.levels[j].level) + ": ";
      if (cert.deltas[j] <= 0 || cert.deltas[j] >= 1)
        return fail(name, at + "delta outside (0, 1)");
      if (cert.coverages[j] < 0 || cert.coverages[j] > 1)
        return fail(name, at + "coverage outside [0, 1]");
      std::size_t want = active_params(cert, cert.levels[j].level);
      if (cert.witnesses[j].size() != want)
        return fail(name, at + "witness count " + std::to_string(cert.witnesses[j].size()) +
                              ", expected " + std::to_string(want));
    }
  }

  return pass(name, std::to_string(cert.levels.size()) + " levels, " +
                        std::to_string(cert.parameters.size()) + " parameters");
}

Verdict verify_level_containment(const Certificate& cert, std::size_t param_index,
                                 const VerifyOptions& opts) {
  const std::string name = "containment[" + std::to_string(param_index + 1) + "]";
  if (param_index >= cert.parameters.size()) return na(name, "no such parameter");
  const RealConstant& y = cert.parameters[param_index];

  PsiFunction psi;
  try {
    psi = build_psi(cert.levels);
  } catch (const std::invalid_argument& e) {
    return fail(name, e.what());
  }

  int checked_levels = 0;
  for (std::size_t level_idx = 0; level_idx < cert.levels.size(); ++level_idx) {
    const LevelPlan& lv = cert.levels[level_idx];
    bool active;
    if (cert.mode == CertMode::cantor) {
      active = cantor_level_of(cert, param_index).first == lv.level;
    } else {
      active = param_index < active_params(cert, lv.level);
    }
    if (!active) continue;
    ++checked_levels;

    for (std::size_t m = 0; m < lv.times.size(); ++m) {
      const BigInt& n = lv.times[m];
      bool ok;
      if (cert.mode == CertMode::moreover) {
        if (level_idx >= cert.witnesses.size() ||
            param_index >= cert.witnesses[level_idx].size())
          return fail(name, "level " + std::to_string(lv.level) + ": witness missing");
        const RealConstant& z = moreover_target_at(cert.z_parameters, lv.level);
        const Witness& w = cert.witnesses[level_idx][param_index];
        ok = certified_combo_leq({Rational(n + 1), Rational(-1)}, {z, y},
                                 Rational(-w.center), lv.threshold, opts.certify);
      } else {
        ok = certified_leq(y, n, Rational(0), lv.threshold, opts.certify);
      }
      if (!ok)
        return fail(name, "level " + std::to_string(lv.level) + ", time " + to_text(n) +
                              ": distance exceeds " + to_text(lv.threshold));

      Rational lhs = psi.at(lv.ks[m]) / Rational(lv.ks[m]);
      Rational rhs = lv.threshold / Rational(lv.K);
      if (lhs != rhs)
        return fail(name, "level " + std::to_string(lv.level) + ", time " + to_text(n) +
                              ": psi(k)/k differs from threshold/K");
    }
  }
  if (checked_levels == 0) return na(name, "parameter scheduled at no level");
  return pass(name, std::to_string(checked_levels) + " levels rechecked at " +
                        std::to_string(opts.certify.start_bits) + "+ bits");
}

Verdict verify_borel_cantelli(const Certificate& cert) {
  const std::string name = "borel-cantelli";
  if (cert.levels.empty()) return fail(name, "no levels");
  PairwiseSum partial;
  for (const auto& lv : cert.levels) {
    Rational slab = 4 * lv.threshold;
    if (slab > 1) slab = 1;
    partial.add(slab);
  }
  const auto& decl = cert.profile.eps_tail;
  if (!decl)
    return na(name, "no summable envelope declared; partial slab sum " +
                        decimal_text(partial.total()));
  if (decl->ratio >= 1 || decl->coeff <= 0)
    return na(name, "declared envelope is not summable; partial slab sum " +
                        decimal_text(partial.total()));
  for (const auto& lv : cert.levels) {
    if (lv.threshold > geom_at(*decl, lv.level))
      return fail(name, "level " + std::to_string(lv.level) +
                            ": threshold exceeds the declared envelope " +
                            to_text(decl->coeff) + " * " + to_text(decl->ratio) + "^j");
  }
  // sum_j 4 c r^j = 4 c r / (1 - r)
  Rational tail = 4 * decl->coeff * decl->ratio / (1 - decl->ratio);
  return pass(name, "slab sum over levels " + to_text(partial.total()) +
                        ", declared series bounded by " + to_text(tail));
}

Verdict verify_divergence(const Certificate& cert) {
  const std::string name = "divergence";
  if (cert.levels.empty()) return fail(name, "no levels");
  PairwiseSum mass;
  for (const auto& lv : cert.levels) {
    PairwiseSum sum;
    for (const auto& n : lv.times) {
      Rational term(1, n + 1);
      term.canonicalize();
      sum.add(term);
    }
    Rational total = sum.total();
    if (total < lv.target_sum)
      return fail(name, "level " + std::to_string(lv.level) + ": reciprocal sum " +
                            decimal_text(total) + " below target " + to_text(lv.target_sum));
    mass.add(Rational(lv.threshold * total));
  }
  const auto& decl = cert.profile.level_product;
  if (!decl)
    return na(name, "no divergence envelope declared; psi mass over levels " +
                        decimal_text(mass.total()));
  for (const auto& lv : cert.levels) {
    if (lv.threshold * lv.target_sum < geom_at(*decl, lv.level))
      return fail(name, "level " + std::to_string(lv.level) +
                            ": eps_j * s_j falls below the declared envelope");
  }
  if (decl->coeff <= 0 || decl->ratio < 1)
    return fail(name, "declared envelope " + to_text(decl->coeff) + " * " +
                          to_text(decl->ratio) + "^j is summable, series would converge");
  return pass(name, "psi mass over levels " + decimal_text(mass.total()) +
                        ", per-level floor " + to_text(decl->coeff) + " * " +
                        to_text(decl->ratio) + "^j");
}

Verdict verify_phi_sum(const Certificate& cert) {
  const std::string name = "phi-sum";
  if (cert.levels.empty()) return fail(name, "no levels");
  PairwiseSum total;
  PairwiseSum bound;
  for (const auto& lv : cert.levels) {
    bound.add(Rational(2 * lv.threshold));
    std::vector<FactorMap> time_factors;
    time_factors.reserve(lv.times.size());
    FactorMap K_factors;
    for (const auto& n : lv.times) {
      time_factors.push_back(factorize(n + 1));
      K_factors = merge_factors(K_factors, time_factors.back());
    }
    Rational base = totient_ratio(K_factors);
    for (std::size_t m = 0; m < lv.times.size(); ++m) {
      // primes of n_m + 1 whose full multiplicity sits in n_m + 1 drop out of k_m
      Rational ratio = base;
      for (const auto& [p, e] : time_factors[m]) {
        if (K_factors.at(p) == e) {
          Rational f(p - 1, p);
          f.canonicalize();
          ratio /= f;
        }
      }
      total.add(Rational(ratio * lv.threshold / Rational(lv.times[m] + 1)));
    }
  }
  Rational t = total.total(), b = bound.total();
  if (t > b)
    return fail(name, "totient-weighted mass " + decimal_text(t, 8) + " exceeds " +
                          decimal_text(b, 8));
  return pass(name, "totient-weighted mass " + decimal_text(t, 8) + " <= " +
                        decimal_text(b, 8));
}

Verdict verify_rational_combination(const Certificate& cert,
                                    const std::vector<Rational>& coeffs, const Rational& b,
                                    const VerifyOptions& opts) {
  const std::string name = "rational-combination";
  if (cert.mode == CertMode::moreover)
    return na(name, "shifted targets carry their own witnesses");
  if (coeffs.size() > cert.parameters.size())
    return na(name, "combination touches more parameters than the certificate has");

  BigInt c1 = b.get_den();
  Rational S(0);
  for (const auto& a : coeffs) {
    mpz_lcm(c1.get_mpz_t(), c1.get_mpz_t(), a.get_den().get_mpz_t());
    S += a > 0 ? a : Rational(-a);
  }
  Rational c1q(c1);
  BigInt c2 = ceil_rat(Rational(c1q * S)) + 1;

  const auto& decl = cert.profile.eps_tail;
  if (!decl || decl->ratio >= 1 || decl->coeff <= 0)
    return na(name, "no summable envelope declared for the scaled slabs");

  int min_level = static_cast<int>(coeffs.size());
  std::vector<RealConstant> vals(cert.parameters.begin(),
                                 cert.parameters.begin() + coeffs.size());
  int checked = 0;
  for (const auto& lv : cert.levels) {
    if (lv.level < min_level) continue;
    if (cert.mode == CertMode::cantor) {
      // anchor schedule is per level; combinations only make sense when all
      // touched anchors live at or before this level
      std::size_t seen = 0;
      for (std::size_t j = 0; j < cert.cantor_levels.size() &&
                              cert.levels[j].level <= lv.level; ++j)
        seen += cert.cantor_levels[j].anchor_count;
      if (coeffs.size() > seen) continue;
    }
    ++checked;
    Rational thr = c1q * S * lv.threshold;
    for (const auto& n : lv.times) {
      std::vector<Rational> scaled;
      scaled.reserve(coeffs.size());
      Rational nn(n);
      for (const auto& a : coeffs) scaled.push_back(Rational(c1q * nn * a));
      bool ok = certified_combo_leq(scaled, vals, Rational(c1q * nn * b), thr, opts.certify);
      if (!ok)
        return fail(name, "level " + std::to_string(lv.level) + ", time " + to_text(n) +
                              ": dist(c1 n z, Z) exceeds c1 S eps_j");
    }
  }
  if (checked == 0) return na(name, "no level schedules all touched parameters");
  return pass(name, "c1 = " + to_text(c1) + ", c2 = " + to_text(c2) + ", " +
                        std::to_string(checked) + " levels checked");
}

Verdict verify_cantor_nesting(const Certificate& cert, const VerifyOptions& opts) {
  const std::string name = "cantor-nesting";
  if (cert.mode != CertMode::cantor) return na(name, "not a nested-set certificate");
  if (cert.cantor_levels.size() != cert.levels.size())
    return fail(name, "payload count mismatch");

  IntervalSetMod1 C = IntervalSetMod1::unit_closed();
  std::size_t anchor_base = 0;
  for (std::size_t j = 0; j < cert.levels.size(); ++j) {
    const auto& lv = cert.levels[j];
    const auto& cl = cert.cantor_levels[j];
    std::string at = "level " + std::to_string(lv.level) + ": ";

    Rational minlen = C.min_positive_length();
    if (minlen == 0) return fail(name, at + "previous set has no positive component");
    if (cl.L != ceil_rat(Rational(1 / minlen)))
      return fail(name, at + "stored L differs from the recomputed component floor");
    if (lv.times.front() < cl.L) return fail(name, at + "first time below L");

    IntervalSetMod1 next = C;
    for (const auto& n : lv.times)
      next = set_intersect(next, line_closeness_set(n, lv.threshold, opts.interval_budget));
    if (!(next == cl.set))
      return fail(name, at + "stored set differs from the recomputed intersection");
    if (!C.contains(next)) return fail(name, at + "set not nested in its predecessor");
    if (next.is_empty()) return fail(name, at + "empty set");
    for (std::size_t a = 0; a < cl.anchor_count; ++a) {
      const RealConstant& anchor = cert.parameters[anchor_base + a];
      if (!anchor.is_rational() ||
          !next.contains_point(anchor.rational_value()))
        return fail(name, at + "anchor " + std::to_string(a + 1) + " not in the cut set");
    }
    anchor_base += cl.anchor_count;
    C = std::move(next);
  }
  return pass(name, std::to_string(cert.levels.size()) + " levels recomputed and matched");
}

Verdict verify_coverage(const Certificate& cert, const VerifyOptions& opts) {
  const std::string name = "coverage";
  if (cert.mode != CertMode::moreover) return na(name, "no coverage claims");
  if (cert.coverages.size() != cert.levels.size())
    return fail(name, "payload count mismatch");

  for (std::size_t j = 0; j < cert.levels.size(); ++j) {
    const auto& lv = cert.levels[j];
    std::string at = "level " + std::to_string(lv.level) + ": ";
    CoverPlan plan;
    plan.z = moreover_target_at(cert.z_parameters, lv.level);
    plan.eps = 2 * lv.threshold;
    plan.times = lv.times;
    ExploreOptions ex;
    ex.interval_budget = opts.interval_budget;
    ex.mc_samples = opts.mc_samples;
    ex.seed = opts.seed;
    auto [cov, bar] = coverage_of(plan, ex);
    BigInt pieces = 0;
    for (const auto& n : lv.times) pieces += lv.K / (n + 1);
    bool exact = pieces <= BigInt(static_cast<unsigned long>(opts.interval_budget));
    if (exact) {
      if (cov != cert.coverages[j])
        return fail(name, at + "recomputed coverage " + decimal_text(cov, 8) +
                              " differs from claim " + decimal_text(cert.coverages[j], 8));
    } else {
      Rational gap = cov - cert.coverages[j];
      if (gap < 0) gap = -gap;
      if (gap > bar + cert.coverage_bars[j])
        return fail(name, at + "sampled coverage too far from claim");
    }
    if (cert.coverages[j] - cert.coverage_bars[j] < 1 - cert.deltas[j])
      return fail(name, at + "coverage minus bar falls below 1 - delta");
  }
  return pass(name, std::to_string(cert.levels.size()) + " levels recomputed");
}

std::vector<Verdict> verify_all(const Certificate& cert, const VerifyOptions& opts) {
  std::vector<Verdict> out;
  out.push_back(verify_structure(cert));
  for (std::size_t i = 0; i < cert.parameters.size(); ++i)
    out.push_back(verify_level_containment(cert, i, opts));
  out.push_back(verify_borel_cantelli(cert));
  out.push_back(verify_divergence(cert));
  out.push_back(verify_phi_sum(cert));
  if (cert.mode == CertMode::cantor) out.push_back(verify_cantor_nesting(cert, opts));
  if (cert.mode == CertMode::moreover) out.push_back(verify_coverage(cert, opts));
  return out;
}

}  // namespace inhomog
