#pragma once

#include "inhomog/covering.hpp"
#include "inhomog/psi.hpp"
#include "inhomog/verdict.hpp"

namespace inhomog {

struct VerifyOptions {
  // rechecks run at doubled starting precision relative to construction
  CertifyOptions certify{128, 4096};
  std::size_t interval_budget = kDefaultIntervalBudget;
  long long mc_samples = 20'000;
  std::uint64_t seed = 1;
};

// Shape and bookkeeping: level ordering, strictly increasing times, K and ks
// consistent with the times, disjoint psi support, chaining constraints,
// minimal qualifying prefixes, per-mode payload sizes.
Verdict verify_structure(const Certificate& cert);

// For one parameter, re-certifies every distance bound at every level where
// the parameter is scheduled, plus the exact value identity
// psi(k_m)/k_m = threshold_j / K_j.
Verdict verify_level_containment(const Certificate& cert, std::size_t param_index,
                                 const VerifyOptions& opts = {});

// Summability of the covering slabs: partial sum of min(1, 4 eps_j) plus the
// declared geometric tail; fails when a level violates its declared envelope.
Verdict verify_borel_cantelli(const Certificate& cert);

// Per-level reciprocal sums against targets plus the declared divergence of
// sum_j eps_j * s_j.
Verdict verify_divergence(const Certificate& cert);

// Exact sum of phi(k_m) psi(k_m) / k_m against sum_j 2 eps_j.
Verdict verify_phi_sum(const Certificate& cert);

// Bounds for the shifted target z = sum coeffs[i] y_i + b: at every level
// with all touched parameters scheduled, dist(c1 n_m z, Z) <= c1 S eps_j,
// where c1 clears denominators and S = sum |coeffs|.
Verdict verify_rational_combination(const Certificate& cert,
                                    const std::vector<Rational>& coeffs, const Rational& b,
                                    const VerifyOptions& opts = {});

// Recomputes the nested sets from the times and compares them piece by piece;
// checks nesting, nonemptiness, anchor membership and the component-length
// floor L_j.
Verdict verify_cantor_nesting(const Certificate& cert, const VerifyOptions& opts = {});

// Recomputes per-level coverage from (times, target, eps); exact recomputation
// must match the claim bit for bit, sampled recomputation within error bars.
Verdict verify_coverage(const Certificate& cert, const VerifyOptions& opts = {});

std::vector<Verdict> verify_all(const Certificate& cert, const VerifyOptions& opts = {});

}  // namespace inhomog
