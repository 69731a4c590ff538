#include "inhomog/psi.hpp"

#include <stdexcept>

namespace inhomog {

ScaleProfile ScaleProfile::strict_default() {
  ScaleProfile p;
  p.chaining = Chaining::strict;
  p.eps_tail = GeometricDecl{rat(1, 2), rat(1, 2)};
  p.level_product = GeometricDecl{Rational(1), Rational(1)};
  return p;
}

ScaleProfile ScaleProfile::scaled_default() {
  ScaleProfile p;
  p.chaining = Chaining::scaled;
  p.eps_tail = GeometricDecl{rat(1, 2), rat(1, 2)};
  p.level_product = GeometricDecl{rat(1, 4), Rational(1)};
  return p;
}

Rational ScaleProfile::threshold_at(int j) const {
  if (j >= 1 && static_cast<std::size_t>(j) <= thresholds.size()) return thresholds[j - 1];
  return pow2(-j - 1);
}

Rational ScaleProfile::target_at(int j) const {
  if (j >= 1 && static_cast<std::size_t>(j) <= targets.size()) return targets[j - 1];
  // strict chaining doubles the reciprocal-sum demand per level; scaled keeps
  // the product eps_j * s_j flat at 1/4 so small depths stay reachable
  return chaining == Chaining::strict ? pow2(j + 1) : pow2(j - 1);
}

PsiFunction build_psi(const std::vector<LevelPlan>& levels) {
  PsiFunction psi;
  for (const auto& lv : levels) {
    for (std::size_t m = 0; m < lv.times.size(); ++m) {
      const BigInt& k = lv.ks[m];
      Rational value = lv.threshold / Rational(lv.times[m] + 1);
      auto [it, inserted] = psi.values.emplace(k, value);
      if (!inserted)
        throw std::invalid_argument("psi support collision at k = " + to_text(k) +
                                    " (levels " + std::to_string(psi.level_of[k]) + " and " +
                                    std::to_string(lv.level) + ")");
      psi.level_of[k] = lv.level;
    }
  }
  return psi;
}

const char* to_cstr(CertMode m) {
  switch (m) {
    case CertMode::sequence:
      return "sequence";
    case CertMode::cantor:
      return "cantor";
    case CertMode::moreover:
      return "moreover";
  }
  return "?";
}

const char* to_cstr(Chaining c) {
  return c == Chaining::strict ? "strict" : "scaled";
}

}  // namespace inhomog
