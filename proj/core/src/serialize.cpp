#include "inhomog/serialize.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

namespace inhomog {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
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
  out.push_back(cur);
  return out;
}

std::pair<std::string, std::string> split_kv(const std::string& tok, long line) {
  auto pos = tok.find('=');
  if (pos == std::string::npos || pos == 0)
    throw ParseError("expected key=value, got '" + tok + "'", line);
  return {tok.substr(0, pos), tok.substr(pos + 1)};
}

Rational need_rational(const std::string& s, long line) {
  auto q = parse_rational(s);
  if (!q) throw ParseError("bad rational '" + s + "'", line);
  return *q;
}

BigInt need_bigint(const std::string& s, long line) {
  auto n = parse_bigint(s);
  if (!n) throw ParseError("bad integer '" + s + "'", line);
  return *n;
}

RealConstant need_real(const std::string& s, long line) {
  auto v = RealConstant::parse(s);
  if (!v) throw ParseError("bad constant '" + s + "'", line);
  return *v;
}

GeometricDecl need_decl(const std::string& s, long line) {
  auto parts = split_on(s, ',');
  if (parts.size() != 2) throw ParseError("expected coeff,ratio in '" + s + "'", line);
  return GeometricDecl{need_rational(parts[0], line), need_rational(parts[1], line)};
}

std::string decl_text(const GeometricDecl& d) {
  return to_text(d.coeff) + "," + to_text(d.ratio);
}

std::string rational_list_text(const std::vector<Rational>& rs) {
  std::string out;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (i) out += ";";
    out += to_text(rs[i]);
  }
  return out;
}

std::vector<Rational> need_rational_list(const std::string& s, long line) {
  std::vector<Rational> out;
  for (const auto& part : split_on(s, ';')) out.push_back(need_rational(part, line));
  return out;
}

void emit_profile(std::ostringstream& out, const ScaleProfile& p) {
  out << "profile chaining=" << to_cstr(p.chaining);
  if (p.eps_tail) out << " eps_tail=" << decl_text(*p.eps_tail);
  if (p.level_product) out << " level_product=" << decl_text(*p.level_product);
  if (!p.thresholds.empty()) out << " thresholds=" << rational_list_text(p.thresholds);
  if (!p.targets.empty()) out << " targets=" << rational_list_text(p.targets);
  out << "\n";
}

void parse_profile(ScaleProfile& p, const std::vector<std::string>& toks, long line) {
  for (std::size_t i = 1; i < toks.size(); ++i) {
    auto [key, value] = split_kv(toks[i], line);
    if (key == "chaining") {
      if (value == "strict")
        p.chaining = Chaining::strict;
      else if (value == "scaled")
        p.chaining = Chaining::scaled;
      else
        throw ParseError("unknown chaining '" + value + "'", line);
    } else if (key == "eps_tail") {
      p.eps_tail = need_decl(value, line);
    } else if (key == "level_product") {
      p.level_product = need_decl(value, line);
    } else if (key == "thresholds") {
      p.thresholds = need_rational_list(value, line);
    } else if (key == "targets") {
      p.targets = need_rational_list(value, line);
    } else {
      throw ParseError("unknown profile field '" + key + "'", line);
    }
  }
}

void emit_times(std::ostringstream& out, const std::vector<BigInt>& times) {
  out << "times";
  for (const auto& n : times) out << " " << to_text(n);
  out << "\n";
}

void derive_level_tail(LevelPlan& lv) {
  lv.ks.clear();
  lv.ks.reserve(lv.times.size());
  PairwiseSum sum;
  for (const auto& n : lv.times) {
    lv.ks.push_back(BigInt(lv.K / (n + 1)));
    Rational term(1, n + 1);
    term.canonicalize();
    sum.add(term);
  }
  lv.reciprocal_sum = sum.total();
}

bool decl_eq(const std::optional<GeometricDecl>& a, const std::optional<GeometricDecl>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->coeff == b->coeff && a->ratio == b->ratio);
}

bool profile_eq(const ScaleProfile& a, const ScaleProfile& b) {
  return a.chaining == b.chaining && a.thresholds == b.thresholds &&
         a.targets == b.targets && decl_eq(a.eps_tail, b.eps_tail) &&
         decl_eq(a.level_product, b.level_product);
}

bool level_eq(const LevelPlan& a, const LevelPlan& b) {
  // norm bounds are search artifacts; everything else must agree exactly
  return a.level == b.level && a.threshold == b.threshold &&
         a.target_sum == b.target_sum && a.times == b.times && a.K == b.K &&
         a.ks == b.ks && a.reciprocal_sum == b.reciprocal_sum;
}

bool witness_eq(const Witness& a, const Witness& b) {
  return a.param_index == b.param_index && a.center == b.center && a.radius == b.radius;
}

bool witness_list_eq(const std::vector<Witness>& a, const std::vector<Witness>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!witness_eq(a[i], b[i])) return false;
  return true;
}

}  // namespace

std::string serialize(const Certificate& cert) {
  std::ostringstream out;
  out << "inhomog-cert v1 mode=" << to_cstr(cert.mode) << "\n";
  emit_profile(out, cert.profile);
  for (std::size_t i = 0; i < cert.parameters.size(); ++i)
    out << "param " << i + 1 << " " << cert.parameters[i].to_text() << "\n";
  for (std::size_t i = 0; i < cert.z_parameters.size(); ++i)
    out << "zparam " << i + 1 << " " << cert.z_parameters[i].to_text() << "\n";

  for (std::size_t j = 0; j < cert.levels.size(); ++j) {
    const LevelPlan& lv = cert.levels[j];
    out << "level " << lv.level << " threshold=" << to_text(lv.threshold)
        << " target=" << to_text(lv.target_sum);
    if (cert.mode == CertMode::moreover && j < cert.deltas.size())
      out << " delta=" << to_text(cert.deltas[j]);
    if (cert.mode == CertMode::cantor && j < cert.cantor_levels.size())
      out << " anchors=" << cert.cantor_levels[j].anchor_count
          << " L=" << to_text(cert.cantor_levels[j].L);
    out << "\n";
    emit_times(out, lv.times);
    out << "K " << to_text(lv.K) << "\n";

    if (cert.mode == CertMode::cantor && j < cert.cantor_levels.size()) {
      out << "cset";
      const auto& pieces = cert.cantor_levels[j].set.pieces();
      for (std::size_t p = 0; p < pieces.size(); ++p) {
        if (!pieces[p].closed_left || !pieces[p].closed_right)
          throw std::invalid_argument("only closed cut sets serialize");
        out << (p ? ";" : " ") << to_text(pieces[p].left) << ","
            << to_text(pieces[p].right);
      }
      out << "\n";
    }
    if (cert.mode == CertMode::moreover) {
      if (j < cert.coverages.size()) {
        out << "coverage " << to_text(cert.coverages[j]);
        if (j < cert.coverage_bars.size())
          out << " bar=" << to_text(cert.coverage_bars[j]);
        out << "\n";
      }
      if (j < cert.witnesses.size())
        for (const Witness& w : cert.witnesses[j])
          out << "witness " << w.param_index + 1 << " " << to_text(w.center) << " "
              << to_text(w.radius) << "\n";
    }
  }
  return out.str();
}

Certificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long lineno = 0;

  Certificate cert;
  bool have_header = false;
  bool in_levels = false;
  bool have_times = false, have_K = false, have_cset = false, have_coverage = false;

  auto close_level = [&](long at) {
    if (cert.levels.empty()) return;
    if (!have_times || !have_K) throw ParseError("level missing times or K", at);
    if (cert.mode == CertMode::cantor && !have_cset)
      throw ParseError("cut-set level missing cset", at);
    if (cert.mode == CertMode::moreover && !have_coverage)
      throw ParseError("coverage level missing coverage", at);
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_tokens(line);
    if (toks.empty()) continue;

    if (!have_header) {
      if (toks.size() != 3 || toks[0] != "inhomog-cert")
        throw ParseError("expected 'inhomog-cert v1 mode=...'", lineno);
      if (toks[1] != "v1") throw ParseError("unsupported version '" + toks[1] + "'", lineno);
      auto [key, value] = split_kv(toks[2], lineno);
      if (key != "mode") throw ParseError("expected mode=...", lineno);
      if (value == "sequence")
        cert.mode = CertMode::sequence;
      else if (value == "cantor")
        cert.mode = CertMode::cantor;
      else if (value == "moreover")
        cert.mode = CertMode::moreover;
      else
        throw ParseError("unknown mode '" + value + "'", lineno);
      have_header = true;
      continue;
    }

    const std::string& kind = toks[0];
    if (kind == "profile") {
      if (in_levels) throw ParseError("profile must precede levels", lineno);
      parse_profile(cert.profile, toks, lineno);
    } else if (kind == "param" || kind == "zparam") {
      if (in_levels) throw ParseError("parameters must precede levels", lineno);
      if (toks.size() != 3) throw ParseError("expected '" + kind + " <i> <value>'", lineno);
      auto& list = kind == "param" ? cert.parameters : cert.z_parameters;
      BigInt idx = need_bigint(toks[1], lineno);
      if (idx != BigInt(static_cast<unsigned long>(list.size() + 1)))
        throw ParseError(kind + " index out of order", lineno);
      list.push_back(need_real(toks[2], lineno));
    } else if (kind == "level") {
      close_level(lineno);
      in_levels = true;
      have_times = have_K = have_cset = have_coverage = false;
      if (toks.size() < 2) throw ParseError("expected 'level <j> ...'", lineno);
      LevelPlan lv;
      BigInt j = need_bigint(toks[1], lineno);
      if (j < 1 || j > 1'000'000'000) throw ParseError("level index out of range", lineno);
      lv.level = static_cast<int>(j.get_si());
      bool have_thr = false, have_tgt = false;
      std::optional<std::size_t> anchors;
      std::optional<BigInt> L;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        auto [key, value] = split_kv(toks[i], lineno);
        if (key == "threshold") {
          lv.threshold = need_rational(value, lineno);
          have_thr = true;
        } else if (key == "target") {
          lv.target_sum = need_rational(value, lineno);
          have_tgt = true;
        } else if (key == "delta") {
          if (cert.mode != CertMode::moreover)
            throw ParseError("delta only applies to coverage certificates", lineno);
          cert.deltas.push_back(need_rational(value, lineno));
        } else if (key == "anchors") {
          BigInt a = need_bigint(value, lineno);
          if (a < 0) throw ParseError("negative anchor count", lineno);
          anchors = static_cast<std::size_t>(a.get_ui());
        } else if (key == "L") {
          L = need_bigint(value, lineno);
        } else {
          throw ParseError("unknown level field '" + key + "'", lineno);
        }
      }
      if (!have_thr || !have_tgt)
        throw ParseError("level needs threshold= and target=", lineno);
      if (cert.mode == CertMode::cantor) {
        if (!anchors || !L) throw ParseError("cut-set level needs anchors= and L=", lineno);
        cert.cantor_levels.push_back(CantorLevel{IntervalSetMod1::empty(), *anchors, *L});
      } else if (anchors || L) {
        throw ParseError("anchors=/L= only apply to cut-set certificates", lineno);
      }
      if (cert.mode == CertMode::moreover) {
        if (cert.deltas.size() != cert.levels.size() + 1)
          throw ParseError("coverage level needs delta=", lineno);
        cert.witnesses.emplace_back();
      }
      cert.levels.push_back(std::move(lv));
    } else if (kind == "times") {
      if (!in_levels || have_times) throw ParseError("unexpected times record", lineno);
      if (toks.size() < 2) throw ParseError("times record is empty", lineno);
      for (std::size_t i = 1; i < toks.size(); ++i)
        cert.levels.back().times.push_back(need_bigint(toks[i], lineno));
      have_times = true;
    } else if (kind == "K") {
      if (!in_levels || !have_times || have_K)
        throw ParseError("unexpected K record", lineno);
      if (toks.size() != 2) throw ParseError("expected 'K <int>'", lineno);
      cert.levels.back().K = need_bigint(toks[1], lineno);
      derive_level_tail(cert.levels.back());
      have_K = true;
    } else if (kind == "cset") {
      if (cert.mode != CertMode::cantor || !in_levels || have_cset)
        throw ParseError("unexpected cset record", lineno);
      std::vector<Interval> pieces;
      if (toks.size() > 2) throw ParseError("cset takes one piece list", lineno);
      if (toks.size() == 2) {
        for (const auto& part : split_on(toks[1], ';')) {
          auto ends = split_on(part, ',');
          if (ends.size() != 2)
            throw ParseError("expected left,right in '" + part + "'", lineno);
          pieces.push_back(Interval{need_rational(ends[0], lineno),
                                    need_rational(ends[1], lineno), true, true});
        }
      }
      try {
        cert.cantor_levels.back().set = IntervalSetMod1::from_intervals(std::move(pieces));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lineno);
      }
      have_cset = true;
    } else if (kind == "coverage") {
      if (cert.mode != CertMode::moreover || !in_levels || have_coverage)
        throw ParseError("unexpected coverage record", lineno);
      if (toks.size() < 2) throw ParseError("expected 'coverage <value> [bar=...]'", lineno);
      cert.coverages.push_back(need_rational(toks[1], lineno));
      Rational bar(0);
      for (std::size_t i = 2; i < toks.size(); ++i) {
        auto [key, value] = split_kv(toks[i], lineno);
        if (key != "bar") throw ParseError("unknown coverage field '" + key + "'", lineno);
        bar = need_rational(value, lineno);
      }
      cert.coverage_bars.push_back(bar);
      have_coverage = true;
    } else if (kind == "witness") {
      if (cert.mode != CertMode::moreover || !in_levels)
        throw ParseError("unexpected witness record", lineno);
      if (toks.size() != 4)
        throw ParseError("expected 'witness <i> <center> <radius>'", lineno);
      BigInt idx = need_bigint(toks[1], lineno);
      if (idx < 1) throw ParseError("witness index must be >= 1", lineno);
      Witness w;
      w.param_index = static_cast<std::size_t>(idx.get_ui()) - 1;
      w.center = need_rational(toks[2], lineno);
      w.radius = need_rational(toks[3], lineno);
      cert.witnesses.back().push_back(std::move(w));
    } else {
      throw ParseError("unknown record '" + kind + "'", lineno);
    }
  }

  if (!have_header) throw ParseError("empty input", 1);
  if (cert.levels.empty()) throw ParseError("certificate has no levels", lineno);
  close_level(lineno);
  return cert;
}

std::string serialize(const CoverPlan& plan) {
  std::ostringstream out;
  out << "inhomog-cover v1\n";
  out << "z " << plan.z.to_text() << "\n";
  for (std::size_t i = 0; i < plan.ys.size(); ++i)
    out << "y " << i + 1 << " " << plan.ys[i].to_text() << "\n";
  out << "eps " << to_text(plan.eps) << "\n";
  out << "delta " << to_text(plan.delta) << "\n";
  emit_times(out, plan.times);
  out << "coverage " << to_text(plan.coverage) << " bar=" << to_text(plan.coverage_bar)
      << " exact=" << (plan.exact ? 1 : 0) << " satisfied=" << (plan.satisfied ? 1 : 0)
      << "\n";
  for (const Witness& w : plan.witnesses)
    out << "witness " << w.param_index + 1 << " " << to_text(w.center) << " "
        << to_text(w.radius) << "\n";
  return out.str();
}

CoverPlan parse_cover_plan(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long lineno = 0;

  CoverPlan plan;
  bool have_header = false, have_z = false, have_eps = false, have_delta = false;
  bool have_times = false, have_coverage = false;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_tokens(line);
    if (toks.empty()) continue;

    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "inhomog-cover")
        throw ParseError("expected 'inhomog-cover v1'", lineno);
      if (toks[1] != "v1") throw ParseError("unsupported version '" + toks[1] + "'", lineno);
      have_header = true;
      continue;
    }

    const std::string& kind = toks[0];
    if (kind == "z") {
      if (have_z || toks.size() != 2) throw ParseError("expected one 'z <value>'", lineno);
      plan.z = need_real(toks[1], lineno);
      have_z = true;
    } else if (kind == "y") {
      if (toks.size() != 3) throw ParseError("expected 'y <i> <value>'", lineno);
      BigInt idx = need_bigint(toks[1], lineno);
      if (idx != BigInt(static_cast<unsigned long>(plan.ys.size() + 1)))
        throw ParseError("y index out of order", lineno);
      plan.ys.push_back(need_real(toks[2], lineno));
    } else if (kind == "eps") {
      if (have_eps || toks.size() != 2) throw ParseError("expected one 'eps <value>'", lineno);
      plan.eps = need_rational(toks[1], lineno);
      have_eps = true;
    } else if (kind == "delta") {
      if (have_delta || toks.size() != 2)
        throw ParseError("expected one 'delta <value>'", lineno);
      plan.delta = need_rational(toks[1], lineno);
      have_delta = true;
    } else if (kind == "times") {
      if (have_times) throw ParseError("duplicate times record", lineno);
      for (std::size_t i = 1; i < toks.size(); ++i)
        plan.times.push_back(need_bigint(toks[i], lineno));
      have_times = true;
    } else if (kind == "coverage") {
      if (have_coverage || toks.size() < 2)
        throw ParseError("expected one 'coverage <value> ...'", lineno);
      plan.coverage = need_rational(toks[1], lineno);
      for (std::size_t i = 2; i < toks.size(); ++i) {
        auto [key, value] = split_kv(toks[i], lineno);
        if (key == "bar")
          plan.coverage_bar = need_rational(value, lineno);
        else if (key == "exact")
          plan.exact = value == "1";
        else if (key == "satisfied")
          plan.satisfied = value == "1";
        else
          throw ParseError("unknown coverage field '" + key + "'", lineno);
      }
      have_coverage = true;
    } else if (kind == "witness") {
      if (toks.size() != 4)
        throw ParseError("expected 'witness <i> <center> <radius>'", lineno);
      BigInt idx = need_bigint(toks[1], lineno);
      if (idx < 1) throw ParseError("witness index must be >= 1", lineno);
      Witness w;
      w.param_index = static_cast<std::size_t>(idx.get_ui()) - 1;
      w.center = need_rational(toks[2], lineno);
      w.radius = need_rational(toks[3], lineno);
      plan.witnesses.push_back(std::move(w));
    } else {
      throw ParseError("unknown record '" + kind + "'", lineno);
    }
  }

  if (!have_header) throw ParseError("empty input", 1);
  if (!have_z || !have_eps || !have_delta || !have_times || !have_coverage)
    throw ParseError("plan is missing z, eps, delta, times or coverage", lineno);

  plan.K = 1;
  for (const auto& n : plan.times) plan.K *= n + 1;
  plan.ks.clear();
  for (const auto& n : plan.times) plan.ks.push_back(BigInt(plan.K / (n + 1)));
  return plan;
}

bool equivalent(const Certificate& a, const Certificate& b) {
  if (a.mode != b.mode || !profile_eq(a.profile, b.profile)) return false;
  if (a.parameters != b.parameters || a.z_parameters != b.z_parameters) return false;
  if (a.levels.size() != b.levels.size()) return false;
  for (std::size_t i = 0; i < a.levels.size(); ++i)
    if (!level_eq(a.levels[i], b.levels[i])) return false;
  if (a.cantor_levels.size() != b.cantor_levels.size()) return false;
  for (std::size_t i = 0; i < a.cantor_levels.size(); ++i) {
    if (!(a.cantor_levels[i].set == b.cantor_levels[i].set) ||
        a.cantor_levels[i].anchor_count != b.cantor_levels[i].anchor_count ||
        a.cantor_levels[i].L != b.cantor_levels[i].L)
      return false;
  }
  if (a.coverages != b.coverages || a.coverage_bars != b.coverage_bars ||
      a.deltas != b.deltas)
    return false;
  if (a.witnesses.size() != b.witnesses.size()) return false;
  for (std::size_t i = 0; i < a.witnesses.size(); ++i)
    if (!witness_list_eq(a.witnesses[i], b.witnesses[i])) return false;
  return true;
}

bool equivalent(const CoverPlan& a, const CoverPlan& b) {
  return a.z == b.z && a.ys == b.ys && a.eps == b.eps && a.delta == b.delta &&
         a.times == b.times && a.K == b.K && a.ks == b.ks && a.coverage == b.coverage &&
         a.coverage_bar == b.coverage_bar && a.exact == b.exact &&
         a.satisfied == b.satisfied && witness_list_eq(a.witnesses, b.witnesses);
}

}  // namespace inhomog
