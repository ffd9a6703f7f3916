#include "freeprod/report.hpp"

#include <cstdio>
#include <sstream>

namespace freeprod {

namespace {

std::string subscript(int k) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  const std::string s = std::to_string(k);
  std::string out;
  for (char c : s) out += c == '-' ? "₋" : digits[c - '0'];
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string projection_name(const ProjectionRef& p) {
  return std::string(p.side == Side::Left ? "p" : "q") + subscript(p.index);
}

std::string weighted(const std::string& symbol, const Rational& w) { return symbol + "^{" + w.str() + "}"; }

std::string pair_list(const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.empty()) return "∅";
  std::string s = "{";
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (k) s += ", ";
    s += "(" + std::to_string(pairs[k].first) + "," + std::to_string(pairs[k].second) + ")";
  }
  return s + "}";
}

std::string algebra_symbolic(const TracialAlgebra& a) {
  std::string s;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Summand& x = a.summands()[k];
    if (k) s += " ⊕ ";
    if (x.is_diffuse()) {
      s += weighted(x.label.empty() ? "D" : x.label, x.weight);
    } else if (x.n == 1) {
      s += weighted("ℂ", x.weight);
    } else {
      s += weighted(matrix_symbol(x.n), x.weight);
    }
  }
  return s;
}

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

std::string matrix_symbol(int n) { return "𝕄" + subscript(n); }

std::string render_text(const Decomposition& d) {
  std::ostringstream os;
  const bool exact_sequence = !d.boundary_maps.empty();

  if (d.passthrough) {
    os << "𝔄 = " << algebra_symbolic(*d.passthrough) << "\n";
    os << "𝔄 simple: " << yes_no(d.factor.simple) << ", unique trace: " << yes_no(d.factor.unique_trace) << "\n";
  } else {
    if (d.plus_blocks.empty() && !exact_sequence) {
      os << "𝔄 simple with unique trace\n";
    } else {
      os << "𝔄 = " << weighted("𝔄₀", d.factor.weight);
      for (const auto& b : d.plus_blocks) os << " ⊕ " << weighted(matrix_symbol(b.N), b.gamma);
      if (!exact_sequence) os << "; 𝔄₀ simple, unique trace";
      os << "\n";
    }
    if (exact_sequence) {
      os << "0 → 𝔄₀₀ → 𝔄₀ → ";
      for (std::size_t k = 0; k < d.boundary_maps.size(); ++k) {
        os << (k ? " ⊕ " : "") << matrix_symbol(d.boundary_maps[k].target_size);
      }
      os << " → 0; 𝔄₀₀ " << (d.kernel && d.kernel->simple ? "simple" : "not simple") << ", "
         << (d.kernel && !d.kernel->unital ? "nonunital" : "unital") << ", "
         << (d.kernel && d.kernel->unique_trace ? "unique trace" : "several traces") << "\n";
    }
    const bool whole = d.plus_blocks.empty() && !exact_sequence;
    os << "𝔄 simple: " << yes_no(whole) << ", unique trace: " << yes_no(whole) << "\n";

    std::vector<std::pair<int, int>> plus;
    std::vector<std::pair<int, int>> zero;
    for (const auto& b : d.plus_blocks) plus.emplace_back(b.i, b.j);
    for (const auto& m : d.boundary_maps) zero.emplace_back(m.i, m.j);
    os << "L₊ = " << pair_list(plus) << ", L₀ = " << pair_list(zero) << "\n";
    for (const auto& b : d.plus_blocks) {
      os << "  block (" << b.i << "," << b.j << "): " << matrix_symbol(b.N) << " of weight " << b.gamma << "\n";
    }
    os << "𝔄₀: weight " << d.factor.weight << ", " << (d.factor.unital ? "unital" : "nonunital")
       << ", simple: " << yes_no(d.factor.simple) << ", unique trace: " << yes_no(d.factor.unique_trace) << "\n";
  }

  if (!d.factor.diffuse_witnesses.empty()) {
    os << "diffuse abelian subalgebras supported on:";
    for (std::size_t k = 0; k < d.factor.diffuse_witnesses.size(); ++k) {
      os << (k ? ", " : " ") << "f " << projection_name(d.factor.diffuse_witnesses[k]);
    }
    os << "\n";
  }
  for (const auto& c : d.fullness) {
    os << "f " << projection_name(c.projection) << " full in 𝔄₀";
    for (const auto& [i, j] : c.kernels) os << " ∩ ker π(" << i << "," << j << ")";
    os << "\n";
  }
  if (d.regime) {
    os << "case: " << regime_name(*d.regime) << " (largest scalar weight against 1 − 1/n²)\n";
  }
  for (const auto& p : d.full_in_whole) os << projection_name(p) << " full in 𝔄\n";
  for (const auto& n : d.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string render_text(const VnDecomposition& v) {
  std::ostringstream os;
  os << "𝔄'' = " << weighted(v.factor_tag, v.factor_weight);
  for (const auto& b : v.plus_blocks) os << " ⊕ " << weighted(matrix_symbol(b.N), b.gamma);
  os << "\n";
  os << "t is not computed\n";
  return os.str();
}

std::string render_text(const TwoProjectionStructure& s) {
  std::ostringstream os;
  os << "C*(p, q) with τ(p) = " << s.alpha << ", τ(q) = " << s.beta << " (case: " << two_projection_case_name(s.which)
     << ")\n";
  os << "atom p ∧ (1 − q): " << s.atom_p_not_q << "\n";
  os << "atom p ∧ q: " << s.atom_p_and_q << "\n";
  os << "continuous part: 𝕄₂-valued over [" << fixed(s.support_lo) << ", " << fixed(s.support_hi) << "]\n";
  return os.str();
}

std::string render_text(const SpectralSample& s) {
  std::ostringstream os;
  os << "spectrum of pqp, N = " << s.N << ", trials = " << s.trials << ", seed = " << s.seed << "\n";
  os << "achieved τ(p) = " << s.achieved_alpha << ", τ(q) = " << s.achieved_beta << "\n";
  os << "atom at 1: " << fixed(s.atom1_mass) << " ± " << fixed(s.atom1_stderr) << "\n";
  os << "atom at 0 on p: " << fixed(s.atom0_mass) << "\n";
  os << "continuous mass: " << fixed(s.continuous_mass) << "\n";
  os << "support: [" << fixed(s.support_lo) << ", " << fixed(s.support_hi) << "]\n";
  return os.str();
}

std::string render_text(const FreenessReport& r) {
  std::ostringstream os;
  os << r.summary() << "\n";
  os << r.evaluations << " traces evaluated exactly\n";
  for (const auto& e : r.examples) os << "  sample: " << e << "\n";
  for (const auto& f : r.failures) os << "  FAIL r = " << f.shift << ": " << f.word << " gives " << f.value.str() << "\n";
  return os.str();
}

}  // namespace freeprod
