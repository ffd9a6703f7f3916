#pragma once

#include <string>

#include "freeprod/freeness.hpp"
#include "freeprod/monte_carlo.hpp"
#include "freeprod/structure.hpp"

// Human-readable reports in the usual notation:
//
//   𝔄 = 𝔄₀^{2/5} ⊕ 𝕄₂^{3/5}; 𝔄₀ simple, unique trace
//   0 → 𝔄₀₀ → 𝔄₀ → 𝕄₂ → 0; 𝔄₀₀ simple, nonunital, unique trace
//   𝔄 simple with unique trace

namespace freeprod {

std::string render_text(const Decomposition& d);
std::string render_text(const VnDecomposition& v);
std::string render_text(const TwoProjectionStructure& s);
std::string render_text(const SpectralSample& s);
std::string render_text(const FreenessReport& r);

/// 𝕄 with a subscript, e.g. 𝕄₂ or 𝕄₁₂.
std::string matrix_symbol(int n);

}  // namespace freeprod
