#pragma once

#include <string>
#include <string_view>

#include "freeprod/freeness.hpp"
#include "freeprod/monte_carlo.hpp"
#include "freeprod/structure.hpp"

// JSON encodings. Weights and other exact numbers are strings "p/q"; a JSON
// integer is accepted for a weight, a JSON float is rejected. Every to_json
// has a matching from_json with from_json(to_json(x)) == x. Parse failures
// throw ParseError; invalid algebras throw the usual validation errors.

namespace freeprod {

/// {"summands":[{"kind":"matrix","n":2,"weight":"1/2"},{"kind":"diffuse","label":"A0","weight":"1/2"}]}
TracialAlgebra algebra_from_json(std::string_view text);
std::string algebra_to_json(const TracialAlgebra& a);

std::string decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(std::string_view text);

std::string vn_to_json(const VnDecomposition& v);
VnDecomposition vn_from_json(std::string_view text);

std::string two_projection_to_json(const TwoProjectionStructure& s);
TwoProjectionStructure two_projection_from_json(std::string_view text);

/// {"atom1_mass":..., "atom0_mass":..., "support":[a,b], "stderr":..., ...};
/// the eigenvalues themselves go to CSV, so they are not part of the summary.
std::string spectrum_summary_to_json(const SpectralSample& s);
SpectralSample spectrum_summary_from_json(std::string_view text);

std::string empirical_to_json(const EmpiricalTrace& e);
EmpiricalTrace empirical_from_json(std::string_view text);

std::string freeness_to_json(const FreenessReport& r);
FreenessReport freeness_from_json(std::string_view text);

}  // namespace freeprod
