#include "freeprod/json_io.hpp"

#include <nlohmann/json.hpp>

#include "freeprod/errors.hpp"

namespace freeprod {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kWitnessScope =
    "diffuse witnesses are reported for every summand projection f p_i and f q_j, not only f p_1 and f q_1";

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

template <class T>
T get(const json& j, const char* key) {
  const json& v = field(j, key);
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

Rational rational_of(const json& v, const char* what) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number_float()) {
    throw ParseError(std::string(what) + " must be an exact rational string such as \"1/3\", not a float");
  }
  throw ParseError(std::string(what) + " must be a rational string");
}

Rational rational_field(const json& j, const char* key) { return rational_of(field(j, key), key); }

json gaussian(const GaussianRational& g) { return json::array({g.re.str(), g.im.str()}); }

GaussianRational gaussian_of(const json& v) {
  if (!v.is_array() || v.size() != 2) throw ParseError("complex value must be [re, im]");
  return {rational_of(v[0], "real part"), rational_of(v[1], "imaginary part")};
}

json ref(const ProjectionRef& p) { return json::array({side_name(p.side), p.index}); }

ProjectionRef ref_of(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_number_integer()) {
    throw ParseError("projection must be [\"left\"|\"right\", index]");
  }
  const std::string s = v[0].get<std::string>();
  if (s != "left" && s != "right") throw ParseError("side must be \"left\" or \"right\", got \"" + s + "\"");
  return {s == "left" ? Side::Left : Side::Right, v[1].get<int>()};
}

json algebra_json(const TracialAlgebra& a) {
  json summands = json::array();
  for (const auto& s : a.summands()) {
    json e;
    if (s.is_diffuse()) {
      e["kind"] = "diffuse";
      e["label"] = s.label;
    } else {
      e["kind"] = "matrix";
      e["n"] = s.n;
    }
    e["weight"] = s.weight.str();
    summands.push_back(std::move(e));
  }
  return json{{"summands", std::move(summands)}};
}

TracialAlgebra algebra_of(const json& j) {
  const json& list = field(j, "summands");
  if (!list.is_array()) throw ParseError("'summands' must be an array");
  std::vector<Summand> summands;
  for (const auto& e : list) {
    const std::string kind = get<std::string>(e, "kind");
    const Rational w = rational_field(e, "weight");
    if (kind == "matrix") {
      summands.push_back(Summand::matrix(get<int>(e, "n"), w));
    } else if (kind == "diffuse") {
      summands.push_back(Summand::diffuse(e.contains("label") ? get<std::string>(e, "label") : "D", w));
    } else {
      throw ParseError("summand kind must be \"matrix\" or \"diffuse\", got \"" + kind + "\"");
    }
  }
  return mk_algebra(std::move(summands));
}

json blocks_json(const std::vector<AtomBlock>& blocks) {
  json out = json::array();
  for (const auto& b : blocks) out.push_back({{"i", b.i}, {"j", b.j}, {"N", b.N}, {"gamma", b.gamma.str()}});
  return out;
}

std::vector<AtomBlock> blocks_of(const json& v) {
  if (!v.is_array()) throw ParseError("'plus_blocks' must be an array");
  std::vector<AtomBlock> out;
  for (const auto& b : v) {
    out.push_back({get<int>(b, "i"), get<int>(b, "j"), get<int>(b, "N"), rational_field(b, "gamma"), AtomClass::Plus});
  }
  return out;
}

json kernel_json(const KernelReport& k) {
  return {{"simple", k.simple}, {"unital", k.unital}, {"unique_trace", k.unique_trace}};
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace

TracialAlgebra algebra_from_json(std::string_view text) { return algebra_of(parse_text(text)); }

std::string algebra_to_json(const TracialAlgebra& a) { return dump(algebra_json(a)); }

std::string decomposition_to_json(const Decomposition& d) {
  json j;
  json witnesses = json::array();
  for (const auto& w : d.factor.diffuse_witnesses) witnesses.push_back(ref(w));
  j["factor"] = {{"weight", d.factor.weight.str()},
                 {"simple", d.factor.simple},
                 {"unique_trace", d.factor.unique_trace},
                 {"unital", d.factor.unital},
                 {"diffuse_witnesses", std::move(witnesses)}};
  j["plus_blocks"] = blocks_json(d.plus_blocks);
  json maps = json::array();
  for (const auto& m : d.boundary_maps) maps.push_back({{"i", m.i}, {"j", m.j}, {"N", m.target_size}});
  j["boundary_maps"] = std::move(maps);
  j["kernel"] = d.kernel ? kernel_json(*d.kernel) : json(nullptr);
  json fullness = json::array();
  for (const auto& c : d.fullness) {
    json kernels = json::array();
    for (const auto& [i, jj] : c.kernels) kernels.push_back(json::array({i, jj}));
    fullness.push_back({{"projection", ref(c.projection)}, {"kernels", std::move(kernels)}});
  }
  j["fullness"] = std::move(fullness);
  j["regime"] = d.regime ? json(regime_name(*d.regime)) : json(nullptr);
  json whole = json::array();
  for (const auto& p : d.full_in_whole) whole.push_back(ref(p));
  j["full_in_whole"] = std::move(whole);
  j["passthrough"] = d.passthrough ? algebra_json(*d.passthrough) : json(nullptr);
  j["notes"] = d.notes;
  j["metadata"] = {{"witness_scope", kWitnessScope}};
  return dump(j);
}

Decomposition decomposition_from_json(std::string_view text) {
  const json j = parse_text(text);
  Decomposition d;
  const json& f = field(j, "factor");
  d.factor.weight = rational_field(f, "weight");
  d.factor.simple = get<bool>(f, "simple");
  d.factor.unique_trace = get<bool>(f, "unique_trace");
  d.factor.unital = get<bool>(f, "unital");
  for (const auto& w : field(f, "diffuse_witnesses")) d.factor.diffuse_witnesses.push_back(ref_of(w));
  d.plus_blocks = blocks_of(field(j, "plus_blocks"));
  for (const auto& m : field(j, "boundary_maps")) {
    d.boundary_maps.push_back({get<int>(m, "i"), get<int>(m, "j"), get<int>(m, "N")});
  }
  const json& k = field(j, "kernel");
  if (!k.is_null()) d.kernel = KernelReport{get<bool>(k, "simple"), get<bool>(k, "unital"), get<bool>(k, "unique_trace")};
  for (const auto& c : field(j, "fullness")) {
    FullnessClaim claim{ref_of(field(c, "projection")), {}};
    for (const auto& p : field(c, "kernels")) {
      if (!p.is_array() || p.size() != 2) throw ParseError("kernel entries must be [i, j]");
      claim.kernels.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    d.fullness.push_back(std::move(claim));
  }
  if (j.contains("regime") && !j["regime"].is_null()) {
    const std::string r = j["regime"].get<std::string>();
    if (r == "below") {
      d.regime = Regime::Below;
    } else if (r == "at") {
      d.regime = Regime::At;
    } else if (r == "above") {
      d.regime = Regime::Above;
    } else {
      throw ParseError("unknown regime \"" + r + "\"");
    }
  }
  if (j.contains("full_in_whole")) {
    for (const auto& p : j["full_in_whole"]) d.full_in_whole.push_back(ref_of(p));
  }
  if (j.contains("passthrough") && !j["passthrough"].is_null()) d.passthrough = algebra_of(j["passthrough"]);
  if (j.contains("notes")) d.notes = get<std::vector<std::string>>(j, "notes");
  return d;
}

std::string vn_to_json(const VnDecomposition& v) {
  json j;
  j["factor"] = {{"tag", v.factor_tag}, {"weight", v.factor_weight.str()}};
  j["plus_blocks"] = blocks_json(v.plus_blocks);
  return dump(j);
}

VnDecomposition vn_from_json(std::string_view text) {
  const json j = parse_text(text);
  VnDecomposition v;
  const json& f = field(j, "factor");
  v.factor_tag = get<std::string>(f, "tag");
  v.factor_weight = rational_field(f, "weight");
  v.plus_blocks = blocks_of(field(j, "plus_blocks"));
  return v;
}

std::string two_projection_to_json(const TwoProjectionStructure& s) {
  json j;
  j["case"] = two_projection_case_name(s.which);
  j["alpha"] = s.alpha.str();
  j["beta"] = s.beta.str();
  j["atom_p_not_q"] = s.atom_p_not_q.str();
  j["atom_p_and_q"] = s.atom_p_and_q.str();
  j["support"] = json::array({s.support_lo, s.support_hi});
  return dump(j);
}

TwoProjectionStructure two_projection_from_json(std::string_view text) {
  const json j = parse_text(text);
  TwoProjectionStructure s;
  const std::string c = get<std::string>(j, "case");
  if (c == "distinct") {
    s.which = TwoProjectionCase::Distinct;
  } else if (c == "equal_above_half") {
    s.which = TwoProjectionCase::EqualAboveHalf;
  } else if (c == "half") {
    s.which = TwoProjectionCase::Half;
  } else {
    throw ParseError("unknown two-projection case \"" + c + "\"");
  }
  s.alpha = rational_field(j, "alpha");
  s.beta = rational_field(j, "beta");
  s.atom_p_not_q = rational_field(j, "atom_p_not_q");
  s.atom_p_and_q = rational_field(j, "atom_p_and_q");
  const auto support = get<std::vector<double>>(j, "support");
  if (support.size() != 2) throw ParseError("support must be [a, b]");
  s.support_lo = support[0];
  s.support_hi = support[1];
  return s;
}

std::string spectrum_summary_to_json(const SpectralSample& s) {
  json j;
  j["atom1_mass"] = s.atom1_mass;
  j["atom0_mass"] = s.atom0_mass;
  j["continuous_mass"] = s.continuous_mass;
  j["support"] = json::array({s.support_lo, s.support_hi});
  j["stderr"] = s.atom1_stderr;
  j["N"] = s.N;
  j["trials"] = s.trials;
  j["seed"] = s.seed;
  j["achieved_alpha"] = s.achieved_alpha.str();
  j["achieved_beta"] = s.achieved_beta.str();
  j["atom_threshold"] = kAtomThreshold;
  return dump(j);
}

SpectralSample spectrum_summary_from_json(std::string_view text) {
  const json j = parse_text(text);
  SpectralSample s;
  s.atom1_mass = get<double>(j, "atom1_mass");
  s.atom0_mass = get<double>(j, "atom0_mass");
  s.continuous_mass = get<double>(j, "continuous_mass");
  const auto support = get<std::vector<double>>(j, "support");
  if (support.size() != 2) throw ParseError("support must be [a, b]");
  s.support_lo = support[0];
  s.support_hi = support[1];
  s.atom1_stderr = get<double>(j, "stderr");
  s.N = get<int>(j, "N");
  s.trials = get<int>(j, "trials");
  s.seed = get<std::uint64_t>(j, "seed");
  s.achieved_alpha = rational_field(j, "achieved_alpha");
  s.achieved_beta = rational_field(j, "achieved_beta");
  return s;
}

std::string empirical_to_json(const EmpiricalTrace& e) {
  json j;
  j["mean"] = json::array({e.mean.real(), e.mean.imag()});
  j["stderr"] = e.std_error;
  j["N"] = e.N;
  j["trials"] = e.trials;
  return dump(j);
}

EmpiricalTrace empirical_from_json(std::string_view text) {
  const json j = parse_text(text);
  EmpiricalTrace e;
  const auto mean = get<std::vector<double>>(j, "mean");
  if (mean.size() != 2) throw ParseError("mean must be [re, im]");
  e.mean = {mean[0], mean[1]};
  e.std_error = get<double>(j, "stderr");
  e.N = get<int>(j, "N");
  e.trials = get<int>(j, "trials");
  return e;
}

std::string freeness_to_json(const FreenessReport& r) {
  json j;
  j["name"] = r.name;
  j["unit"] = r.unit;
  j["total"] = r.total;
  j["passed"] = r.passed;
  j["evaluations"] = r.evaluations;
  j["summary"] = r.summary();
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"word", f.word}, {"shift", f.shift}, {"value", gaussian(f.value)}});
  j["failures"] = std::move(failures);
  j["examples"] = r.examples;
  return dump(j);
}

FreenessReport freeness_from_json(std::string_view text) {
  const json j = parse_text(text);
  FreenessReport r;
  r.name = get<std::string>(j, "name");
  r.unit = get<std::string>(j, "unit");
  r.total = get<int>(j, "total");
  r.passed = get<int>(j, "passed");
  r.evaluations = get<int>(j, "evaluations");
  for (const auto& f : field(j, "failures")) {
    r.failures.push_back({get<std::string>(f, "word"), get<int>(f, "shift"), gaussian_of(field(f, "value"))});
  }
  r.examples = get<std::vector<std::string>>(j, "examples");
  return r;
}

}  // namespace freeprod
