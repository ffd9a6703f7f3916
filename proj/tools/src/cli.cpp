#include "freeprod/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "freeprod/errors.hpp"
#include "freeprod/free_moments.hpp"
#include "freeprod/freeness.hpp"
#include "freeprod/json_io.hpp"
#include "freeprod/monte_carlo.hpp"
#include "freeprod/report.hpp"
#include "freeprod/rng.hpp"

namespace freeprod::cli {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A file path, or inline JSON when the argument starts with '{'.
TracialAlgebra load_algebra(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') return algebra_from_json(arg);
  return algebra_from_json(read_file(arg));
}

std::vector<Rational> parse_weights(const std::string& text) {
  std::vector<Rational> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) w.push_back(Rational::parse(item));
  if (w.empty()) throw ParseError("no weights given");
  return w;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FREEPROD_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError(std::string("FREEPROD_SEED must be a nonnegative integer, got '") + env + "'");
  }
  return kDefaultSeed;
}

std::string complex_text(std::complex<double> z) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << z.real();
  if (std::abs(z.imag()) > 5e-7) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

struct Options {
  std::string left;
  std::string right;
  std::string format = "text";
  std::string engine = "closed";
  std::string alpha;
  std::string beta;
  std::vector<std::string> words;
  int haar_kmax = -1;
  int N = 1000;
  int trials = 50;
  int max_len = 8;
  int threads = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string csv;
  int m = 0;
  int n = 0;
  int l = 0;
  std::string weights;
  int samples = 100;
};

void add_format(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
}

void add_sides(CLI::App* app, Options& o) {
  app->add_option("--left", o.left, "Left algebra: JSON file or inline JSON")->required();
  app->add_option("--right", o.right, "Right algebra: JSON file or inline JSON")->required();
}

void add_monte_carlo(CLI::App* app, Options& o) {
  app->add_option("--N", o.N, "Ambient matrix dimension")->capture_default_str();
  app->add_option("--trials", o.trials, "Number of Haar rotations")->capture_default_str();
  app->add_option("--seed", o.seed, "Master seed (default 42, or FREEPROD_SEED)");
  app->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
}

void cmd_decompose(const Options& o, std::ostream& out) {
  const TracialAlgebra a = load_algebra(o.left);
  const TracialAlgebra b = load_algebra(o.right);
  Decomposition d = o.engine == "induction" ? decompose_by_induction(a, b) : decompose(a, b);
  for (const auto* alg : {&a, &b}) {
    for (const auto& w : alg->warnings()) d.notes.push_back(w);
  }
  out << (o.format == "json" ? decomposition_to_json(d) + "\n" : render_text(d));
}

void cmd_vn(const Options& o, std::ostream& out) {
  const VnDecomposition v = vn_decompose(load_algebra(o.left), load_algebra(o.right));
  out << (o.format == "json" ? vn_to_json(v) + "\n" : render_text(v));
}

void cmd_twoproj(const Options& o, std::ostream& out) {
  const TwoProjectionStructure s = two_projection_structure(Rational::parse(o.alpha), Rational::parse(o.beta));
  out << (o.format == "json" ? two_projection_to_json(s) + "\n" : render_text(s));
}

void cmd_moments(const Options& o, std::ostream& out) {
  const TracialAlgebra a = load_algebra(o.left);
  const TracialAlgebra b = load_algebra(o.right);
  WordEvaluator ev(a, b);
  json results = json::array();
  std::ostringstream text;
  for (const auto& word : o.words) {
    const FreeWord w = parse_word(word, a, b);
    const GaussianRational t = ev.trace(w);
    json r{{"word", word}, {"trace", json::array({t.re.str(), t.im.str()})}};
    text << "τ(" << word << ") = " << t.str() << "\n";
    if (o.haar_kmax >= 0) {
      if (w.letters.size() != 1) throw ParseError("--haar-kmax needs a word with a single letter");
      const Letter& l = w.letters[0];
      const bool haar = haar_check(element_moments(l.element, l.side == Side::Left ? a : b, o.haar_kmax), o.haar_kmax);
      r["haar"] = haar;
      text << "Haar moments up to |k| = " << o.haar_kmax << ": " << (haar ? "yes" : "no") << "\n";
    }
    results.push_back(std::move(r));
  }
  out << (o.format == "json" ? results.dump(2) + "\n" : text.str());
}

MonteCarloOptions mc_options(const Options& o) { return {o.N, o.trials, o.seed, o.threads}; }

void cmd_simulate_twoproj(const Options& o, std::ostream& out) {
  const Rational alpha = Rational::parse(o.alpha);
  const Rational beta = Rational::parse(o.beta);
  const SpectralSample s = two_projection_spectrum(alpha, beta, mc_options(o));
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw ParseError("cannot write '" + o.csv + "'");
    f << spectrum_csv(s);
  }
  if (o.format == "json") {
    out << spectrum_summary_to_json(s) << "\n";
    return;
  }
  out << render_text(s);
  const Rational meet = s.achieved_alpha + s.achieved_beta - Rational(1);
  out << "expected atom at 1: max(0, α + β − 1) = " << (meet.sign() > 0 ? meet : Rational(0)) << "\n";
}

void cmd_simulate_word(const Options& o, std::ostream& out) {
  const TracialAlgebra a = load_algebra(o.left);
  const TracialAlgebra b = load_algebra(o.right);
  std::vector<FreeWord> words;
  for (const auto& w : o.words) words.push_back(parse_word(w, a, b));
  const auto est = empirical_word_traces(a, b, words, mc_options(o));
  WordEvaluator ev(a, b);
  json results = json::array();
  std::ostringstream text;
  for (std::size_t k = 0; k < words.size(); ++k) {
    const GaussianRational exact = ev.trace(words[k]);
    const double diff = std::abs(est[k].mean - exact.to_complex());
    json r = json::parse(empirical_to_json(est[k]));
    r["word"] = o.words[k];
    r["exact"] = json::array({exact.re.str(), exact.im.str()});
    r["abs_diff"] = diff;
    results.push_back(std::move(r));
    text << "τ(" << o.words[k] << ") ≈ " << complex_text(est[k].mean) << " ± " << complex_text(est[k].std_error)
         << "  exact " << exact.str() << "  |diff| = " << complex_text(diff) << "\n";
  }
  if (o.format == "json") {
    out << results.dump(2) << "\n";
  } else {
    out << "N = " << o.N << ", trials = " << o.trials << ", seed = " << o.seed << "\n" << text.str();
  }
}

void cmd_verify_lemma31(const Options& o, std::ostream& out) {
  const std::vector<Rational> w = parse_weights(o.weights);
  const int m = o.m > 0 ? o.m : static_cast<int>(w.size());
  const FreenessReport r = verify_lemma31(m, o.n, w, o.l > 0 ? std::optional<int>(o.l) : std::nullopt, o.samples,
                                          o.max_len, o.seed);
  out << (o.format == "json" ? freeness_to_json(r) + "\n" : render_text(r));
}

void cmd_verify_corollary32(const Options& o, std::ostream& out) {
  const FreenessReport r = verify_corollary32(o.n, parse_weights(o.weights), o.samples, o.seed);
  out << (o.format == "json" ? freeness_to_json(r) + "\n" : render_text(r));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  try {
    o.seed = default_seed();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  CLI::App app{"Structure of reduced free products of finite-dimensional tracial C*-algebras", "freeprod"};
  app.require_subcommand(1);

  auto* decompose_cmd = app.add_subcommand("decompose", "Closed-form (or inductive) structure of A * B");
  add_sides(decompose_cmd, o);
  add_format(decompose_cmd, o);
  decompose_cmd->add_option("--engine", o.engine, "closed or induction")
      ->check(CLI::IsMember({"closed", "induction"}))
      ->capture_default_str();

  auto* vn_cmd = app.add_subcommand("vn", "von Neumann algebra free product");
  add_sides(vn_cmd, o);
  add_format(vn_cmd, o);

  auto* twoproj_cmd = app.add_subcommand("twoproj", "C*-algebra of two free projections");
  twoproj_cmd->add_option("--alpha", o.alpha, "τ(p), 1 > α ≥ β ≥ 1/2")->required();
  twoproj_cmd->add_option("--beta", o.beta, "τ(q)")->required();
  add_format(twoproj_cmd, o);

  auto* moments_cmd = app.add_subcommand("moments", "Exact trace of words");
  add_sides(moments_cmd, o);
  moments_cmd->add_option("--word", o.words, "Word such as \"L:p1 R:p1\" (repeatable)")->required();
  moments_cmd->add_option("--haar-kmax", o.haar_kmax, "Also check that the single letter has Haar moments");
  add_format(moments_cmd, o);

  auto* simulate_cmd = app.add_subcommand("simulate", "Random matrix Monte Carlo");
  simulate_cmd->require_subcommand(1);
  auto* sim_twoproj = simulate_cmd->add_subcommand("twoproj", "Spectrum of pqp for projections in generic position");
  sim_twoproj->add_option("--alpha", o.alpha, "τ(p)")->required();
  sim_twoproj->add_option("--beta", o.beta, "τ(q)")->required();
  sim_twoproj->add_option("--csv", o.csv, "Write all eigenvalues to this CSV file");
  add_monte_carlo(sim_twoproj, o);
  add_format(sim_twoproj, o);
  auto* sim_word = simulate_cmd->add_subcommand("word", "Empirical word traces against exact values");
  add_sides(sim_word, o);
  sim_word->add_option("--word", o.words, "Word (repeatable)")->required();
  add_monte_carlo(sim_word, o);
  add_format(sim_word, o);

  auto* verify_cmd = app.add_subcommand("verify", "Exact freeness checks in (C^m) * M_n");
  verify_cmd->require_subcommand(1);
  auto* lemma = verify_cmd->add_subcommand("lemma31", "τ(ω u^r) = 0 for random centered alternating words");
  lemma->add_option("--m", o.m, "Number of scalar summands (defaults to the number of weights)");
  lemma->add_option("--n", o.n, "Matrix size")->required();
  lemma->add_option("--weights", o.weights, "Comma-separated scalar weights, e.g. 1/2,1/2")->required();
  lemma->add_option("--l", o.l, "Divisor l of n with 1 < l < n (part ii)");
  lemma->add_option("--samples", o.samples, "Number of words")->capture_default_str();
  lemma->add_option("--max-len", o.max_len, "Maximal word length")->capture_default_str();
  lemma->add_option("--seed", o.seed, "Seed");
  add_format(lemma, o);
  auto* cor = verify_cmd->add_subcommand("corollary32", "τ(b u^k) = 0 for random products b");
  cor->add_option("--n", o.n, "Matrix size")->required();
  cor->add_option("--weights", o.weights, "Comma-separated scalar weights")->required();
  cor->add_option("--samples", o.samples, "Number of products")->capture_default_str();
  cor->add_option("--seed", o.seed, "Seed");
  add_format(cor, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*decompose_cmd) {
      cmd_decompose(o, out);
    } else if (*vn_cmd) {
      cmd_vn(o, out);
    } else if (*twoproj_cmd) {
      cmd_twoproj(o, out);
    } else if (*moments_cmd) {
      cmd_moments(o, out);
    } else if (*sim_twoproj) {
      cmd_simulate_twoproj(o, out);
    } else if (*sim_word) {
      cmd_simulate_word(o, out);
    } else if (*lemma) {
      cmd_verify_lemma31(o, out);
    } else if (*cor) {
      cmd_verify_corollary32(o, out);
    }
  } catch (const Error& e) {
    if (is_hypothesis_violation(e.kind()) || e.kind() == ErrorKind::AmbientTooSmall) {
      err << "hypothesis violated: " << e.what() << "\n";
      return kExitHypothesis;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace freeprod::cli
