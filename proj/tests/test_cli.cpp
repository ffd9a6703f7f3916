#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "freeprod/cli.hpp"

namespace {

const char* kC91 =
    R"({"summands":[{"kind":"matrix","n":1,"weight":"9/10"},{"kind":"matrix","n":1,"weight":"1/10"}]})";
const char* kC31 =
    R"({"summands":[{"kind":"matrix","n":1,"weight":"3/4"},{"kind":"matrix","n":1,"weight":"1/4"}]})";
const char* kC2 =
    R"({"summands":[{"kind":"matrix","n":1,"weight":"1/2"},{"kind":"matrix","n":1,"weight":"1/2"}]})";
const char* kM2 = R"({"summands":[{"kind":"matrix","n":2,"weight":"1"}]})";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = freeprod::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, DecomposeGoldenText) {
  const auto r = run({"decompose", "--left", kC91, "--right", kM2});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "𝔄 = 𝔄₀^{2/5} ⊕ 𝕄₂^{3/5}; 𝔄₀ simple, unique trace\n"
            "𝔄 simple: no, unique trace: no\n"
            "L₊ = {(1,1)}, L₀ = ∅\n"
            "  block (1,1): 𝕄₂ of weight 3/5\n"
            "𝔄₀: weight 2/5, unital, simple: yes, unique trace: yes\n"
            "diffuse abelian subalgebras supported on: f p₁, f p₂, f q₁\n"
            "f p₁ full in 𝔄₀\n"
            "f p₂ full in 𝔄₀\n"
            "f q₁ full in 𝔄₀\n");
}

TEST(Cli, DecomposeExactSequence) {
  const auto r = run({"decompose", "--left", kC31, "--right", kM2});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0 → 𝔄₀₀ → 𝔄₀ → 𝕄₂ → 0; 𝔄₀₀ simple, nonunital, unique trace"), std::string::npos);
  EXPECT_NE(r.out.find("L₀ = {(1,1)}"), std::string::npos);
  EXPECT_NE(r.out.find("f p₂ full in 𝔄₀ ∩ ker π(1,1)"), std::string::npos);
}

TEST(Cli, DecomposeJsonBothEngines) {
  const auto c = run({"decompose", "--left", kC91, "--right", kM2, "--format", "json"});
  const auto i = run({"decompose", "--left", kC91, "--right", kM2, "--format", "json", "--engine", "induction"});
  ASSERT_EQ(c.code, 0);
  ASSERT_EQ(i.code, 0);
  EXPECT_EQ(c.out, i.out);
  const auto j = nlohmann::json::parse(c.out);
  EXPECT_EQ(j["factor"]["weight"], "2/5");
  EXPECT_EQ(j["plus_blocks"][0]["gamma"], "3/5");
  EXPECT_EQ(j["plus_blocks"][0]["N"], 2);
}

TEST(Cli, ReadsFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "freeprod_cli_test";
  std::filesystem::create_directories(dir);
  const auto left = (dir / "left.json").string();
  std::ofstream(left) << kC91;
  const auto r = run({"decompose", "--left", left, "--right", kM2});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto missing = run({"decompose", "--left", (dir / "nope.json").string(), "--right", kM2});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("cannot read"), std::string::npos);
}

TEST(Cli, HypothesisViolationsExitOne) {
  const auto r = run({"decompose", "--left", kC2, "--right", kC2});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("twoproj"), std::string::npos);
  EXPECT_EQ(run({"twoproj", "--alpha", "1/3", "--beta", "1/2"}).code, 1);
  EXPECT_EQ(run({"verify", "lemma31", "--n", "4", "--l", "3", "--weights", "1/2,1/2"}).code, 1);
  EXPECT_EQ(run({"simulate", "twoproj", "--alpha", "1/2", "--beta", "1/2", "--N", "1", "--trials", "1"}).code, 1);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"decompose", "--left", kC91}).code, 2);
  EXPECT_EQ(run({"decompose", "--left", "{bad json", "--right", kM2}).code, 2);
  EXPECT_EQ(run({"twoproj", "--alpha", "0.75", "--beta", "1/2"}).code, 2);
  EXPECT_EQ(run({"decompose", "--left", kC91, "--right", kM2, "--format", "xml"}).code, 2);
  const auto w = run({"moments", "--left", kC2, "--right", kM2, "--word", "L:p1 R:"});
  EXPECT_EQ(w.code, 2);
  EXPECT_EQ(run({"decompose", "--left",
                 R"({"summands":[{"kind":"matrix","n":1,"weight":"1/2"}]})", "--right", kM2})
                .code,
            2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("decompose"), std::string::npos);
  EXPECT_EQ(run({"simulate", "twoproj", "--help"}).code, 0);
}

TEST(Cli, TwoProjGolden) {
  const auto r = run({"twoproj", "--alpha", "3/4", "--beta", "1/2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "C*(p, q) with τ(p) = 3/4, τ(q) = 1/2 (case: distinct)\n"
            "atom p ∧ (1 − q): 1/4\n"
            "atom p ∧ q: 1/4\n"
            "continuous part: 𝕄₂-valued over [0.066987, 0.933013]\n");
}

TEST(Cli, VnGolden) {
  const auto r = run({"vn", "--left", kC91, "--right", kM2});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "𝔄'' = L(F_t)^{2/5} ⊕ 𝕄₂^{3/5}\nt is not computed\n");
}

TEST(Cli, Moments) {
  const auto r = run({"moments", "--left", kC2, "--right", kC2, "--word", "L:p1 R:p1 L:p1 R:p1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "τ(L:p1 R:p1 L:p1 R:p1) = 3/16\n");
  const auto h = run({"moments", "--left", kC2, "--right", kM2, "--word", "R:u", "--haar-kmax", "1"});
  EXPECT_NE(h.out.find("Haar moments up to |k| = 1: yes"), std::string::npos);
}

TEST(Cli, VerifyCommands) {
  const auto l = run({"verify", "lemma31", "--n", "3", "--weights", "1/3,2/3", "--samples", "20"});
  ASSERT_EQ(l.code, 0) << l.err;
  EXPECT_EQ(l.out.substr(0, l.out.find('\n')), "20/20 words: τ = 0");
  const auto c = run({"verify", "corollary32", "--n", "2", "--weights", "1/2,1/2", "--samples", "20", "--format",
                      "json"});
  ASSERT_EQ(c.code, 0) << c.err;
  const auto j = nlohmann::json::parse(c.out);
  EXPECT_EQ(j["passed"], 20);
}

TEST(Cli, SimulateIsSeeded) {
  const std::vector<std::string> args{"simulate", "twoproj", "--alpha", "7/10", "--beta", "8/10", "--N", "60",
                                      "--trials",  "3",       "--seed",  "5",    "--format", "json"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["seed"], 5);
}

TEST(Cli, SeedFromEnvironment) {
  const std::vector<std::string> args{"simulate", "word", "--left", kC2, "--right", kC2, "--word", "L:p1 R:p1",
                                      "--N",      "40",   "--trials", "2", "--format", "json"};
  ::setenv("FREEPROD_SEED", "17", 1);
  const auto env = run(args);
  ::unsetenv("FREEPROD_SEED");
  auto explicit_args = args;
  explicit_args.insert(explicit_args.end(), {"--seed", "17"});
  const auto expl = run(explicit_args);
  ASSERT_EQ(env.code, 0) << env.err;
  EXPECT_EQ(env.out, expl.out);
  EXPECT_NE(env.out, run(args).out);
  ::setenv("FREEPROD_SEED", "x", 1);
  EXPECT_EQ(run(args).code, 2);
  ::unsetenv("FREEPROD_SEED");
}

TEST(Cli, SimulateWordReportsExact) {
  const auto r = run({"simulate", "word", "--left", kC2, "--right", kC2, "--word", "L:p1 R:p1", "--N", "100",
                      "--trials", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("exact 1/4"), std::string::npos) << r.out;
}

TEST(Cli, CsvOutput) {
  const auto path = (std::filesystem::temp_directory_path() / "freeprod_spectrum.csv").string();
  const auto r = run({"simulate", "twoproj", "--alpha", "1/2", "--beta", "1/2", "--N", "20", "--trials", "2",
                      "--csv", path});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "eigenvalue");
  int lines = 0;
  for (std::string s; std::getline(in, s);) ++lines;
  EXPECT_EQ(lines, 40);
}
