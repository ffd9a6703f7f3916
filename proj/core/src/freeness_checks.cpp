#include "freeprod/errors.hpp"
#include "freeprod/freeness.hpp"
#include "freeprod/rng.hpp"

namespace freeprod {

namespace {

struct Model {
  TracialAlgebra left;
  TracialAlgebra right;
  int m;
  int n;
};

Model make_model(int n, const std::vector<Rational>& weights) {
  if (n < 2) throw HypothesisViolated("the matrix side needs n >= 2, got " + std::to_string(n));
  if (weights.empty()) throw HypothesisViolated("at least one scalar weight is required");
  std::vector<Summand> s;
  for (const auto& w : weights) s.push_back(Summand::matrix(1, w));
  try {
    return {mk_algebra(std::move(s)), mk_algebra({Summand::matrix(n, Rational(1))}), static_cast<int>(weights.size()),
            n};
  } catch (const Error& e) {
    throw HypothesisViolated(std::string("invalid scalar weights: ") + e.what());
  }
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// u^k in M_n as a right letter.
Letter shift_letter(const Model& md, int k) {
  const SideElement u = SideElement::canonical_unitary(md.right);
  return {Side::Right, u.pow(k)};
}

// Centered element sum_s c_s p_s - tau(.) with small random integers c_s.
SideElement random_centered_scalars(const Model& md, std::mt19937_64& rng, std::string& text) {
  while (true) {
    SideElement x = SideElement::zero(md.left);
    text = "(";
    for (int s = 1; s <= md.m; ++s) {
      const int c = uniform(rng, -3, 3);
      x += SideElement::projection(md.left, s) * GaussianRational(c);
      text += (s > 1 ? "," : "") + std::to_string(c);
    }
    text += ")";
    x -= SideElement::identity(md.left) * x.trace(md.left);
    if (!x.is_zero()) return x;
  }
}

// Centered sum_j diag_j u^{l j}, j = 0 .. n/l - 1 (only j = 0 without l).
SideElement random_centered_diagonal(const Model& md, int l, std::mt19937_64& rng, std::string& text) {
  const int blocks = l > 0 ? md.n / l : 1;
  const SideElement u = SideElement::canonical_unitary(md.right);
  while (true) {
    SideElement x = SideElement::zero(md.right);
    text = "(";
    for (int j = 0; j < blocks; ++j) {
      std::vector<GaussianRational> diag;
      for (int i = 0; i < md.n; ++i) {
        const int c = uniform(rng, -3, 3);
        diag.emplace_back(c);
        text += (i || j ? "," : "") + std::to_string(c);
      }
      SideElement d({ExactMatrix::diagonal(diag)});
      x += j == 0 ? d : d * u.pow(l * j);
    }
    text += ")";
    x -= SideElement::identity(md.right) * x.trace(md.right);
    if (!x.is_zero()) return x;
  }
}

}  // namespace

std::string FreenessReport::summary() const {
  return std::to_string(passed) + "/" + std::to_string(total) + " " + unit + ": τ = 0";
}

FreenessReport verify_lemma31(int m, int n, const std::vector<Rational>& weights, std::optional<int> l, int samples,
                              int max_len, std::uint64_t seed) {
  if (m != static_cast<int>(weights.size())) {
    throw HypothesisViolated("m = " + std::to_string(m) + " but " + std::to_string(weights.size()) +
                             " weights were given");
  }
  const Model md = make_model(n, weights);
  if (l && (*l <= 1 || *l >= n || n % *l != 0)) {
    throw HypothesisViolated("l must satisfy 1 < l < n and l | n, got l = " + std::to_string(*l) +
                             ", n = " + std::to_string(n));
  }
  if (max_len < 1 || 2 * static_cast<std::size_t>(max_len) > kMaxWordLetters) {
    throw HypothesisViolated("max_len must be between 1 and " + std::to_string(kMaxWordLetters / 2) + ", got " +
                             std::to_string(max_len));
  }
  if (samples < 0) throw HypothesisViolated("samples must be nonnegative");

  // Subalgebras 0 .. K-1 are the conjugates u^k C^m u^-k, subalgebra K is the
  // diagonal (plus powers of u^l in part (ii)).
  const int K = l ? *l : n;
  const int shifts = l ? *l : n;

  FreenessReport rep;
  rep.name = l ? "lemma31-ii" : "lemma31-i";
  std::mt19937_64 rng = stream_rng(seed, 0);
  WordEvaluator ev(md.left, md.right);

  for (int sample = 0; sample < samples; ++sample) {
    int len = 1;
    while (len < max_len && uniform(rng, 0, 1) == 1) ++len;

    FreeWord omega;
    std::string text;
    int prev = -1;
    for (int t = 0; t < len; ++t) {
      int g = uniform(rng, 0, prev < 0 ? K : K - 1);
      if (prev >= 0 && g >= prev) ++g;  // uniform over the other subalgebras
      prev = g;
      std::string coeffs;
      if (g == K) {
        omega.letters.push_back({Side::Right, random_centered_diagonal(md, l.value_or(0), rng, coeffs)});
        text += (t ? " " : "") + std::string("D") + coeffs;
      } else {
        const SideElement a = random_centered_scalars(md, rng, coeffs);
        if (g) omega.letters.push_back(shift_letter(md, g));
        omega.letters.push_back({Side::Left, a});
        if (g) omega.letters.push_back(shift_letter(md, -g));
        text += (t ? " " : "") + std::string("S") + std::to_string(g) + coeffs;
      }
    }
    if (rep.examples.size() < 5) rep.examples.push_back(text);

    bool ok = true;
    for (int r = 0; r < shifts; ++r) {
      FreeWord w = omega;
      if (r) w.letters.push_back(shift_letter(md, r));
      const GaussianRational v = ev.trace(w);
      ++rep.evaluations;
      if (!v.is_zero()) {
        ok = false;
        rep.failures.push_back({text, r, v});
      }
    }
    ++rep.total;
    if (ok) ++rep.passed;
  }
  return rep;
}

FreenessReport verify_corollary32(int n, const std::vector<Rational>& weights, int spanning_words,
                                  std::uint64_t seed) {
  const Model md = make_model(n, weights);
  if (spanning_words < 0) throw HypothesisViolated("spanning_words must be nonnegative");

  FreenessReport rep;
  rep.name = "corollary32";
  rep.unit = "products";
  std::mt19937_64 rng = stream_rng(seed, 0);
  WordEvaluator ev(md.left, md.right);

  FreeWord previous;
  for (int sample = 0; sample < spanning_words; ++sample) {
    const int factors = uniform(rng, 1, 4);
    FreeWord b;
    std::string text;
    for (int t = 0; t < factors; ++t) {
      if (uniform(rng, 0, 1) == 0) {
        const int k = uniform(rng, 0, n - 1);
        const int s = uniform(rng, 1, md.m);
        if (k) b.letters.push_back(shift_letter(md, k));
        b.letters.push_back({Side::Left, SideElement::projection(md.left, s)});
        if (k) b.letters.push_back(shift_letter(md, -k));
        text += (t ? "*" : "") + std::string("u^") + std::to_string(k) + " p" + std::to_string(s) + " u^-" +
                std::to_string(k);
      } else {
        const int i = uniform(rng, 1, n);
        b.letters.push_back({Side::Right, SideElement::matrix_unit(md.right, 1, i, i)});
        text += (t ? "*" : "") + std::string("e") + std::to_string(i) + std::to_string(i);
      }
    }
    if (rep.examples.size() < 5) rep.examples.push_back(text);

    // tau(b u^k) and, for the orthogonality of the u^k H_B, tau(b b'^* u^k)
    // against the previous sample b'.
    bool ok = true;
    for (int k = 1; k < n; ++k) {
      FreeWord w = b;
      w.letters.push_back(shift_letter(md, k));
      GaussianRational v = ev.trace(w);
      ++rep.evaluations;
      if (!v.is_zero()) {
        ok = false;
        rep.failures.push_back({text, k, v});
      }
      if (!previous.letters.empty()) {
        FreeWord inner = b * previous.adjoint();
        inner.letters.push_back(shift_letter(md, k));
        v = ev.trace(inner);
        ++rep.evaluations;
        if (!v.is_zero()) {
          ok = false;
          rep.failures.push_back({text + " against the previous product", k, v});
        }
      }
    }
    previous = std::move(b);
    ++rep.total;
    if (ok) ++rep.passed;
  }
  return rep;
}

bool haar_check(const std::map<int, GaussianRational>& moments, int k_max) {
  for (int k = -k_max; k <= k_max; ++k) {
    auto it = moments.find(k);
    if (it == moments.end()) return false;
    if (!(it->second == GaussianRational(k == 0 ? 1 : 0))) return false;
  }
  return true;
}

std::map<int, GaussianRational> element_moments(const SideElement& x, const TracialAlgebra& a, int k_max) {
  std::map<int, GaussianRational> moments;
  for (int k = -k_max; k <= k_max; ++k) moments[k] = x.pow(k).trace(a);
  return moments;
}

}  // namespace freeprod
