#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "freeprod/errors.hpp"
#include "freeprod/monte_carlo.hpp"
#include "freeprod/rng.hpp"
#include "trials.hpp"

namespace freeprod {

namespace {

struct TrialSpectrum {
  std::vector<double> on_p;  // eigenvalues of pqp on the range of p
};

}  // namespace

SpectralSample two_projection_spectrum(const Rational& alpha, const Rational& beta, const MonteCarloOptions& opts) {
  const Rational zero(0);
  const Rational one(1);
  if (!(alpha > zero && alpha < one && beta > zero && beta < one)) {
    throw DomainError("two_projection_spectrum needs 0 < alpha, beta < 1, got alpha = " + alpha.str() +
                      ", beta = " + beta.str());
  }
  if (opts.trials < 1) throw DomainError("trials must be positive, got " + std::to_string(opts.trials));

  auto pair = [](const Rational& w) {
    return mk_algebra({Summand::matrix(1, w), Summand::matrix(1, Rational(1) - w)});
  };
  const BlockLayout lp = realize(pair(alpha), opts.N);
  const BlockLayout lq = realize(pair(beta), opts.N);
  const int N = opts.N;
  const int rp = lp.multiplicities[0];
  const int rq = lq.multiplicities[0];

  // p = first rp coordinates, q = U (first rq coordinates) U^*. On the range
  // of p, pqp is V V^* with V the top-left rp x rq corner of U. When q is the
  // bigger half use the other columns instead: V V^* = 1 - V' V'^* with V'
  // the top-right rp x (N - rq) corner. Either way only a thin isometry is
  // needed, and the nonzero spectrum comes from the smaller Gram matrix.
  const bool flip = rq > N - rq;
  const int cols = flip ? N - rq : rq;
  std::vector<TrialSpectrum> per_trial(static_cast<std::size_t>(opts.trials));
  detail::for_each_trial(opts.trials, opts.threads, [&](int t) {
    std::mt19937_64 rng = stream_rng(opts.seed, static_cast<std::uint64_t>(t));
    const CMatrix v = haar_isometry(N, cols, rng).topRows(rp);
    const CMatrix g = rp <= cols ? CMatrix(v * v.adjoint()) : CMatrix(v.adjoint() * v);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
    std::vector<double>& out = per_trial[static_cast<std::size_t>(t)].on_p;
    out.assign(static_cast<std::size_t>(rp), flip ? 1.0 : 0.0);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const double mu = std::clamp(es.eigenvalues()(k), 0.0, 1.0);
      out[static_cast<std::size_t>(k)] = flip ? 1.0 - mu : mu;
    }
  });

  SpectralSample s;
  s.N = N;
  s.trials = opts.trials;
  s.seed = opts.seed;
  s.achieved_alpha = lp.achieved_weights[0];
  s.achieved_beta = lq.achieved_weights[0];
  s.eigenvalues.reserve(static_cast<std::size_t>(N) * static_cast<std::size_t>(opts.trials));

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::size_t n1 = 0;
  std::size_t n0 = 0;
  std::size_t nc = 0;
  std::vector<double> atom1_per_trial;
  for (const auto& tr : per_trial) {
    std::size_t ones = 0;
    for (double x : tr.on_p) {
      s.eigenvalues.push_back(x);
      if (x > 1.0 - kAtomThreshold) {
        ++ones;
      } else if (x < kAtomThreshold) {
        ++n0;
      } else {
        ++nc;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    }
    n1 += ones;
    atom1_per_trial.push_back(static_cast<double>(ones) / N);
    // pqp vanishes on the complement of p
    s.eigenvalues.insert(s.eigenvalues.end(), static_cast<std::size_t>(N - rp), 0.0);
  }
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());

  const double total = static_cast<double>(N) * opts.trials;
  s.atom1_mass = static_cast<double>(n1) / total;
  s.atom0_mass = static_cast<double>(n0) / total;
  s.continuous_mass = static_cast<double>(nc) / total;
  if (nc > 0) {
    s.support_lo = lo;
    s.support_hi = hi;
  }
  if (opts.trials > 1) {
    double var = 0.0;
    for (double x : atom1_per_trial) var += (x - s.atom1_mass) * (x - s.atom1_mass);
    var /= opts.trials - 1;
    s.atom1_stderr = std::sqrt(var / opts.trials);
  }
  return s;
}

std::string spectrum_csv(const SpectralSample& s) {
  std::ostringstream os;
  os.precision(17);
  os << "eigenvalue\n";
  for (double x : s.eigenvalues) os << x << '\n';
  return os.str();
}

}  // namespace freeprod
