#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "freeprod/free_moments.hpp"
#include "freeprod/matrix_model.hpp"

// Monte Carlo estimates in the finite models of matrix_model.hpp. Trial t
// draws its rotation from stream_rng(seed, t); per-trial results are reduced
// in trial order, so the output does not depend on the number of threads.

namespace freeprod {

struct MonteCarloOptions {
  int N = 1000;
  int trials = 50;
  std::uint64_t seed = 42;
  int threads = 1;
};

struct EmpiricalTrace {
  std::complex<double> mean;
  /// Standard error of the mean over trials, real and imaginary parts combined.
  double std_error = 0.0;
  int N = 0;
  int trials = 0;
};

EmpiricalTrace empirical_word_trace(const TracialAlgebra& a, const TracialAlgebra& b, const FreeWord& w,
                                    const MonteCarloOptions& opts);

/// Several words on the same rotations; cheaper than separate calls.
std::vector<EmpiricalTrace> empirical_word_traces(const TracialAlgebra& a, const TracialAlgebra& b,
                                                  const std::vector<FreeWord>& words, const MonteCarloOptions& opts);

/// Spectrum of p q p for p, q of traces alpha, beta in generic position.
struct SpectralSample {
  std::vector<double> eigenvalues;  // sorted, N * trials values in [0, 1]
  int N = 0;
  int trials = 0;
  std::uint64_t seed = 0;

  Rational achieved_alpha;  // rank P / N
  Rational achieved_beta;   // rank Q / N

  double atom1_mass = 0.0;       // eigenvalues > 1 - 1e-6
  double atom0_mass = 0.0;       // eigenvalues < 1e-6 on the range of p
  double continuous_mass = 0.0;  // eigenvalues in between
  double atom1_stderr = 0.0;
  double support_lo = 0.0;  // min / max of the in-between eigenvalues
  double support_hi = 0.0;
};

inline constexpr double kAtomThreshold = 1e-6;

SpectralSample two_projection_spectrum(const Rational& alpha, const Rational& beta, const MonteCarloOptions& opts);

/// One eigenvalue per line with a header, ready for plotting.
std::string spectrum_csv(const SpectralSample& s);

}  // namespace freeprod
