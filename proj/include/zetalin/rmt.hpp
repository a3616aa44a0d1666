#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zetalin/stats.hpp"
#include "zetalin/test_function.hpp"

// Haar-random unitary matrices and the linear statistic
// Z_f(U) = sum_j F_N(theta_j), F_N(theta) = sum_k f((N / 2 pi)(theta + 2 pi k)).
namespace zetalin {

struct CueConfig {
  int N = 64;
  std::int64_t samples = 20000;
  std::uint64_t seed = 0;

  /// Throws InvalidParameter unless N >= 1 and samples >= 1.
  void validate() const;
};

struct EigenangleSet {
  std::vector<double> angles;  // principal arguments in (-pi, pi]
  double max_modulus_defect = 0.0;
};

/// Eigenangles of the index-th Haar unitary for cfg.seed. Gaussian matrix,
/// QR, columns rotated by the phases of diag(R), then a complex eigensolve.
/// Throws InvalidParameter for index >= samples and NumericalFailure when an
/// eigenvalue modulus is off by more than 1e-8 after one re-orthonormalization.
EigenangleSet sample_cue(const CueConfig& cfg, std::int64_t index);

/// F_N(theta) as a sum of integer shifts, truncated where the decay envelope
/// of f falls below 1e-12.
double periodize(const TestFunction& f, int N, double theta);

/// F_N(theta) from its Fourier series (1/N) sum_l f-hat(l/N) e^{i l theta},
/// a finite sum because f-hat has compact support.
double periodize_spectral(const TestFunction& f, int N, double theta);

/// Z_f = f-hat(0) + (2/N) sum_{l >= 1} f-hat(l/N) Re sum_j e^{i l theta_j}.
double zf(const TestFunction& f, const EigenangleSet& angles);

struct CueMomentReport {
  MomentReport report;  // errors are standard errors
  double variance_finite_n = 0.0;  // exact E (Z_f - E Z_f)^2 at this N
  int N = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  double max_modulus_defect = 0.0;
};

/// Monte-Carlo mean and centered moments of Z_f for m = 2..m_max with
/// delta-method standard errors; Gaussian predictions use a = 1.
CueMomentReport cue_moments(const TestFunction& f, const CueConfig& cfg, int m_max, int hist_bins = 0);

/// Several test functions over one shared set of samples.
std::vector<CueMomentReport> cue_moments(std::span<const TestFunction> fs, const CueConfig& cfg, int m_max,
                                         int hist_bins = 0);

/// Sample-level statistics shared with cue_moments; exposed for tests.
struct SampleMoments {
  double mean = 0.0;
  double mean_se = 0.0;
  std::vector<double> centered;     // index m
  std::vector<double> centered_se;  // index m
};
SampleMoments sample_moments(const std::vector<double>& values, int m_max);

}  // namespace zetalin
