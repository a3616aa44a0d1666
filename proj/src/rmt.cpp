#include "zetalin/rmt.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "zetalin/errors.hpp"
#include "zetalin/parallel.hpp"

namespace zetalin {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kModulusTolerance = 1e-8;
constexpr double kShiftCutoff = 1e-12;

using Matrix = Eigen::MatrixXcd;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Q from a QR factorization with each column turned by the phase of the
// matching diagonal entry of R, which makes the result exactly Haar.
Matrix haar_orthonormalize(const Matrix& z) {
  const Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(z.rows(), z.cols());
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    const std::complex<double> d = r(j, j);
    const double m = std::abs(d);
    if (m > 0.0) q.col(j) *= d / m;
  }
  return q;
}

double principal_angle(std::complex<double> z) {
  double a = std::arg(z);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

double sum_powers(const std::vector<double>& values, double center, int m) {
  std::vector<double> terms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) terms[i] = std::pow(values[i] - center, m);
  return parallel::pairwise_sum(terms);
}

}  // namespace

void CueConfig::validate() const {
  if (N < 1) throw InvalidParameter("cue: requires N >= 1");
  if (samples < 1) throw InvalidParameter("cue: requires samples >= 1");
}

EigenangleSet sample_cue(const CueConfig& cfg, std::int64_t index) {
  cfg.validate();
  if (index < 0 || index >= cfg.samples) throw InvalidParameter("sample_cue: index outside [0, samples)");
  std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(index))));
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const int n = cfg.N;
  Matrix z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = {re, im};
    }
  }
  Matrix u = haar_orthonormalize(z);
  EigenangleSet out;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const Eigen::ComplexEigenSolver<Matrix> solver(u, false);
    if (solver.info() != Eigen::Success) throw NumericalFailure("sample_cue: eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    double defect = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) defect = std::max(defect, std::abs(std::abs(ev(i)) - 1.0));
    if (defect <= kModulusTolerance) {
      out.angles.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) out.angles[static_cast<std::size_t>(i)] = principal_angle(ev(i));
      std::sort(out.angles.begin(), out.angles.end());
      out.max_modulus_defect = defect;
      return out;
    }
    u = haar_orthonormalize(u);
  }
  throw NumericalFailure("sample_cue: eigenvalue off the unit circle by more than 1e-8");
}

double periodize(const TestFunction& f, int N, double theta) {
  if (N < 1) throw InvalidParameter("periodize: requires N >= 1");
  const double scale = N / kTwoPi;
  const double radius = f.decay_radius(kShiftCutoff);
  // Reduce theta to (-pi, pi] so that shifts are centred on zero.
  const double t = theta - kTwoPi * std::round(theta / kTwoPi);
  std::vector<double> terms{f.value(scale * t)};
  for (long k = 1;; ++k) {
    const double xp = scale * (t + kTwoPi * static_cast<double>(k));
    const double xm = scale * (t - kTwoPi * static_cast<double>(k));
    const bool in_p = std::abs(xp) <= radius;
    const bool in_m = std::abs(xm) <= radius;
    if (!in_p && !in_m) break;
    if (in_p) terms.push_back(f.value(xp));
    if (in_m) terms.push_back(f.value(xm));
  }
  return parallel::pairwise_sum(terms);
}

double periodize_spectral(const TestFunction& f, int N, double theta) {
  if (N < 1) throw InvalidParameter("periodize: requires N >= 1");
  double s = f.ft(0.0);
  for (long l = 1; static_cast<double>(l) < f.alpha() * N; ++l) {
    s += 2.0 * f.ft(static_cast<double>(l) / N) * std::cos(static_cast<double>(l) * theta);
  }
  return s / N;
}

double zf(const TestFunction& f, const EigenangleSet& angles) {
  const auto n = static_cast<double>(angles.angles.size());
  if (angles.angles.empty()) return 0.0;
  // Sorted so the result does not depend on the order of the angles.
  std::vector<double> sorted = angles.angles;
  std::sort(sorted.begin(), sorted.end());
  double s = f.ft(0.0);
  for (long l = 1; static_cast<double>(l) < f.alpha() * n; ++l) {
    const double c = f.ft(static_cast<double>(l) / n);
    if (c == 0.0) continue;
    double trace = 0.0;
    for (double a : sorted) trace += std::cos(static_cast<double>(l) * a);
    s += 2.0 / n * c * trace;
  }
  return s;
}

SampleMoments sample_moments(const std::vector<double>& values, int m_max) {
  const auto n = static_cast<double>(values.size());
  if (values.size() < 2) throw InvalidParameter("sample_moments: needs at least two values");
  SampleMoments out;
  out.mean = parallel::pairwise_sum(values) / n;
  const int top = 2 * m_max;
  std::vector<double> mu(static_cast<std::size_t>(top) + 1, 0.0);
  mu[0] = 1.0;
  for (int m = 2; m <= top; ++m) mu[static_cast<std::size_t>(m)] = sum_powers(values, out.mean, m) / n;
  out.mean_se = std::sqrt(mu[2] / n);
  out.centered.assign(static_cast<std::size_t>(m_max) + 1, 0.0);
  out.centered_se.assign(static_cast<std::size_t>(m_max) + 1, 0.0);
  for (int m = 2; m <= m_max; ++m) {
    const auto um = static_cast<std::size_t>(m);
    out.centered[um] = mu[um];
    // Delta-method variance of the m-th sample central moment.
    const double var = mu[2 * um] - mu[um] * mu[um] - 2.0 * m * mu[um - 1] * mu[um + 1] +
                       static_cast<double>(m) * m * mu[2] * mu[um - 1] * mu[um - 1];
    out.centered_se[um] = std::sqrt(std::max(var, 0.0) / n);
  }
  return out;
}

namespace {

CueMomentReport summarize(const TestFunction& f, const CueConfig& cfg, int m_max, int hist_bins,
                          const std::vector<double>& values, double max_defect) {
  const std::size_t count = values.size();
  CueMomentReport out;
  out.N = cfg.N;
  out.samples = cfg.samples;
  out.seed = cfg.seed;
  out.max_modulus_defect = max_defect;
  for (long l = 1; static_cast<double>(l) < f.alpha() * cfg.N; ++l) {
    const double c = f.ft(static_cast<double>(l) / cfg.N);
    out.variance_finite_n += 2.0 * c * c * static_cast<double>(std::min<long>(l, cfg.N));
  }
  out.variance_finite_n /= static_cast<double>(cfg.N) * cfg.N;

  const SampleMoments sm = sample_moments(values, m_max);
  const double sigma_sq = f.sigma_sq();
  const double sigma = std::sqrt(sigma_sq);
  MomentReport& r = out.report;
  r.mean = sm.mean;
  r.mean_error = sm.mean_se;
  r.mean_expected = f.ft(0.0);
  r.sigma_sq_predicted = sigma_sq;
  double worst = sm.mean_se;
  for (int m = 2; m <= m_max; ++m) {
    const auto um = static_cast<std::size_t>(m);
    MomentEntry e;
    e.m = m;
    e.value = sm.centered[um];
    e.raw = sm.centered[um];
    e.error = sm.centered_se[um];
    e.gaussian_prediction = gaussian_moment(m, sigma);
    e.support_ok = support_check(f, m, 1.0);
    worst = std::max(worst, e.error);
    r.moments.push_back(e);
  }
  r.estimated_numerical_error = worst;

  if (hist_bins > 0) {
    const double radius = sigma > 0.0 ? 6.0 * sigma : 1.0;
    const double width = 2.0 * radius / hist_bins;
    Histogram hg;
    std::vector<double> counts(static_cast<std::size_t>(hist_bins), 0.0);
    for (double v : values) {
      const double pos = (v - r.mean_expected + radius) / width;
      if (pos >= 0.0 && pos < hist_bins) counts[static_cast<std::size_t>(pos)] += 1.0;
    }
    for (int i = 0; i <= hist_bins; ++i) hg.edges.push_back(-radius + i * width);
    for (int i = 0; i < hist_bins; ++i) {
      hg.density.push_back(counts[static_cast<std::size_t>(i)] / (static_cast<double>(count) * width));
      const double x = -radius + (i + 0.5) * width;
      hg.gaussian_density.push_back(sigma > 0.0 ? std::exp(-0.5 * x * x / sigma_sq) / (sigma * std::sqrt(kTwoPi)) : 0.0);
    }
    r.histogram = std::move(hg);
  }
  return out;
}

}  // namespace

std::vector<CueMomentReport> cue_moments(std::span<const TestFunction> fs, const CueConfig& cfg, int m_max,
                                         int hist_bins) {
  cfg.validate();
  if (m_max < 2) throw InvalidParameter("cue_moments: requires m_max >= 2");
  if (cfg.samples < 2) throw InvalidParameter("cue_moments: requires at least two samples");
  if (hist_bins < 0) throw InvalidParameter("cue_moments: histogram bins must be >= 0");
  const auto count = static_cast<std::size_t>(cfg.samples);
  std::vector<std::vector<double>> values(fs.size(), std::vector<double>(count));
  std::vector<double> defects(count);
  parallel::for_each_index(count, [&](std::size_t i) {
    const auto set = sample_cue(cfg, static_cast<std::int64_t>(i));
    for (std::size_t k = 0; k < fs.size(); ++k) values[k][i] = zf(fs[k], set);
    defects[i] = set.max_modulus_defect;
  });
  const double max_defect = *std::max_element(defects.begin(), defects.end());
  std::vector<CueMomentReport> out;
  for (std::size_t k = 0; k < fs.size(); ++k) out.push_back(summarize(fs[k], cfg, m_max, hist_bins, values[k], max_defect));
  return out;
}

CueMomentReport cue_moments(const TestFunction& f, const CueConfig& cfg, int m_max, int hist_bins) {
  return cue_moments(std::span<const TestFunction>(&f, 1), cfg, m_max, hist_bins).front();
}

}  // namespace zetalin
