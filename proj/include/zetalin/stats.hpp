#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "zetalin/primes.hpp"
#include "zetalin/test_function.hpp"

// The averaging operator <W> = int W(tau) w((tau - T)/H) dtau / H and the
// moments of Nos(tau) it produces.
namespace zetalin {

struct WeightWindow {
  enum class Kind { fejer };
  Kind kind = Kind::fejer;

  /// w(x) = (sin(pi x) / (pi x))^2
  double value(double x) const;
  /// w-hat(u) = max(0, 1 - |u|)
  double ft(double u) const;
  double ft_support() const { return 1.0; }
  /// Mass of w outside [-K, K] is at most 2 / (pi^2 K).
  double tail_mass(double K) const;
};

struct AverageConfig {
  double T = 0.0;
  double a = 0.0;
  double H = 0.0;  // T^a
  double K = 50.0;
  double grid_step = 0.0;  // requested step; the grid uses step()
  WeightWindow weight;

  static constexpr double kMinK = 30.0;
  static constexpr std::int64_t kMaxPoints = std::int64_t{1} << 31;

  /// Largest admissible step, pi / (4 log T).
  static double max_step(double T);
  /// Validates T > e, 0 < a <= 1, K >= 30 and 0 < grid_step <= max_step(T)
  /// (a missing step selects max_step). Throws InvalidParameter, or
  /// LimitExceeded for grids beyond 2^31 points.
  static AverageConfig make(double T, double a, double K = 50.0, std::optional<double> grid_step = std::nullopt);

  /// The grid is tau_j = T + j * step() for |j| <= half_points(), with the
  /// step shrunk slightly so that the end points sit exactly at +-K H,
  /// where w has a double zero for integer K.
  std::int64_t half_points() const;
  double step() const;
  std::int64_t points() const { return 2 * half_points() + 1; }
};

struct AverageResult {
  double value = 0.0;
  double truncation_bound = 0.0;  // mass of w cut off by the window
  double weight_mass = 0.0;       // <1> on the truncated grid
};

/// Trapezoidal <W> over the truncated window. W is called concurrently and
/// must be thread-safe.
AverageResult average(const std::function<double(double)>& W, const AverageConfig& cfg);

/// (m - 1)!! sigma^m for even m, 0 for odd m.
double gaussian_moment(int m, double sigma);

/// alpha < 2a/m, strictly.
bool support_check(const TestFunction& f, int m, double a);

struct MomentEntry {
  int m = 0;
  double value = 0.0;  // centered moment
  double raw = 0.0;    // uncentered moment
  double error = 0.0;  // numerical error bound, or a standard error for Monte-Carlo
  double gaussian_prediction = 0.0;
  bool support_ok = false;
};

struct Histogram {
  std::vector<double> edges;
  std::vector<double> density;
  std::vector<double> gaussian_density;  // N(0, sigma^2) at bin centres
};

struct MomentReport {
  double mean = 0.0;
  double mean_error = 0.0;
  double mean_expected = 0.0;  // int f = f-hat(0)
  double sigma_sq_predicted = 0.0;
  std::vector<MomentEntry> moments;  // m = 2 .. m_max
  double estimated_numerical_error = 0.0;
  std::optional<Histogram> histogram;
};

struct ZetaMomentReport {
  MomentReport report;
  double nos_mean = 0.0;             // <Nos>
  double mean_term = 0.0;            // <N-bar_f> in leading form
  double mean_term_fluctuation = 0.0;  // sqrt of the weighted variance of the leading form
  double polar_bound = 0.0;          // bound on the polar terms at T, carried in mean_error
  double truncation_mass = 0.0;
  double weight_mass = 0.0;
  double sup_nos = 0.0;               // sum |weights|
  double diagonal = 0.0;              // diagonal_sum
  // <Nos^2> for the untruncated window, from the pair sum
  // 1/2 sum w_m w_n cos(T log(m/n)) w-hat(H log(m/n) / 2 pi); absent when
  // the pair count is too large.
  std::optional<double> second_moment_exact;
  std::int64_t grid_points = 0;
  double step = 0.0;
  std::size_t prime_terms = 0;
};

/// Moments of Nos(tau) over the averaging window for m = 2..m_max. Throws
/// InvalidParameter for m_max < 2 and TableTooSmall when the table does
/// not reach T^alpha. hist_bins > 0 adds a weighted histogram of Nos.
ZetaMomentReport moments(const TestFunction& f, const AverageConfig& cfg, int m_max, const PrimePowerTable& table,
                         int hist_bins = 0);

/// Centered moments from raw moments raw[j] = <X^j> (raw[0] = total mass).
std::vector<double> centered_from_raw(const std::vector<double>& raw);

}  // namespace zetalin
