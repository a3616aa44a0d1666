#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "zetalin/primes.hpp"
#include "zetalin/test_function.hpp"
#include "zetalin/zeros.hpp"

// The three faces of N_f(tau) = sum_j f((log T / 2 pi)(gamma_j - tau)):
// the zero sum itself, the archimedean mean term and the prime sum.
namespace zetalin {

struct Estimate {
  double value = 0.0;
  double error_bound = 0.0;
};

struct LinStatSample {
  double tau = 0.0;
  std::optional<double> direct;
  double mean_part = 0.0;
  double osc_part = 0.0;
  std::optional<double> residual;  // direct - mean_part - osc_part
  double polar_part = 0.0;         // included in mean_part
  double error_estimate = 0.0;
  double direct_radius = 0.0;      // zero window half-width used, in t units
};

inline constexpr double kDefaultTailTarget = 1e-6;

/// Half-width (in t) of the zero window needed around tau so that the
/// zeros left out contribute at most `tail_target`.
double direct_radius(const TestFunction& f, double tau, double T, double tail_target = kDefaultTailTarget);

/// Zero sum over gamma_{+-j}, truncated at direct_radius; the error bound is
/// the tail bound. Throws CoverageError when zs does not cover the window
/// (the strip |t| < 14.1347 counts as covered) and DomainError for T <= e.
Estimate nf_direct(const TestFunction& f, double tau, double T, const ZeroSet& zs,
                   double tail_target = kDefaultTailTarget);

/// f((log T/2 pi)(i/2 - tau)) + f((log T/2 pi)(-i/2 - tau)). The imaginary
/// parts must cancel to 1e-10 or NumericalFailure is thrown.
double polar_terms(const TestFunction& f, double tau, double T);

/// Bound on |polar_terms| from the decay envelope, grown by the factor
/// T^{alpha/2} that the imaginary shift costs. Cheap at any height.
double polar_terms_bound(const TestFunction& f, double tau, double T);

/// (1/log T) int f(x) Omega(tau + 2 pi x / log T) dx plus the polar terms.
/// The Omega integral is evaluated on the Fourier side, where it becomes a
/// finite integral over the support of f-hat; the error bound compares two
/// quadrature orders.
Estimate nf_mean(const TestFunction& f, double tau, double T);

/// The same Omega integral by quadrature in x over |x| <= radius (without
/// the polar terms). Slow at large radius; kept as an independent route.
Estimate omega_integral_spatial(const TestFunction& f, double tau, double T, double radius);

/// Leading form Omega(tau) f-hat(0) / log T of the Omega integral.
double mean_leading(const TestFunction& f, double tau, double T);

/// Nos(tau) = sum_n weight_n cos(tau log n) with
/// weight_n = -(2 / log T) Lambda(n) n^{-1/2} f-hat(log n / log T).
/// Built once per (f, T) and evaluated many times.
class OscillatorySum {
 public:
  /// Throws TableTooSmall when the table does not reach T^alpha.
  OscillatorySum(const TestFunction& f, double T, const PrimePowerTable& table);

  double operator()(double tau) const;

  /// out[j] = Nos(center + offset0 + j * step) for j < out.size(). Phases
  /// are anchored at `center` in extended precision so that large heights
  /// lose no accuracy.
  void evaluate_grid(double center, double offset0, double step, std::span<double> out) const;

  std::size_t size() const { return log_n_.size(); }
  std::span<const double> weights() const { return weight_; }
  std::span<const double> log_n() const { return log_n_; }
  /// sum |weight_n|, a bound for sup |Nos|.
  double abs_weight_sum() const { return abs_sum_; }

 private:
  std::vector<double> log_n_;
  std::vector<long double> log_n_ext_;
  std::vector<double> weight_;
  double abs_sum_ = 0.0;
};

double nf_osc(const TestFunction& f, double tau, double T, const PrimePowerTable& table);

LinStatSample check_explicit_identity(const TestFunction& f, double tau, double T, const ZeroSet& zs,
                                      const PrimePowerTable& table, double tail_target = kDefaultTailTarget);

/// Identity check over many tau, evaluated in parallel.
std::vector<LinStatSample> check_explicit_identity(const TestFunction& f, std::span<const double> taus, double T,
                                                   const ZeroSet& zs, const PrimePowerTable& table,
                                                   double tail_target = kDefaultTailTarget);

}  // namespace zetalin
