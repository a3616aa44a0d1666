#pragma once

#include <complex>

// Complex log-gamma and digamma, the archimedean density Omega(r), the
// Riemann-Siegel theta function and the smooth zero-counting function.
namespace zetalin::special {

using Complex = std::complex<double>;

/// Principal branch of log Gamma(s): the analytic continuation from the
/// positive real axis with a cut along the negative real axis. Recurrence
/// shifts s into the region where the Stirling series gives ~15 digits.
/// Throws PoleError at non-positive integers.
Complex log_gamma(Complex s);

/// Psi(s) = Gamma'(s)/Gamma(s). Throws PoleError at non-positive integers.
Complex digamma(Complex s);

/// Omega(r) = Re Psi(1/4 + i r/2) - log(pi). Even and real.
double omega(double r);

/// theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) log(pi). Uses the
/// asymptotic series for t >= 50 and the log-gamma path below.
double rs_theta(double t);
double rs_theta_log_gamma(double t);
double rs_theta_asymptotic(double t);
/// d theta / dt, used for Newton steps on Gram points.
double rs_theta_derivative(double t);

/// N-bar(T) = 1 + theta(T)/pi.
double mean_count(double T);
/// T/(2 pi) log(T/(2 pi e)) + 7/8.
double mean_count_asymptotic(double T);

}  // namespace zetalin::special
