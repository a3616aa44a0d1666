#include "zetalin/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "zetalin/errors.hpp"
#include "zetalin/parallel.hpp"
#include "zetalin/quadrature.hpp"
#include "zetalin/special.hpp"

namespace zetalin {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double checked_log_height(double T) {
  if (!(T > std::numbers::e) || !std::isfinite(T)) throw DomainError("explicit formula: requires T > e");
  return std::log(T);
}

// Zeros per unit of x near height h, with a little slack for local
// clustering.
double zero_density(double h, double L) { return (std::log(std::max(h, kTwoPi) / kTwoPi) + 1.0) / L; }

// Fourier-side Omega integral. With
//   Re Psi(1/4 + ir/2) = int_0^inf (e^{-t}/t - e^{-t/4} cos(rt/2) / (1 - e^{-t})) dt
// and r = tau + 2 pi x / L, integrating against f(x) dx turns cos(rt/2) into
// cos(tau t/2) f-hat(t / 2L), which vanishes for t >= 2 L alpha.
double omega_integral_fourier(const TestFunction& f, double tau, double L, int order) {
  const double f0 = f.ft(0.0);
  const double upper = 2.0 * L * f.alpha();
  const double h = std::min(0.25, 4.0 * kPi / std::max(std::abs(tau), 1.0));
  const int panels = static_cast<int>(std::ceil(upper / h));
  const auto& rule = quad::gauss_legendre(order);
  const auto integrand = [&](double t) {
    const double damp = std::exp(-0.25 * t) / -std::expm1(-t);
    return f0 * std::exp(-t) / t - damp * std::cos(0.5 * tau * t) * f.ft(t / (2.0 * L));
  };
  const double width = upper / panels;
  std::vector<double> parts(static_cast<std::size_t>(panels));
  for (int p = 0; p < panels; ++p) {
    const double a = p * width;
    parts[static_cast<std::size_t>(p)] = quad::integrate(integrand, a, a + width, 1, rule);
  }
  const double e1 = -std::expint(-upper);  // int_upper^inf e^{-t}/t dt
  return (parallel::pairwise_sum(parts) + f0 * e1 - f0 * std::log(kPi)) / L;
}

}  // namespace

double direct_radius(const TestFunction& f, double tau, double T, double tail_target) {
  const double L = checked_log_height(T);
  if (!(tail_target > 0.0)) throw InvalidParameter("direct_radius: tail target must be > 0");
  const double per_t = L / kTwoPi;
  double radius_t = 1000.0;
  double radius_x = 0.0;
  for (int i = 0; i < 3; ++i) {
    radius_x = f.tail_radius(tail_target, zero_density(std::abs(tau) + radius_t, L));
    radius_t = radius_x / per_t;
  }
  return radius_t;
}

Estimate nf_direct(const TestFunction& f, double tau, double T, const ZeroSet& zs, double tail_target) {
  const double L = checked_log_height(T);
  const double per_t = L / kTwoPi;
  const double radius_t = direct_radius(f, tau, T, tail_target);
  const double lo = tau - radius_t;
  const double hi = tau + radius_t;

  // Window in terms of positive ordinates, covering reflected zeros too.
  const double need_hi = std::max(std::abs(lo), std::abs(hi));
  const double need_lo = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
  const bool top_ok = need_hi <= std::max(zs.t_max, kZeroFreeBelow);
  const bool bottom_ok = need_lo >= zs.t_min || zs.t_min <= kZeroFreeBelow || need_hi <= kZeroFreeBelow;
  if (!top_ok || !bottom_ok || (zs.ordinates.empty() && need_hi > kZeroFreeBelow && zs.t_max <= zs.t_min)) {
    throw CoverageError("nf_direct: zero set [" + std::to_string(zs.t_min) + ", " + std::to_string(zs.t_max) +
                        "] does not cover the window [" + std::to_string(need_lo) + ", " + std::to_string(need_hi) +
                        "]");
  }

  std::vector<double> terms;
  const auto first = std::lower_bound(zs.ordinates.begin(), zs.ordinates.end(), need_lo);
  const auto last = std::upper_bound(zs.ordinates.begin(), zs.ordinates.end(), need_hi);
  for (auto it = first; it != last; ++it) {
    const double g = *it;
    if (g >= lo && g <= hi) terms.push_back(f.value(per_t * (g - tau)));
    if (-g >= lo && -g <= hi) terms.push_back(f.value(per_t * (-g - tau)));
  }
  const double radius_x = radius_t * per_t;
  const double tail = f.tail_sum_bound(radius_x, zero_density(std::abs(tau) + radius_t, L));
  return {parallel::pairwise_sum(terms), tail};
}

double polar_terms(const TestFunction& f, double tau, double T) {
  const double L = checked_log_height(T);
  const double per_t = L / kTwoPi;
  const std::complex<double> up = f.value(std::complex<double>(-per_t * tau, 0.5 * per_t));
  const std::complex<double> down = f.value(std::complex<double>(-per_t * tau, -0.5 * per_t));
  const std::complex<double> sum = up + down;
  if (std::abs(sum.imag()) > 1e-10 + 1e-12 * std::abs(up)) {
    throw NumericalFailure("polar terms: imaginary parts failed to cancel");
  }
  return sum.real();
}

double polar_terms_bound(const TestFunction& f, double tau, double T) {
  const double L = checked_log_height(T);
  const double per_t = L / kTwoPi;
  const double modulus = std::hypot(per_t * tau, 0.5 * per_t);
  return 2.0 * std::exp(0.5 * f.alpha() * L) * f.envelope(modulus);
}

Estimate nf_mean(const TestFunction& f, double tau, double T) {
  const double L = checked_log_height(T);
  if (f.scale() == 0.0) return {0.0, 0.0};
  const double coarse = omega_integral_fourier(f, tau, L, 16);
  const double fine = omega_integral_fourier(f, tau, L, 24);
  const double polar = polar_terms(f, tau, T);
  const double roundoff = 1e-15 * (std::abs(f.ft(0.0)) * (1.0 + std::log1p(std::abs(tau))) + std::abs(polar));
  return {fine + polar, std::abs(fine - coarse) + roundoff};
}

Estimate omega_integral_spatial(const TestFunction& f, double tau, double T, double radius) {
  const double L = checked_log_height(T);
  if (!(radius > 0.0)) throw InvalidParameter("omega_integral_spatial: radius must be > 0");
  const double step = kTwoPi / L;
  const double omega0 = special::omega(tau);
  // Even part of Omega about tau, minus Omega(tau): f-hat(0) carries the
  // constant exactly.
  const auto integrand = [&](double x) {
    const double d = 0.5 * (special::omega(tau + step * x) + special::omega(tau - step * x)) - omega0;
    return f.value(x) * d;
  };
  const double panel = std::min(0.25 / f.alpha(), 0.5);
  const int panels = static_cast<int>(std::ceil(radius / panel));
  const auto& rule = quad::gauss_legendre(16);
  std::vector<double> parts(static_cast<std::size_t>(panels));
  parallel::for_each_index(parts.size(), [&](std::size_t p) {
    const double a = radius * static_cast<double>(p) / panels;
    const double b = radius * static_cast<double>(p + 1) / panels;
    parts[p] = quad::integrate(integrand, a, b, 1, rule);
  });
  const double body = (omega0 * f.ft(0.0) + 2.0 * parallel::pairwise_sum(parts)) / L;
  // |D(x)| <= log(1 + step |x|) + 4 bounds the tail integrand.
  const double p = f.envelope_exponent();
  const double tail = 2.0 / L * f.envelope_constant() * std::pow(radius, 1.0 - p) / (p - 1.0) *
                      (std::log1p(step * radius) + 4.0 + 1.0 / (p - 1.0));
  return {body, tail};
}

double mean_leading(const TestFunction& f, double tau, double T) {
  const double L = checked_log_height(T);
  return special::omega(tau) * f.ft(0.0) / L;
}

OscillatorySum::OscillatorySum(const TestFunction& f, double T, const PrimePowerTable& table) {
  const double L = checked_log_height(T);
  table.require_covers(f.alpha(), T);
  const double cutoff = f.alpha() * L;
  for (const auto& pp : table.entries()) {
    if (pp.log_n >= cutoff) break;
    const double w = -2.0 / L * pp.lambda / std::sqrt(static_cast<double>(pp.n)) * f.ft(pp.log_n / L);
    if (w == 0.0) continue;
    log_n_.push_back(pp.log_n);
    log_n_ext_.push_back(std::log(static_cast<long double>(pp.n)));
    weight_.push_back(w);
    abs_sum_ += std::abs(w);
  }
}

double OscillatorySum::operator()(double tau) const {
  double s = 0.0;
  for (std::size_t i = 0; i < weight_.size(); ++i) {
    const long double phase = std::fmod(static_cast<long double>(tau) * log_n_ext_[i], 2.0L * std::numbers::pi_v<long double>);
    s += weight_[i] * std::cos(static_cast<double>(phase));
  }
  return s;
}

void OscillatorySum::evaluate_grid(double center, double offset0, double step, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (out.empty() || weight_.empty()) return;
  const std::size_t n = weight_.size();
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  std::vector<double> zr(n), zi(n), rr(n), ri(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long double phase =
        std::fmod(static_cast<long double>(center) * log_n_ext_[i], two_pi) + static_cast<long double>(offset0) * log_n_ext_[i];
    zr[i] = weight_[i] * std::cos(static_cast<double>(phase));
    zi[i] = weight_[i] * std::sin(static_cast<double>(phase));
    rr[i] = std::cos(step * log_n_[i]);
    ri[i] = std::sin(step * log_n_[i]);
  }
  for (double& value : out) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += zr[i];
      const double nr = zr[i] * rr[i] - zi[i] * ri[i];
      zi[i] = zr[i] * ri[i] + zi[i] * rr[i];
      zr[i] = nr;
    }
    value = s;
  }
}

double nf_osc(const TestFunction& f, double tau, double T, const PrimePowerTable& table) {
  return OscillatorySum(f, T, table)(tau);
}

namespace {

LinStatSample identity_sample(const TestFunction& f, double tau, double T, const ZeroSet& zs,
                              const OscillatorySum& osc, double tail_target) {
  LinStatSample s;
  s.tau = tau;
  const Estimate direct = nf_direct(f, tau, T, zs, tail_target);
  const Estimate mean = nf_mean(f, tau, T);
  s.direct = direct.value;
  s.direct_radius = direct_radius(f, tau, T, tail_target);
  s.mean_part = mean.value;
  s.polar_part = f.scale() == 0.0 ? 0.0 : polar_terms(f, tau, T);
  s.osc_part = osc(tau);
  s.residual = direct.value - mean.value - s.osc_part;
  s.error_estimate = direct.error_bound + mean.error_bound + 1e-15 * osc.abs_weight_sum() * (1.0 + osc.size());
  return s;
}

}  // namespace

LinStatSample check_explicit_identity(const TestFunction& f, double tau, double T, const ZeroSet& zs,
                                      const PrimePowerTable& table, double tail_target) {
  const OscillatorySum osc(f, T, table);
  return identity_sample(f, tau, T, zs, osc, tail_target);
}

std::vector<LinStatSample> check_explicit_identity(const TestFunction& f, std::span<const double> taus, double T,
                                                   const ZeroSet& zs, const PrimePowerTable& table,
                                                   double tail_target) {
  const OscillatorySum osc(f, T, table);
  std::vector<LinStatSample> out(taus.size());
  parallel::for_each_index(taus.size(), [&](std::size_t i) { out[i] = identity_sample(f, taus[i], T, zs, osc, tail_target); });
  return out;
}

}  // namespace zetalin
