#include "zetalin/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "zetalin/errors.hpp"

namespace zetalin::special {
namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k} for k = 1..10.
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,       -1.0 / 30.0,     1.0 / 42.0,        -1.0 / 30.0,   5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,       -3617.0 / 510.0,   43867.0 / 798.0,
    -174611.0 / 330.0};

void check_pole(Complex s, const char* who) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real())) {
    throw PoleError(std::string(who) + ": pole at non-positive integer " + std::to_string(s.real()));
  }
}

void check_finite(Complex v, const char* who) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericalFailure(std::string(who) + ": non-finite result");
  }
}

// Outside the region |Im s| >= 10, Re s >= 0 the series is only trusted
// once Re s >= 10.
bool needs_shift(Complex s) {
  if (s.real() < 0.0) return true;
  return s.real() < 10.0 && std::abs(s.imag()) < 10.0;
}

Complex log_gamma_series(Complex s) {
  const Complex inv = 1.0 / s;
  const Complex inv2 = inv * inv;
  Complex term = inv;
  Complex sum = 0.0;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    sum += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * term;
    term *= inv2;
  }
  return (s - 0.5) * std::log(s) - s + 0.5 * std::log(2.0 * kPi) + sum;
}

Complex digamma_series(Complex s) {
  const Complex inv = 1.0 / s;
  const Complex inv2 = inv * inv;
  Complex term = inv2;
  Complex sum = 0.0;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    sum += kBernoulli[k - 1] / (2.0 * k) * term;
    term *= inv2;
  }
  return std::log(s) - 0.5 * inv - sum;
}

}  // namespace

Complex log_gamma(Complex s) {
  check_pole(s, "log_gamma");
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw DomainError("log_gamma: non-finite argument");
  // log Gamma(s) = log Gamma(s + n) - sum log(s + j). Each log is taken on
  // the principal branch; the sum stays continuous off the negative axis.
  Complex correction = 0.0;
  while (needs_shift(s)) {
    correction += std::log(s);
    s += 1.0;
  }
  const Complex v = log_gamma_series(s) - correction;
  check_finite(v, "log_gamma");
  return v;
}

Complex digamma(Complex s) {
  check_pole(s, "digamma");
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw DomainError("digamma: non-finite argument");
  Complex correction = 0.0;
  while (needs_shift(s)) {
    correction += 1.0 / s;
    s += 1.0;
  }
  const Complex v = digamma_series(s) - correction;
  check_finite(v, "digamma");
  return v;
}

double omega(double r) {
  // (1/2)Psi(z) + (1/2)Psi(conj z) = Re Psi(z).
  return digamma(Complex(0.25, 0.5 * r)).real() - std::log(kPi);
}

double rs_theta_log_gamma(double t) {
  if (!(t > 0.0)) throw DomainError("rs_theta: requires t > 0");
  return log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
}

double rs_theta_asymptotic(double t) {
  if (!(t > 0.0)) throw DomainError("rs_theta: requires t > 0");
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 +
         inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0)));
}

double rs_theta(double t) {
  if (!(t > 0.0)) throw DomainError("rs_theta: requires t > 0");
  return t >= 50.0 ? rs_theta_asymptotic(t) : rs_theta_log_gamma(t);
}

double rs_theta_derivative(double t) {
  if (!(t > 0.0)) throw DomainError("rs_theta_derivative: requires t > 0");
  if (t >= 50.0) {
    const double inv2 = 1.0 / (t * t);
    return 0.5 * std::log(t / (2.0 * kPi)) - inv2 * (1.0 / 48.0 + inv2 * (7.0 / 1920.0));
  }
  return 0.5 * digamma(Complex(0.25, 0.5 * t)).real() - 0.5 * std::log(kPi);
}

double mean_count(double T) {
  if (!(T > 0.0)) throw DomainError("mean_count: requires T > 0");
  return 1.0 + rs_theta(T) / kPi;
}

double mean_count_asymptotic(double T) {
  if (!(T > 0.0)) throw DomainError("mean_count: requires T > 0");
  return T / (2.0 * kPi) * std::log(T / (2.0 * kPi * std::numbers::e)) + 7.0 / 8.0;
}

}  // namespace zetalin::special
