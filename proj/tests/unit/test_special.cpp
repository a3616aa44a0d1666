#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zetalin/errors.hpp"
#include "zetalin/special.hpp"

using namespace zetalin;
using special::Complex;

namespace {
constexpr double kEuler = 0.57721566490153286061;
}

TEST_SUITE("special") {
  TEST_CASE("log_gamma at simple points") {
    CHECK(std::abs(special::log_gamma(1.0)) < 1e-15);
    CHECK(special::log_gamma(0.5).real() == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
    CHECK(special::log_gamma(0.5).imag() == 0.0);
  }

  TEST_CASE("log_gamma matches the high-precision value at 1/4 + 10i") {
    const Complex v = special::log_gamma({0.25, 10.0});
    CHECK(v.real() == doctest::Approx(-15.364592760295240140).epsilon(1e-13));
    CHECK(v.imag() == doctest::Approx(12.634193666938485786).epsilon(1e-13));
  }

  TEST_CASE("log_gamma recurrence and real-axis agreement") {
    for (Complex s : {Complex{0.3, 2.0}, Complex{-2.7, 0.4}, Complex{7.5, -30.0}}) {
      const Complex d = special::log_gamma(s + 1.0) - special::log_gamma(s) - std::log(s);
      const double wrapped = std::remainder(d.imag(), 2.0 * std::numbers::pi);
      CHECK(std::abs(d.real()) < 1e-12);
      CHECK(std::abs(wrapped) < 1e-12);
    }
    for (double x : {3.7, 150.0, 1e9}) {
      CHECK(special::log_gamma(x).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
    }
  }

  TEST_CASE("log_gamma and digamma reject poles") {
    CHECK_THROWS_AS(special::log_gamma(0.0), PoleError);
    CHECK_THROWS_AS(special::log_gamma(-3.0), PoleError);
    CHECK_THROWS_AS(special::digamma(-5.0), PoleError);
    CHECK_NOTHROW(special::digamma(Complex{-5.0, 1e-3}));
  }

  TEST_CASE("digamma at simple points") {
    CHECK(special::digamma(1.0).real() == doctest::Approx(-kEuler).epsilon(1e-14));
    CHECK(special::digamma(0.5).real() == doctest::Approx(-kEuler - 2.0 * std::log(2.0)).epsilon(1e-14));
  }

  TEST_CASE("digamma matches the high-precision value at 1/4 + 50i") {
    const Complex v = special::digamma({0.25, 50.0});
    CHECK(v.real() == doctest::Approx(3.9120188386885588806).epsilon(1e-13));
    CHECK(v.imag() == doctest::Approx(1.5757964518105263876).epsilon(1e-13));
  }

  TEST_CASE("digamma recurrence") {
    for (Complex s : {Complex{0.1, 0.2}, Complex{-3.3, 5.0}, Complex{20.0, 1e4}}) {
      const Complex d = special::digamma(s + 1.0) - special::digamma(s) - 1.0 / s;
      CHECK(std::abs(d) < 1e-12 * std::max(1.0, std::abs(special::digamma(s))));
    }
  }

  TEST_CASE("omega") {
    const double pi = std::numbers::pi;
    CHECK(special::omega(0.0) == doctest::Approx(-kEuler - 3.0 * std::log(2.0) - pi / 2.0 - std::log(pi)).epsilon(1e-14));
    CHECK(special::omega(0.0) == doctest::Approx(-5.3721834192256656822).epsilon(1e-14));
    CHECK(special::omega(-7.3) == special::omega(7.3));
    CHECK(std::abs(special::omega(1e5) - std::log(1e5 / (2.0 * pi))) < 1.0);
  }

  TEST_CASE("rs_theta against high-precision values") {
    CHECK(special::rs_theta(10.0) == doctest::Approx(-3.06707439628989529).epsilon(1e-12));
    CHECK(special::rs_theta(50.0) == doctest::Approx(26.4613660701614096).epsilon(1e-13));
    CHECK(special::rs_theta(100.0) == doctest::Approx(87.9721652317872196).epsilon(1e-13));
    CHECK(special::rs_theta(1000.0) == doctest::Approx(2034.54642803803161).epsilon(1e-14));
    CHECK(special::rs_theta_log_gamma(50.0) == doctest::Approx(special::rs_theta_asymptotic(50.0)).epsilon(1e-13));
  }

  TEST_CASE("rs_theta derivative") {
    for (double t : {20.0, 300.0, 1e6}) {
      const double h = 1e-4 * t;
      const double fd = (special::rs_theta(t + h) - special::rs_theta(t - h)) / (2.0 * h);
      CHECK(special::rs_theta_derivative(t) == doctest::Approx(fd).epsilon(1e-7));
    }
  }

  TEST_CASE("mean_count") {
    CHECK(special::mean_count(100.0) - special::mean_count(10.0) == doctest::Approx(28.97869).epsilon(1e-6));
    CHECK(std::abs(special::mean_count(1e4) - special::mean_count_asymptotic(1e4)) < 1e-4);
    CHECK_THROWS_AS(special::mean_count(0.0), DomainError);
    CHECK_THROWS_AS(special::mean_count(-1.0), DomainError);
  }
}
