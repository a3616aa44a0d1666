#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "zetalin/errors.hpp"
#include "zetalin/quadrature.hpp"
#include "zetalin/test_function.hpp"

using namespace zetalin;

namespace {

// Riemann sum of min(|u|,1) f-hat(u)^2 over [-alpha, alpha].
double sigma_sq_riemann(const TestFunction& f, int points) {
  const double h = 2.0 * f.alpha() / points;
  double s = 0.0;
  for (int i = 0; i < points; ++i) {
    const double u = -f.alpha() + (i + 0.5) * h;
    const double v = f.ft(u);
    s += std::min(std::abs(u), 1.0) * v * v;
  }
  return s * h;
}

}  // namespace

TEST_SUITE("testfunc") {
  TEST_CASE("polynomial family at simple points") {
    const auto f = TestFunction::make(1.0, Family::polynomial_smooth, 2);
    CHECK(f.ft(0.0) == 1.0);
    CHECK(f.ft(0.5) == doctest::Approx(0.5625).epsilon(1e-15));
    CHECK(f.ft(-0.3) == f.ft(0.3));
    CHECK(f.ft(1.0) == 0.0);
    CHECK(f.ft(1.7) == 0.0);
    CHECK(f.value(0.0) == doctest::Approx(16.0 / 15.0).epsilon(1e-13));
    CHECK(f.integral() == 1.0);
  }

  TEST_CASE("bump family support boundary") {
    const auto f = TestFunction::make(0.5, Family::smooth_bump);
    CHECK(f.ft(0.5) == 0.0);
    CHECK(f.ft(0.499) > 0.0);
    CHECK(f.ft(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("values match the closed form") {
    for (double alpha : {0.2, 0.5, 1.0}) {
      const auto f = TestFunction::make(alpha, Family::polynomial_smooth, 2);
      for (double x : {0.0, 0.01, 0.37, 2.5, 13.1, 77.7, 400.3, 999.9}) {
        CHECK(std::abs(f.value(x) - oracle::poly2(x, alpha)) < 1e-10);
      }
    }
  }

  TEST_CASE("f is real and even on the real line") {
    for (auto family : {Family::polynomial_smooth, Family::smooth_bump, Family::self_convolved}) {
      const auto f = TestFunction::make(0.7, family, 3);
      for (double x = 0.0; x < 60.0; x += 0.73) {
        CHECK(std::abs(f.value(x) - f.value(-x)) < 1e-12);
        CHECK(std::abs(f.value(std::complex<double>(x, 0.0)).imag()) < 1e-12);
      }
    }
  }

  TEST_CASE("complex arguments") {
    const auto f = TestFunction::make(0.5, Family::polynomial_smooth, 2);
    const std::complex<double> z(3.0, 1.2);
    CHECK(std::abs(f.value(z) - oracle::poly2(z, 0.5)) < 1e-12);
    const auto iy = f.value(std::complex<double>(0.0, 2.0));
    CHECK(std::abs(iy.imag()) < 1e-12);
    CHECK(iy.real() > f.value(0.0));
    CHECK_THROWS_AS(f.value(std::complex<double>(0.0, 300.0)), OverflowError);
  }

  TEST_CASE("decay") {
    const auto f = TestFunction::make(1.0, Family::polynomial_smooth, 2);
    CHECK(std::abs(f.value(50.0)) <= 1e-4);
    const auto g = TestFunction::make(0.8, Family::polynomial_smooth, 4);
    double worst = 0.0;
    for (double x = 0.0; x <= 1000.0; x += 0.37) worst = std::max(worst, std::abs(g.value(x)) * std::pow(1.0 + x, 3));
    CHECK(worst < 10.0);
  }

  TEST_CASE("envelope bounds |f| for the polynomial families") {
    for (auto family : {Family::polynomial_smooth, Family::self_convolved}) {
      for (int k : {2, 5}) {
        const auto f = TestFunction::make(0.6, family, k, 1.5);
        for (double x = 0.05; x < 300.0; x *= 1.07) CHECK(std::abs(f.value(x)) <= f.envelope(x));
      }
    }
  }

  TEST_CASE("self-convolved family is nonnegative") {
    const auto f = TestFunction::make(0.4, Family::self_convolved, 2);
    CHECK(f.ft(0.0) == doctest::Approx(1.0).epsilon(1e-13));
    for (double x = 0.0; x < 100.0; x += 0.11) CHECK(f.value(x) >= -1e-15);
    for (double u = -0.5; u < 0.5; u += 0.01) CHECK(f.ft(u) >= 0.0);
  }

  TEST_CASE("sigma_sq") {
    const auto f = TestFunction::make(1.0, Family::polynomial_smooth, 2);
    CHECK(f.sigma_sq() == doctest::Approx(0.2).epsilon(1e-12));
    const auto g = TestFunction::make(1.0, Family::polynomial_smooth, 2, 2.0);
    CHECK(g.sigma_sq() == doctest::Approx(0.8).epsilon(1e-12));
    const auto bump = TestFunction::make(0.5, Family::smooth_bump);
    CHECK(std::abs(bump.sigma_sq() - sigma_sq_riemann(bump, 1000000)) < 1e-8);
    const auto wide = TestFunction::make(1.7, Family::polynomial_smooth, 3);
    CHECK(wide.sigma_sq() == doctest::Approx(sigma_sq_riemann(wide, 1000000)).epsilon(1e-9));
  }

  TEST_CASE("support scaling of sigma_sq") {
    for (auto family : {Family::polynomial_smooth, Family::smooth_bump}) {
      const auto f = TestFunction::make(0.8, family, 3);
      const auto half = TestFunction::make(0.4, family, 3);
      CHECK(half.sigma_sq() == doctest::Approx(0.25 * f.sigma_sq()).epsilon(1e-10));
    }
  }

  TEST_CASE("Fourier inversion round trip") {
    const double alpha = 1.0;
    const auto f = TestFunction::make(alpha, Family::polynomial_smooth, 2);
    // f-hat(u) = 2 int_0^X f(x) cos(2 pi x u) dx, with f tabulated once.
    const double X = 500.0;
    const int panels = 4000;
    const auto& rule = quad::gauss_legendre(16);
    std::vector<double> xs, ws, fx;
    for (int p = 0; p < panels; ++p) {
      const double a = X * p / panels, b = X * (p + 1) / panels;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        xs.push_back(0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i]);
        ws.push_back(0.5 * (b - a) * rule.weights[i]);
        fx.push_back(f.value(xs.back()));
      }
    }
    for (int t = 0; t < 20; ++t) {
      const double u = -0.95 + 0.1 * t;
      double s = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) s += ws[i] * fx[i] * std::cos(2.0 * std::numbers::pi * xs[i] * u);
      CHECK(std::abs(2.0 * s - f.ft(u)) < 1e-6);
    }
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(TestFunction::make(0.0, Family::polynomial_smooth), InvalidParameter);
    CHECK_THROWS_AS(TestFunction::make(-1.0, Family::smooth_bump), InvalidParameter);
    CHECK_THROWS_AS(TestFunction::make(1.0, Family::polynomial_smooth, 1), InvalidParameter);
    CHECK_THROWS_AS(TestFunction::make(1.0, Family::polynomial_smooth, 25), InvalidParameter);
    CHECK_THROWS_AS(TestFunction::make(1.0, Family::polynomial_smooth, 2, NAN), InvalidParameter);
    CHECK_THROWS_AS(parse_family("gauss"), InvalidParameter);
    CHECK(parse_family("poly") == Family::polynomial_smooth);
    CHECK(parse_family("bump") == Family::smooth_bump);
    CHECK(parse_family("selfconv") == Family::self_convolved);
  }

  TEST_CASE("zero scale") {
    const auto f = TestFunction::make(0.5, Family::polynomial_smooth, 2, 0.0);
    CHECK(f.value(1.3) == 0.0);
    CHECK(f.sigma_sq() == 0.0);
    CHECK(f.tail_sum_bound(10.0, 1.0) == 0.0);
  }
}
