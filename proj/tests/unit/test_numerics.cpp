#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "zetalin/parallel.hpp"
#include "zetalin/quadrature.hpp"

using namespace zetalin;

TEST_SUITE("numerics") {
  TEST_CASE("gauss-legendre rules are exact on polynomials of degree 2n-1") {
    for (int n : {4, 16, 32}) {
      const auto& rule = quad::gauss_legendre(n);
      double wsum = 0.0, top = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        wsum += rule.weights[i];
        top += rule.weights[i] * std::pow(rule.nodes[i], 2 * n - 2);
      }
      CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
      CHECK(top == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
    }
  }

  TEST_CASE("composite rule integrates an oscillatory integrand") {
    const auto& rule = quad::gauss_legendre(32);
    const double v = quad::integrate([](double x) { return std::cos(40.0 * x); }, 0.0, 3.0, 8, rule);
    CHECK(v == doctest::Approx(std::sin(120.0) / 40.0).epsilon(1e-13));
  }

  TEST_CASE("pairwise sum has a fixed shape") {
    std::vector<double> v;
    for (int i = 0; i < 10001; ++i) v.push_back(1.0 / (1.0 + i));
    const double a = parallel::pairwise_sum(v);
    double naive = 0.0;
    for (double x : v) naive += x;
    CHECK(a == doctest::Approx(naive).epsilon(1e-13));
    CHECK(parallel::pairwise_sum(std::vector<double>{}) == 0.0);
  }

  TEST_CASE("parallel loop results do not depend on the worker count") {
    std::vector<double> one(5000), many(5000);
    const auto body = [](std::vector<double>& out) {
      return [&out](std::size_t i) { out[i] = std::sin(static_cast<double>(i)) * 1e-3; };
    };
    parallel::set_thread_count(1);
    parallel::for_each_index(one.size(), body(one));
    parallel::set_thread_count(4);
    parallel::for_each_index(many.size(), body(many));
    parallel::set_thread_count(0);
    CHECK(parallel::pairwise_sum(one) == parallel::pairwise_sum(many));
  }

  TEST_CASE("exceptions from workers reach the caller") {
    parallel::set_thread_count(3);
    CHECK_THROWS_AS(parallel::for_each_index(100,
                                             [](std::size_t i) {
                                               if (i == 57) throw std::runtime_error("boom");
                                             }),
                    std::runtime_error);
    parallel::set_thread_count(0);
  }
}
