#pragma once

#include <cstddef>
#include <vector>

namespace zetalin::quad {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// Returns the n-point rule. Rules are computed once and cached; the
/// returned reference stays valid for the lifetime of the program.
const GaussLegendreRule& gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] split into `panels` equal panels.
template <class F>
double integrate(F&& f, double a, double b, int panels, const GaussLegendreRule& rule) {
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * s;
  }
  return total;
}

}  // namespace zetalin::quad
