#pragma once

#include <cstddef>
#include <vector>

namespace ghlab {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// order in {4, 8, 16}; rules are computed once by Newton iteration on P_k.
const GaussLegendreRule& gauss_legendre(int order);

/// Composite rule with `panels` equal panels on [a, b]. F: double -> T.
template <class T, class F>
T integrate_composite(F&& f, double a, double b, std::size_t panels, const GaussLegendreRule& rule) {
  const double h = (b - a) / static_cast<double>(panels);
  T total{};
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    T panel{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) panel += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * panel;
  }
  return total;
}

/// Richardson pair (n, 2n); `value` is the fine estimate.
struct QuadratureResult {
  double value = 0.0;
  double coarse = 0.0;
  double fine = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

inline constexpr double kQuadratureTol = 1e-10;

}  // namespace ghlab
