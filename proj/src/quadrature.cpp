#include "ghlab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "ghlab/errors.hpp"

namespace ghlab {

namespace {

GaussLegendreRule build_rule(int k) {
  GaussLegendreRule r;
  r.order = k;
  r.nodes.resize(static_cast<std::size_t>(k));
  r.weights.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    // Tricomi initial guess, then Newton on P_k
    double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int n = 2; n <= k; ++n) {
        const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  static const GaussLegendreRule r4 = build_rule(4);
  static const GaussLegendreRule r8 = build_rule(8);
  static const GaussLegendreRule r16 = build_rule(16);
  switch (order) {
    case 4: return r4;
    case 8: return r8;
    case 16: return r16;
    default: throw InvalidArgument("Gauss-Legendre order must be 4, 8 or 16");
  }
}

}  // namespace ghlab
