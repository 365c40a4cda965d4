#include "fpspec/grid.hpp"

#include <cmath>

#include "fpspec/errors.hpp"

namespace fpspec {

Eigen::VectorXd VelocityGrid::node(std::size_t flat) const {
  Eigen::VectorXd v(d);
  if (d == 1) {
    v[0] = axis_nodes[0][flat];
  } else {
    v[0] = axis_nodes[0][flat / shape[1]];
    v[1] = axis_nodes[1][flat % shape[1]];
  }
  return v;
}

VelocityGrid build_grid(int d, double vmax, int n, double stretch) {
  if (!(d == 1 || d == 2)) throw InvalidGrid("dimension must be 1 or 2");
  if (n < 32) throw InvalidGrid("need at least 32 nodes per axis");
  if (!(vmax > 1.0) || !std::isfinite(vmax))
    throw InvalidGrid("V_max must be finite and > 1");
  if (!(stretch >= 0.0) || !std::isfinite(stretch))
    throw InvalidGrid("stretch must be finite and >= 0");

  VelocityGrid g;
  g.d = d;
  g.stretch = stretch;
  g.vmax = vmax;

  std::vector<double> nodes(n), weights(n);
  const double a = stretch;
  // uniform parameter grid on [-U, U] mapped through sinh(a u)/a
  const double U = (a == 0.0) ? vmax : std::asinh(a * vmax) / a;
  for (int i = 0; i < n; ++i) {
    const double u = -U + 2.0 * U * i / (n - 1);
    nodes[i] = (a == 0.0) ? u : std::sinh(a * u) / a;
  }
  nodes.front() = -vmax;  // pin endpoints against rounding
  nodes.back() = vmax;
  for (int i = 0; i < n; ++i) {
    const double lo = (i == 0) ? nodes[0] : 0.5 * (nodes[i - 1] + nodes[i]);
    const double hi =
        (i == n - 1) ? nodes[n - 1] : 0.5 * (nodes[i] + nodes[i + 1]);
    weights[i] = hi - lo;
    if (!(weights[i] > 0.0)) throw InvalidGrid("non-increasing node sequence");
  }

  for (int ax = 0; ax < d; ++ax) {
    g.shape.push_back(n);
    g.axis_nodes.push_back(nodes);
    g.axis_weights.push_back(weights);
  }

  const std::size_t total = (d == 1) ? std::size_t(n) : std::size_t(n) * n;
  g.w.resize(total);
  g.v1.resize(total);
  if (d == 1) {
    g.w = weights;
    g.v1 = nodes;
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const std::size_t k = std::size_t(i) * n + j;
        g.w[k] = weights[i] * weights[j];
        g.v1[k] = nodes[i];
      }
  }
  return g;
}

}  // namespace fpspec
