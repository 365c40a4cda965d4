#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

namespace fpspec {

/// Tensor velocity grid, d in {1,2}, nodes stretched by u -> sinh(a u)/a so
/// the mesh widens into the heavy tail. v1 is axis 0 (the xi direction).
struct VelocityGrid {
  int d = 1;
  double stretch = 0.0;
  double vmax = 0.0;
  std::vector<int> shape;                        // node count per axis
  std::vector<std::vector<double>> axis_nodes;   // strictly increasing
  std::vector<std::vector<double>> axis_weights; // midpoint cell widths

  // flattened views, row-major with axis 0 slowest
  std::vector<double> w;    // cell weights, product across axes
  std::vector<double> v1;   // first coordinate per flat index

  std::size_t size() const { return w.size(); }
  Eigen::VectorXd node(std::size_t flat) const;

  std::size_t flat(int i, int j = 0) const {
    return d == 1 ? std::size_t(i) : std::size_t(i) * shape[1] + j;
  }
};

VelocityGrid build_grid(int d, double vmax, int n, double stretch);

}  // namespace fpspec
