#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fpspec/equilibrium.hpp"
#include "fpspec/grid.hpp"

namespace fpspec {

using Cplx = std::complex<double>;

/// Finite-volume divergence form of Q = -(1/M) div(M^2 grad(./M)) plus the
/// transport term i eta v1. Application goes through the face list so the
/// discrete kernel Q M_h = 0 and w-symmetry hold to machine precision.
class KineticOperator {
 public:
  static KineticOperator assemble(const EquilibriumModel& model,
                                  const VelocityGrid& grid, double eta = 0.0);

  double eta() const { return eta_; }
  const VelocityGrid& grid() const { return *grid_; }
  const Eigen::VectorXd& Mh() const { return Mh_; }
  const Eigen::VectorXd& weights() const { return w_; }
  const Eigen::VectorXd& v1() const { return v1_; }
  std::size_t size() const { return std::size_t(Mh_.size()); }

  Eigen::VectorXd apply_Q(const Eigen::VectorXd& psi) const;
  Eigen::VectorXcd apply_Q(const Eigen::VectorXcd& psi) const;
  /// (Q + i eta v1) psi
  Eigen::VectorXcd apply(const Eigen::VectorXcd& psi) const;

  /// <Q psi, psi>_w as the explicit face sum (real, >= 0).
  double dirichlet(const Eigen::VectorXcd& psi) const;
  double dirichlet(const Eigen::VectorXd& psi) const;

  /// w-weighted sesquilinear product <f, g>_w = sum w_i f_i conj(g_i).
  Cplx inner_w(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const;
  double inner_w(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;
  double norm_w(const Eigen::VectorXcd& f) const;

  /// Sparse matrix of Q + i eta v1 - shift, for factorization only.
  Eigen::SparseMatrix<Cplx> matrix(Cplx shift = 0.0) const;

  /// Coordinate-format text dump (row, col, re, im) of the sparse pattern.
  void dump_pattern(std::ostream& os) const;

  struct Face {
    int a, b;
    double coef;  // M_a M_b A_f / h_f
  };
  const std::vector<Face>& faces() const { return faces_; }

 private:
  const VelocityGrid* grid_ = nullptr;
  double eta_ = 0.0;
  Eigen::VectorXd Mh_;  // grid-renormalized sample of M
  Eigen::VectorXd w_, v1_;
  std::vector<Face> faces_;
};

/// Phi_i proportional to M_i/<v_i>^2 with <Phi, M_h>_w = 1 exactly.
Eigen::VectorXd assemble_Phi(const VelocityGrid& grid,
                             const Eigen::VectorXd& Mh);

struct HardyPoincareResult {
  double lambda_exact = 0.0;  // smallest generalized eigenvalue
  double min_ratio = 0.0;     // smallest sampled Rayleigh quotient
  int samples_used = 0;
  int samples_skipped = 0;
};

HardyPoincareResult verify_hardy_poincare(const EquilibriumModel& model,
                                          const VelocityGrid& grid,
                                          int n_samples, std::uint64_t seed);

}  // namespace fpspec
