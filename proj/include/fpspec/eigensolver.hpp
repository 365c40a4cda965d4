#pragma once

#include <complex>
#include <vector>

#include "fpspec/operators.hpp"

namespace fpspec {

struct PenalizedSolution {
  Eigen::VectorXcd psi;  // M_{lambda,eta}
  Cplx b = 0.0;          // penalized term <psi - M, Phi>_w
  Cplx lambda = 0.0;
  double eta = 0.0;
  double residual = 0.0;  // back-substitution residual, w-norm relative
};

/// Bordered solve of (L_eta - lambda eta^{2/3}) psi + b Phi = 0 with the
/// closure <psi, Phi>_w - b = 1.
PenalizedSolution solve_penalized(const KineticOperator& op, Cplx lambda,
                                  const Eigen::VectorXd& phi);

struct ConstraintValue {
  Cplx B = 0.0;      // eta^{-2/3} b(lambda, eta)
  Cplx B_int = 0.0;  // moment identity route
  bool eta_zero = false;
};

ConstraintValue compute_B(const KineticOperator& op,
                          const PenalizedSolution& sol);

struct EigenResult {
  double eta = 0.0;
  Cplx mu = 0.0;           // Rayleigh quotient of the located eigenvector
  Cplx lambda_tilde = 0.0; // secant root, mu = eta^{2/3} lambda_tilde
  Eigen::VectorXcd Meta;
  double dirichlet = 0.0;
  double norm_Meta = 0.0;   // ||M_eta||_w
  double norm_diff = 0.0;   // ||M_eta - M_h||_w
  int newton_iters = 0;
  double residual = 0.0;    // ||L M_eta - mu M_eta||_w / ||M_eta||_w
};

/// Locate the eigen-couple by driving B(., eta) to zero with a complex
/// secant iteration.
EigenResult find_lambda(const KineticOperator& op, const Eigen::VectorXd& phi,
                        double tol = 1e-12, double lambda_disk = 0.5);

struct SweepOptions {
  int n = 512;
  double r0 = 50.0;      // floor of the domain half-width
  double scale_c = 8.0;  // V_max = max(r0, scale_c * eta^{-1/3})
  double stretch = 1.0;
  double tol = 1e-12;
};

struct DiffusionFit {
  std::vector<double> etas;
  std::vector<Cplx> mus;
  std::vector<double> j1s;
  std::vector<double> dirichlets, norms_Meta, residuals;
  std::vector<int> iters;
  double alpha_hat = 0.0;      // lower-half fit
  double alpha_hat_all = 0.0;  // all-points fit
  double alpha_ref = 0.0;      // (beta - d + 2)/3
  double kappa_hat = 0.0;
  double fit_residual = 0.0;
  int grid_n = 0;
  double grid_vmax = 0.0;  // largest domain used in the sweep
};

DiffusionFit sweep_and_fit(const EquilibriumModel& model,
                           const std::vector<double>& eta_list,
                           const std::vector<double>& drift_values = {},
                           const SweepOptions& opt = {});

/// Dense non-Hermitian oracle: eigenvalue of minimal modulus of L_eta and
/// its eigenvector, normalized so sum w psi M is real positive.
std::pair<Cplx, Eigen::VectorXcd> oracle_eigenpair(const KineticOperator& op);

}  // namespace fpspec
