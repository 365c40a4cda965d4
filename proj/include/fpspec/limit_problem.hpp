#pragma once

#include <complex>
#include <vector>

#include "fpspec/eigensolver.hpp"
#include "fpspec/equilibrium.hpp"
#include "fpspec/operators.hpp"

namespace fpspec {

/// Punctured one-sided meshes on [s_min, S_max] and its mirror (d = 1),
/// geometrically graded towards the origin.
struct RescaledGrid {
  double s_min = 1e-3;
  double s_max = 100.0;
  int n = 2000;                 // nodes per side
  std::vector<double> s_pos;    // increasing, s_pos[0] = s_min
  std::vector<double> w_pos;    // cell widths
};

RescaledGrid build_rescaled_grid(double s_min = 1e-3, double s_max = 100.0,
                                 int n = 2000);

enum class KappaRegime { Below, Critical, Above };  // 2 gamma vs d+1

struct LimitSolution {
  RescaledGrid grid;
  std::vector<Cplx> H_pos, H_neg;  // H0 on +/- sides, index matches s_pos
  std::vector<double> m_pos, m_neg;
  KappaRegime regime = KappaRegime::Above;
  double kappa_unified = 0.0;
  Cplx kappa_branch = 0.0;
  double residual = 0.0;  // max interior equation residual / ||m||_inf
};

/// Solve the limiting two-point problems in ratio form u = H0/m:
/// (m^2 u')' = i s m^2 u, u(+-s_min) = 1, u(+-S_max) = 0.
LimitSolution solve_H0_1d(const EquilibriumModel& model,
                          const RescaledGrid& grid);

/// Branch formula of the limiting lemma with the cut at s0 (critical case),
/// plus the unified integral; primary return is the unified value.
double kappa_from_H0(LimitSolution& sol, double s0 = 1.0,
                     double imag_tol = 0.01);

/// Doubling/halving robustness of kappa_unified; throws TruncationUnstable
/// beyond 1%.
void check_truncation(const EquilibriumModel& model, const RescaledGrid& grid,
                      double kappa_ref, double rel_tol = 0.01);

struct DriftValue {
  double beta = 0.0;
  double eps = 0.0;
  KappaRegime regime = KappaRegime::Below;
  double j1 = 0.0;
  double log_asymptote = 0.0;  // (|ln eps|/3) * jm_1, critical regime only
  double ratio = 0.0;          // j1 / log_asymptote
};

DriftValue drift_j(const EquilibriumModel& model, double eps);

/// Spherical moment of the limit profile: d=1 gives m^2(1) - m^2(-1).
Eigen::VectorXd jm_limit(const EquilibriumModel& model, int n_angles = 4096);

std::vector<double> check_log_asymptote(const EquilibriumModel& model,
                                        const std::vector<double>& eps_list);

struct HetaComparison {
  double eta = 0.0;
  double max_err_H = 0.0;   // max |H_eta - H0| on the annulus
  double max_err_m = 0.0;   // max |m_eta - m|, precondition sanity
};

/// H_eta(s) = eta^{-gamma/3} M_{0,eta}(eta^{-1/3} s) by interpolation of the
/// penalized solution at lambda = 0, compared to H0 on 0.5 <= |s| <= 5.
HetaComparison compare_H_eta(const EquilibriumModel& model,
                             const KineticOperator& op,
                             const Eigen::VectorXcd& psi0,
                             const LimitSolution& sol);

/// Experimental d=2 annulus solve in polar coordinates; same closure as d=1.
struct LimitSolution2d {
  int n_r = 0, n_theta = 0;
  double s_min = 0.0, s_max = 0.0;
  std::vector<double> r;             // radial nodes
  std::vector<Cplx> H;               // row-major (r, theta)
  double kappa_unified = 0.0;
};

LimitSolution2d solve_H0_2d(const EquilibriumModel& model, double s_min,
                            double s_max, int n_r, int n_theta);

}  // namespace fpspec
