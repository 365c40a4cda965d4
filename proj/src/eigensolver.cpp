#include "fpspec/eigensolver.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "fpspec/errors.hpp"

namespace fpspec {

namespace {

// bilinear (unconjugated) w-product against the real vector M
Cplx moment_w(const KineticOperator& op, const Eigen::VectorXcd& psi,
              const Eigen::VectorXd& g) {
  return (psi.array() * g.array().cast<Cplx>() *
          op.weights().array().cast<Cplx>())
      .sum();
}

}  // namespace

PenalizedSolution solve_penalized(const KineticOperator& op, Cplx lambda,
                                  const Eigen::VectorXd& phi) {
  const int n = int(op.size());
  const double eta = op.eta();
  const Cplx shift = lambda * std::pow(eta, 2.0 / 3.0);

  std::vector<Eigen::Triplet<Cplx>> trip;
  trip.reserve(op.faces().size() * 4 + 3 * n + 1);
  {
    Eigen::SparseMatrix<Cplx> A = op.matrix(shift);
    for (int k = 0; k < A.outerSize(); ++k)
      for (Eigen::SparseMatrix<Cplx>::InnerIterator it(A, k); it; ++it)
        trip.emplace_back(int(it.row()), int(it.col()), it.value());
  }
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(i, n, Cplx(phi[i]));                      // + b Phi
    trip.emplace_back(n, i, Cplx(op.weights()[i] * phi[i]));    // <psi,Phi>_w
  }
  trip.emplace_back(n, n, Cplx(-1.0));

  Eigen::SparseMatrix<Cplx> S(n + 1, n + 1);
  S.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<Cplx>> lu;
  lu.compute(S);
  if (lu.info() != Eigen::Success)
    throw SingularBorderedSystem("bordered factorization failed");
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n + 1);
  rhs[n] = 1.0;
  Eigen::VectorXcd sol = lu.solve(rhs);
  if (lu.info() != Eigen::Success)
    throw SingularBorderedSystem("bordered back-substitution failed");

  PenalizedSolution out;
  out.psi = sol.head(n);
  out.b = sol[n];
  out.lambda = lambda;
  out.eta = eta;
  Eigen::VectorXcd r =
      op.apply(out.psi) - shift * out.psi + out.b * phi.cast<Cplx>();
  out.residual = op.norm_w(r) / op.norm_w(out.psi);
  return out;
}

ConstraintValue compute_B(const KineticOperator& op,
                          const PenalizedSolution& sol) {
  ConstraintValue cv;
  if (sol.eta == 0.0) {
    cv.eta_zero = true;
    cv.B = sol.b;  // lambda-linearized surrogate, flagged
    cv.B_int = sol.b;
    return cv;
  }
  cv.B = sol.b * std::pow(sol.eta, -2.0 / 3.0);
  // bilinear pairing with M and Q-symmetry turn the penalized equation into
  // b = lambda eta^{2/3} <psi, M> - i eta <v1 psi, M>
  const double e13 = std::pow(sol.eta, 1.0 / 3.0);
  Cplx acc = 0.0;
  const auto& w = op.weights();
  const auto& v1 = op.v1();
  const auto& M = op.Mh();
  for (int i = 0; i < int(op.size()); ++i)
    acc += w[i] * (sol.lambda - Cplx(0.0, e13 * v1[i])) * sol.psi[i] * M[i];
  cv.B_int = acc;
  return cv;
}

EigenResult find_lambda(const KineticOperator& op, const Eigen::VectorXd& phi,
                        double tol, double lambda_disk) {
  const double eta = op.eta();
  if (eta <= 0.0) throw EtaZero("eigen-couple is located for eta > 0 only");

  PenalizedSolution s0 = solve_penalized(op, 0.0, phi);
  const Cplx denom = moment_w(op, s0.psi, op.Mh());
  Cplx l0 = -s0.b * std::pow(eta, -2.0 / 3.0) / denom;
  Cplx l1 = (std::abs(l0) > 1e-14) ? l0 * Cplx(1.0 + 1e-3) : l0 + Cplx(1e-8);

  auto Bof = [&](Cplx lam, PenalizedSolution& keep) {
    keep = solve_penalized(op, lam, phi);
    return compute_B(op, keep).B;
  };

  PenalizedSolution sa, sb;
  Cplx B0 = Bof(l0, sa);
  Cplx B1 = Bof(l1, sb);
  int iters = 2;
  Cplx lam = l1;
  PenalizedSolution cur = sb;
  Cplx Bcur = B1;
  while (std::abs(Bcur) > tol) {
    if (iters >= 50) throw NewtonDiverged("secant iteration cap reached");
    const Cplx dB = B1 - B0;
    if (dB == Cplx(0.0)) throw NewtonDiverged("flat secant step");
    lam = l1 - B1 * (l1 - l0) / dB;
    if (std::abs(lam) > lambda_disk)
      throw LambdaOutOfDisk("root left the holomorphy disk; eta too large");
    l0 = l1;
    B0 = B1;
    l1 = lam;
    B1 = Bof(lam, cur);
    Bcur = B1;
    ++iters;
  }

  EigenResult res;
  res.eta = eta;
  res.lambda_tilde = lam;
  res.Meta = cur.psi;
  res.newton_iters = iters;
  const auto& w = op.weights();
  const auto& v1 = op.v1();
  const double norm2 = (cur.psi.array().abs2() * w.array()).sum();
  res.norm_Meta = std::sqrt(norm2);
  res.dirichlet = op.dirichlet(cur.psi);
  const double flux = (cur.psi.array().abs2() * w.array() * v1.array()).sum();
  // Rayleigh quotient from the exact face and moment sums; real and
  // imaginary parts then satisfy the discrete energy identities exactly
  res.mu = Cplx(res.dirichlet, eta * flux) / norm2;
  res.residual = op.norm_w(op.apply(cur.psi) - res.mu * cur.psi) / res.norm_Meta;
  res.norm_diff = op.norm_w(cur.psi - op.Mh().cast<Cplx>());
  return res;
}

DiffusionFit sweep_and_fit(const EquilibriumModel& model,
                           const std::vector<double>& eta_list,
                           const std::vector<double>& drift_values,
                           const SweepOptions& opt) {
  if (eta_list.size() < 5)
    throw FitDegenerate("need at least 5 sweep points");
  if (!drift_values.empty() && drift_values.size() != eta_list.size())
    throw RangeMismatch("drift values not aligned with eta list");

  DiffusionFit fit;
  fit.alpha_ref = (model.beta() - model.d() + 2.0) / 3.0;
  fit.grid_n = opt.n;
  for (std::size_t k = 0; k < eta_list.size(); ++k) {
    const double eta = eta_list[k];
    const double vmax =
        std::max(opt.r0, opt.scale_c * std::pow(eta, -1.0 / 3.0));
    fit.grid_vmax = std::max(fit.grid_vmax, vmax);
    VelocityGrid grid = build_grid(model.d(), vmax, opt.n, opt.stretch);
    KineticOperator op = KineticOperator::assemble(model, grid, eta);
    Eigen::VectorXd phi = assemble_Phi(grid, op.Mh());
    EigenResult r = find_lambda(op, phi, opt.tol);
    fit.etas.push_back(eta);
    fit.mus.push_back(r.mu);
    fit.j1s.push_back(drift_values.empty() ? 0.0 : drift_values[k]);
    fit.dirichlets.push_back(r.dirichlet);
    fit.norms_Meta.push_back(r.norm_Meta);
    fit.residuals.push_back(r.residual);
    fit.iters.push_back(r.newton_iters);
  }

  const double emin = *std::min_element(fit.etas.begin(), fit.etas.end());
  const double emax = *std::max_element(fit.etas.begin(), fit.etas.end());
  if (std::log10(emax / emin) < 1.0)
    throw FitDegenerate("sweep spans less than one decade");

  auto line_fit = [&](const std::vector<std::size_t>& idx, double& slope,
                      double& icept, double& rms) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto i : idx) {
      const double x = std::log(fit.etas[i]);
      const double y = std::log(fit.mus[i].real());
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double n = double(idx.size());
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    icept = (sy - slope * sx) / n;
    double ss = 0;
    for (auto i : idx) {
      const double e = std::log(fit.mus[i].real()) -
                       (icept + slope * std::log(fit.etas[i]));
      ss += e * e;
    }
    rms = std::sqrt(ss / n);
  };

  std::vector<std::size_t> order(fit.etas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return fit.etas[a] < fit.etas[b]; });
  std::vector<std::size_t> lower(order.begin(),
                                 order.begin() + (order.size() + 1) / 2);

  double icept_all, rms_all, icept_lo;
  line_fit(order, fit.alpha_hat_all, icept_all, rms_all);
  line_fit(lower, fit.alpha_hat, icept_lo, fit.fit_residual);
  fit.kappa_hat = std::exp(icept_lo);
  return fit;
}

std::pair<Cplx, Eigen::VectorXcd> oracle_eigenpair(const KineticOperator& op) {
  const int n = int(op.size());
  Eigen::MatrixXcd A = Eigen::MatrixXcd(op.matrix());
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(es.eigenvalues()[i]) < std::abs(es.eigenvalues()[best]))
      best = i;
  Eigen::VectorXcd v = es.eigenvectors().col(best);
  Cplx s = moment_w(op, v, op.Mh());
  if (std::abs(s) > 0.0) v *= std::conj(s) / std::abs(s);
  v /= op.norm_w(v);
  return {es.eigenvalues()[best], v};
}

}  // namespace fpspec
