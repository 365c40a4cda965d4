#include "fpspec/operators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <ostream>
#include <random>

#include "fpspec/errors.hpp"

namespace fpspec {

KineticOperator KineticOperator::assemble(const EquilibriumModel& model,
                                          const VelocityGrid& grid,
                                          double eta) {
  if (eta < 0.0) throw InvalidGrid("eta must be >= 0");
  KineticOperator op;
  op.grid_ = &grid;
  op.eta_ = eta;
  const std::size_t n = grid.size();
  op.Mh_.resize(n);
  op.w_.resize(n);
  op.v1_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    op.Mh_[i] = model.M(grid.node(i));
    op.w_[i] = grid.w[i];
    op.v1_[i] = grid.v1[i];
  }
  // grid-consistent renormalization: sum w M^2 = 1 on the mesh
  const double mass = (op.w_.array() * op.Mh_.array().square()).sum();
  if (!(mass > 0.0)) throw InvalidGrid("equilibrium mass vanished on grid");
  op.Mh_ /= std::sqrt(mass);

  auto add_faces_axis0 = [&](int n0, int n1) {
    const auto& x = grid.axis_nodes[0];
    for (int i = 0; i + 1 < n0; ++i) {
      const double h = x[i + 1] - x[i];
      for (int j = 0; j < n1; ++j) {
        const int a = int(grid.flat(i, j)), b = int(grid.flat(i + 1, j));
        const double area = (grid.d == 1) ? 1.0 : grid.axis_weights[1][j];
        op.faces_.push_back({a, b, op.Mh_[a] * op.Mh_[b] * area / h});
      }
    }
  };
  if (grid.d == 1) {
    add_faces_axis0(grid.shape[0], 1);
  } else {
    add_faces_axis0(grid.shape[0], grid.shape[1]);
    const auto& y = grid.axis_nodes[1];
    for (int i = 0; i < grid.shape[0]; ++i)
      for (int j = 0; j + 1 < grid.shape[1]; ++j) {
        const double h = y[j + 1] - y[j];
        const int a = int(grid.flat(i, j)), b = int(grid.flat(i, j + 1));
        const double area = grid.axis_weights[0][i];
        op.faces_.push_back({a, b, op.Mh_[a] * op.Mh_[b] * area / h});
      }
  }
  return op;
}

namespace {

template <class Vec>
Vec apply_faces(const std::vector<KineticOperator::Face>& faces,
                const Eigen::VectorXd& M, const Eigen::VectorXd& w,
                const Vec& psi) {
  Vec r = Vec::Zero(psi.size());
  for (const auto& f : faces) {
    const auto t = psi[f.a] / M[f.a] - psi[f.b] / M[f.b];
    r[f.a] += f.coef * t / (M[f.a] * w[f.a]);
    r[f.b] -= f.coef * t / (M[f.b] * w[f.b]);
  }
  return r;
}

}  // namespace

Eigen::VectorXd KineticOperator::apply_Q(const Eigen::VectorXd& psi) const {
  return apply_faces(faces_, Mh_, w_, psi);
}

Eigen::VectorXcd KineticOperator::apply_Q(const Eigen::VectorXcd& psi) const {
  return apply_faces(faces_, Mh_, w_, psi);
}

Eigen::VectorXcd KineticOperator::apply(const Eigen::VectorXcd& psi) const {
  Eigen::VectorXcd r = apply_faces(faces_, Mh_, w_, psi);
  r.array() += Cplx(0.0, eta_) * v1_.array() * psi.array();
  return r;
}

double KineticOperator::dirichlet(const Eigen::VectorXcd& psi) const {
  double s = 0.0;
  for (const auto& f : faces_)
    s += f.coef * std::norm(psi[f.a] / Mh_[f.a] - psi[f.b] / Mh_[f.b]);
  return s;
}

double KineticOperator::dirichlet(const Eigen::VectorXd& psi) const {
  double s = 0.0;
  for (const auto& f : faces_) {
    const double t = psi[f.a] / Mh_[f.a] - psi[f.b] / Mh_[f.b];
    s += f.coef * t * t;
  }
  return s;
}

Cplx KineticOperator::inner_w(const Eigen::VectorXcd& f,
                              const Eigen::VectorXcd& g) const {
  return (f.array() * g.array().conjugate() * w_.array().cast<Cplx>()).sum();
}

double KineticOperator::inner_w(const Eigen::VectorXd& f,
                                const Eigen::VectorXd& g) const {
  return (f.array() * g.array() * w_.array()).sum();
}

double KineticOperator::norm_w(const Eigen::VectorXcd& f) const {
  return std::sqrt((f.array().abs2() * w_.array()).sum());
}

Eigen::SparseMatrix<Cplx> KineticOperator::matrix(Cplx shift) const {
  const int n = int(size());
  std::vector<Eigen::Triplet<Cplx>> trip;
  trip.reserve(faces_.size() * 4 + n);
  for (const auto& f : faces_) {
    const double ca = f.coef / (Mh_[f.a] * w_[f.a]);
    const double cb = f.coef / (Mh_[f.b] * w_[f.b]);
    trip.emplace_back(f.a, f.a, ca / Mh_[f.a]);
    trip.emplace_back(f.a, f.b, -ca / Mh_[f.b]);
    trip.emplace_back(f.b, f.b, cb / Mh_[f.b]);
    trip.emplace_back(f.b, f.a, -cb / Mh_[f.a]);
  }
  for (int i = 0; i < n; ++i)
    trip.emplace_back(i, i, Cplx(0.0, eta_ * v1_[i]) - shift);
  Eigen::SparseMatrix<Cplx> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

void KineticOperator::dump_pattern(std::ostream& os) const {
  Eigen::SparseMatrix<Cplx> A = matrix();
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<Cplx>::InnerIterator it(A, k); it; ++it) {
      char line[128];
      std::snprintf(line, sizeof line, "%ld %ld %.17g %.17g\n", long(it.row()),
                    long(it.col()), it.value().real(), it.value().imag());
      os << line;
    }
}

Eigen::VectorXd assemble_Phi(const VelocityGrid& grid,
                             const Eigen::VectorXd& Mh) {
  const std::size_t n = grid.size();
  Eigen::VectorXd phi(n);
  double dot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double b2 = 1.0 + grid.node(i).squaredNorm();
    phi[i] = Mh[i] / b2;
    dot += grid.w[i] * phi[i] * Mh[i];
  }
  phi /= dot;
  return phi;
}

HardyPoincareResult verify_hardy_poincare(const EquilibriumModel& model,
                                          const VelocityGrid& grid,
                                          int n_samples, std::uint64_t seed) {
  if (n_samples < 10) throw DegenerateSample("need at least 10 samples");
  KineticOperator op = KineticOperator::assemble(model, grid, 0.0);
  const int n = int(op.size());
  const Eigen::VectorXd& M = op.Mh();
  const Eigen::VectorXd& w = op.weights();

  Eigen::VectorXd inv_b2(n);  // 1/<v>^2 per node
  for (int i = 0; i < n; ++i)
    inv_b2[i] = 1.0 / (1.0 + grid.node(i).squaredNorm());

  // projection weight c_i = w_i M_i / <v_i>^2 and its mass
  Eigen::VectorXd c = (w.array() * M.array() * inv_b2.array()).matrix();
  const double cmass = (w.array() * M.array().square() * inv_b2.array()).sum();

  auto project_out = [&](const Eigen::VectorXd& g) {
    const double p = c.dot(g) / cmass;
    return Eigen::VectorXd(g - p * M);
  };
  auto mass_norm2 = [&](const Eigen::VectorXd& g) {
    return (w.array() * g.array().square() * inv_b2.array()).sum();
  };

  HardyPoincareResult res;

  // exact minimum: generalized symmetric eigenproblem restricted to c-perp
  {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (const auto& f : op.faces()) {
      A(f.a, f.a) += f.coef / (M[f.a] * M[f.a]);
      A(f.b, f.b) += f.coef / (M[f.b] * M[f.b]);
      A(f.a, f.b) -= f.coef / (M[f.a] * M[f.b]);
      A(f.b, f.a) -= f.coef / (M[f.a] * M[f.b]);
    }
    Eigen::MatrixXd B =
        (w.array() * inv_b2.array()).matrix().asDiagonal().toDenseMatrix();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(c);
    Eigen::MatrixXd Z =
        qr.householderQ() * Eigen::MatrixXd::Identity(n, n).rightCols(n - 1);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
        Z.transpose() * A * Z, Z.transpose() * B * Z);
    res.lambda_exact = es.eigenvalues()[0];
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  res.min_ratio = std::numeric_limits<double>::infinity();
  while (res.samples_used < n_samples) {
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g[i] = normal(rng);
    Eigen::VectorXd gt = project_out(g);
    const double m2 = mass_norm2(gt);
    if (m2 < 1e-24 * mass_norm2(g)) {
      ++res.samples_skipped;
      if (res.samples_skipped > 10 * n_samples)
        throw DegenerateSample("projection annihilated every sample");
      continue;
    }
    res.min_ratio = std::min(res.min_ratio, op.dirichlet(gt) / m2);
    ++res.samples_used;
  }
  return res;
}

}  // namespace fpspec
