#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace fpspec {

enum class Family { Classical, Anisotropic, Oscillatory, UserSupplied };

/// Square-root equilibrium M = F^{1/2} with tail exponent gamma = beta/2.
/// Models are immutable after construction and safe for concurrent reads.
class EquilibriumModel {
 public:
  int d() const { return d_; }
  double beta() const { return 2.0 * gamma_; }
  double gamma() const { return gamma_; }
  Family family() const { return family_; }
  bool symmetric() const { return symmetric_; }
  double normalization() const { return norm_; }
  /// Stored A1 sandwich constants (analytic per family).
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  bool has_analytic_W() const { return analytic_W_; }

  double M(const Eigen::VectorXd& v) const;
  double M1(double v) const;  // d = 1 fast path

  /// Langevin drift b(v) = 2 grad M / M = grad F / F.
  Eigen::VectorXd drift(const Eigen::VectorXd& v) const;
  double drift1(double v) const;

  /// W(v) = Laplacian(M)/M; analytic when the family supports it,
  /// central finite differences with step 1e-5*<v> otherwise.
  double W(const Eigen::VectorXd& v) const;
  double W1(double v) const;

  /// Limit profile m(s) of the rescaled equilibrium; throws OriginEvaluation
  /// at s = 0.
  double limit_m(const Eigen::VectorXd& s) const;
  double limit_m1(double s) const;

  static EquilibriumModel make_power_law(int d, double gamma,
                                         double asymmetry_plus = 1.0,
                                         double asymmetry_minus = 1.0);
  static EquilibriumModel make_anisotropic(int d, double gamma);
  static EquilibriumModel make_oscillatory(int d, double gamma,
                                           double sigma_osc, double amplitude);
  /// User-supplied radial profile g(r) (M = C g(r) <r>^{-gamma} in shape
  /// terms is NOT assumed; g is the full unnormalized M along the radius).
  static EquilibriumModel make_user_radial(int d, double gamma,
                                           std::function<double(double)> profile,
                                           std::function<double(double)> limit_prefactor);

  // family parameters (valid for the owning family only)
  double asym_plus() const { return asym_plus_; }
  double asym_minus() const { return asym_minus_; }
  double sigma_osc() const { return sigma_osc_; }
  double osc_amplitude() const { return amp_; }

 private:
  EquilibriumModel() = default;
  double shape(const Eigen::VectorXd& v) const;  // unnormalized M
  double shape1(double v) const;
  void normalize();

  int d_ = 1;
  double gamma_ = 0.0;
  Family family_ = Family::Classical;
  bool symmetric_ = true;
  bool analytic_W_ = false;
  double norm_ = 1.0;  // C: M = C * shape
  double c1_ = 0.0, c2_ = 0.0;
  double asym_plus_ = 1.0, asym_minus_ = 1.0;
  double sigma_osc_ = 0.0, amp_ = 0.0;
  std::function<double(double)> user_profile_;
  std::function<double(double)> user_limit_;
};

struct ScanSpec {
  double radius = 1e3;
  int resolution = 4000;
  std::vector<double> a3_etas = {1e-2, 1e-3, 1e-4};
};

struct AssumptionReport {
  bool a1_pass = false, a2_pass = false, a3_pass = false, a5_pass = false;
  bool beta_in_range = false;
  double c1 = 0.0, c2 = 0.0;        // measured over the scan grid
  double a2_integral = 0.0;
  double a2_tail_fraction = 0.0;
  std::vector<double> a3_samples;   // max |m_eta - m| on the annulus, per eta
  double sigma = 0.0;               // measured A5 decay bound
  double beta = 0.0;
  int d = 1;
  std::string notes;
  bool pass() const {
    return a1_pass && a2_pass && a3_pass && a5_pass && beta_in_range;
  }
};

AssumptionReport check_assumptions(const EquilibriumModel& model,
                                   const ScanSpec& scan = {});

}  // namespace fpspec
