#include "fpspec/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "fpspec/errors.hpp"
#include "fpspec/quadrature.hpp"

namespace fpspec {

namespace {

double bracket(double x) { return std::sqrt(1.0 + x * x); }  // <v>

// Smooth half-space blend of width 1, C^inf, 0 at -inf and 1 at +inf.
double blend(double v1) { return 0.5 * (1.0 + std::tanh(v1)); }
double blend_deriv(double v1) {
  const double c = std::cosh(v1);
  return 0.5 / (c * c);
}

}  // namespace

double EquilibriumModel::shape1(double v) const {
  const double br = bracket(v);
  switch (family_) {
    case Family::Classical: {
      const double a = asym_minus_ + (asym_plus_ - asym_minus_) * blend(v);
      return a * std::pow(br, -gamma_);
    }
    case Family::Anisotropic:
      return (1.0 + 2.0 * v * v) * std::pow(br, -gamma_ - 2.0);
    case Family::Oscillatory:
      return (2.0 + amp_ * std::cos(br) * std::pow(br, -sigma_osc_)) *
             std::pow(br, -gamma_);
    case Family::UserSupplied:
      return user_profile_(std::abs(v));
  }
  return 0.0;
}

double EquilibriumModel::shape(const Eigen::VectorXd& v) const {
  if (v.size() == 1) return shape1(v[0]);
  const double r2 = v.squaredNorm();
  const double br = std::sqrt(1.0 + r2);
  switch (family_) {
    case Family::Classical: {
      const double a = asym_minus_ + (asym_plus_ - asym_minus_) * blend(v[0]);
      return a * std::pow(br, -gamma_);
    }
    case Family::Anisotropic:
      return (1.0 + r2 + v[0] * v[0]) * std::pow(br, -gamma_ - 2.0);
    case Family::Oscillatory:
      return (2.0 + amp_ * std::cos(br) * std::pow(br, -sigma_osc_)) *
             std::pow(br, -gamma_);
    case Family::UserSupplied:
      return user_profile_(std::sqrt(r2));
  }
  return 0.0;
}

double EquilibriumModel::M1(double v) const { return norm_ * shape1(v); }

double EquilibriumModel::M(const Eigen::VectorXd& v) const {
  return norm_ * shape(v);
}

double EquilibriumModel::drift1(double v) const {
  const double b2 = 1.0 + v * v;
  switch (family_) {
    case Family::Classical: {
      double grad = -gamma_ * v / b2;
      if (asym_plus_ != asym_minus_) {
        const double a = asym_minus_ + (asym_plus_ - asym_minus_) * blend(v);
        grad += (asym_plus_ - asym_minus_) * blend_deriv(v) / a;
      }
      return 2.0 * grad;
    }
    case Family::Anisotropic:
      return 2.0 * (4.0 * v / (1.0 + 2.0 * v * v) - (gamma_ + 2.0) * v / b2);
    case Family::Oscillatory: {
      const double u = std::sqrt(b2);
      const double g = 2.0 + amp_ * std::cos(u) * std::pow(u, -sigma_osc_);
      const double gp = amp_ * (-std::sin(u) * std::pow(u, -sigma_osc_) -
                                sigma_osc_ * std::cos(u) *
                                    std::pow(u, -sigma_osc_ - 1.0));
      return 2.0 * (gp / g - gamma_ / u) * (v / u);
    }
    case Family::UserSupplied: {
      const double r = std::abs(v);
      const double h = 1e-6 * bracket(r);
      const double lp = std::log(user_profile_(r + h)) -
                        std::log(user_profile_(std::max(r - h, 0.0)));
      const double dlog = lp / (2.0 * h);
      return 2.0 * dlog * (v >= 0 ? 1.0 : -1.0);
    }
  }
  return 0.0;
}

Eigen::VectorXd EquilibriumModel::drift(const Eigen::VectorXd& v) const {
  if (v.size() == 1) {
    Eigen::VectorXd g(1);
    g[0] = drift1(v[0]);
    return g;
  }
  const double r2 = v.squaredNorm();
  const double b2 = 1.0 + r2;
  switch (family_) {
    case Family::Classical: {
      Eigen::VectorXd g = (-gamma_ / b2) * v;
      if (asym_plus_ != asym_minus_) {
        const double a = asym_minus_ + (asym_plus_ - asym_minus_) * blend(v[0]);
        g[0] += (asym_plus_ - asym_minus_) * blend_deriv(v[0]) / a;
      }
      return 2.0 * g;
    }
    case Family::Anisotropic: {
      const double p = 1.0 + r2 + v[0] * v[0];
      Eigen::VectorXd g = (2.0 / p - (gamma_ + 2.0) / b2) * v;
      g[0] += 2.0 * v[0] / p;
      return 2.0 * g;
    }
    default: {
      // radial families: grad M / M = (d/dr log M) * v/r
      const double r = std::sqrt(r2);
      if (r == 0.0) return Eigen::VectorXd::Zero(v.size());
      return (drift1(r) / r) * v;
    }
  }
}

double EquilibriumModel::W1(double v) const {
  Eigen::VectorXd vv(1);
  vv[0] = v;
  return W(vv);
}

double EquilibriumModel::W(const Eigen::VectorXd& v) const {
  if (analytic_W_) {
    const double r2 = v.squaredNorm();
    const double b2 = 1.0 + r2;
    return (gamma_ * (gamma_ - d_ + 2.0) * r2 - gamma_ * d_) / (b2 * b2);
  }
  // Central finite differences of M per axis, step scaled to <v>.
  const double h = 1e-5 * bracket(v.norm());
  const double mc = M(v);
  double lap = 0.0;
  Eigen::VectorXd vp = v;
  for (int k = 0; k < v.size(); ++k) {
    vp[k] = v[k] + h;
    const double mp = M(vp);
    vp[k] = v[k] - h;
    const double mm = M(vp);
    vp[k] = v[k];
    lap += (mp - 2.0 * mc + mm) / (h * h);
  }
  return lap / mc;
}

double EquilibriumModel::limit_m1(double s) const {
  Eigen::VectorXd ss(1);
  ss[0] = s;
  return limit_m(ss);
}

double EquilibriumModel::limit_m(const Eigen::VectorXd& s) const {
  const double r = s.norm();
  if (r == 0.0) throw OriginEvaluation("limit profile undefined at s = 0");
  switch (family_) {
    case Family::Classical: {
      double a;
      if (s[0] > 0.0)
        a = asym_plus_;
      else if (s[0] < 0.0)
        a = asym_minus_;
      else
        a = 0.5 * (asym_plus_ + asym_minus_);
      return norm_ * a * std::pow(r, -gamma_);
    }
    case Family::Anisotropic: {
      const double u = s[0] / r;
      return norm_ * (1.0 + u * u) * std::pow(r, -gamma_);
    }
    case Family::Oscillatory:
      return norm_ * 2.0 * std::pow(r, -gamma_);
    case Family::UserSupplied:
      return norm_ * user_limit_(s[0] / r) * std::pow(r, -gamma_);
  }
  return 0.0;
}

void EquilibriumModel::normalize() {
  double integral = 0.0;
  auto sq = [this](double r) {
    const double m = shape1(r);
    return m * m;
  };
  switch (family_) {
    case Family::Classical:
      if (asym_plus_ != asym_minus_) {
        // smooth blend breaks radial symmetry; d = 1 only
        integral =
            integrate_line([this](double v) { const double m = shape1(v); return m * m; });
      } else {
        integral = sphere_area(d_) * integrate_radial(d_, sq);
      }
      break;
    case Family::Oscillatory:
    case Family::UserSupplied:
      integral = sphere_area(d_) * integrate_radial(d_, sq);
      break;
    case Family::Anisotropic:
      if (d_ == 1) {
        integral = integrate_line(
            [this](double v) { const double m = shape1(v); return m * m; });
      } else {
        // polar quadrature; the angular factor is smooth and 2pi-periodic
        const int na = 256;
        integral = integrate_radial(2, [this, na](double r) {
          double acc = 0.0;
          for (int k = 0; k < na; ++k) {
            const double th = 2.0 * M_PI * k / na;
            Eigen::VectorXd v(2);
            v << r * std::cos(th), r * std::sin(th);
            const double m = shape(v);
            acc += m * m;
          }
          return acc * (2.0 * M_PI / na);
        });
      }
      break;
  }
  if (!(integral > 0.0) || !std::isfinite(integral))
    throw NormalizationFailure("equilibrium mass integral did not converge");
  norm_ = 1.0 / std::sqrt(integral);
}

EquilibriumModel EquilibriumModel::make_power_law(int d, double gamma,
                                                  double asymmetry_plus,
                                                  double asymmetry_minus) {
  if (d < 1) throw GammaOutOfRange("dimension must be >= 1");
  if (!(gamma > 0.5 * d))
    throw GammaOutOfRange("gamma <= d/2 violates the tail assumption");
  if (!(asymmetry_plus > 0.0) || !(asymmetry_minus > 0.0))
    throw PositivityViolation("asymmetry factors must be positive");
  if (d > 1 && asymmetry_plus != asymmetry_minus)
    throw ConfigError("asymmetric power law is implemented for d = 1 only");
  EquilibriumModel m;
  m.d_ = d;
  m.gamma_ = gamma;
  m.family_ = Family::Classical;
  m.asym_plus_ = asymmetry_plus;
  m.asym_minus_ = asymmetry_minus;
  m.symmetric_ = (asymmetry_plus == asymmetry_minus);
  m.analytic_W_ = m.symmetric_;  // radial case
  m.normalize();
  m.c1_ = m.norm_ * std::min(asymmetry_plus, asymmetry_minus);
  m.c2_ = m.norm_ * std::max(asymmetry_plus, asymmetry_minus);
  return m;
}

EquilibriumModel EquilibriumModel::make_anisotropic(int d, double gamma) {
  if (!(gamma > 0.5 * d))
    throw GammaOutOfRange("gamma <= d/2 violates the tail assumption");
  if (d > 2) throw ConfigError("anisotropic family is implemented for d <= 2");
  EquilibriumModel m;
  m.d_ = d;
  m.gamma_ = gamma;
  m.family_ = Family::Anisotropic;
  m.symmetric_ = true;  // even in v1
  m.normalize();
  // (1+|v|^2+v1^2)/<v>^2 ranges over [1, 2)
  m.c1_ = m.norm_;
  m.c2_ = 2.0 * m.norm_;
  return m;
}

EquilibriumModel EquilibriumModel::make_oscillatory(int d, double gamma,
                                                    double sigma_osc,
                                                    double amplitude) {
  if (!(gamma > 0.5 * d))
    throw GammaOutOfRange("gamma <= d/2 violates the tail assumption");
  if (amplitude >= 2.0)
    throw PositivityViolation("oscillation amplitude >= 2 breaks positivity");
  if (sigma_osc < 0.0) throw ConfigError("sigma_osc must be >= 0");
  EquilibriumModel m;
  m.d_ = d;
  m.gamma_ = gamma;
  m.family_ = Family::Oscillatory;
  m.sigma_osc_ = sigma_osc;
  m.amp_ = amplitude;
  m.symmetric_ = true;
  m.normalize();
  // tight sandwich constants from a radial scan
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double r = std::sinh(8.0 * i / 4000.0);  // up to ~1.5e3
    const double t = m.M1(r) * std::pow(bracket(r), gamma);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  m.c1_ = lo;
  m.c2_ = hi;
  return m;
}

EquilibriumModel EquilibriumModel::make_user_radial(
    int d, double gamma, std::function<double(double)> profile,
    std::function<double(double)> limit_prefactor) {
  if (!(gamma > 0.5 * d))
    throw GammaOutOfRange("gamma <= d/2 violates the tail assumption");
  EquilibriumModel m;
  m.d_ = d;
  m.gamma_ = gamma;
  m.family_ = Family::UserSupplied;
  m.user_profile_ = std::move(profile);
  m.user_limit_ = std::move(limit_prefactor);
  m.symmetric_ = true;
  m.normalize();
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double r = std::sinh(8.0 * i / 4000.0);
    const double t = m.M1(r) * std::pow(bracket(r), gamma);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  m.c1_ = lo;
  m.c2_ = hi;
  return m;
}

namespace {

// integrand of the A2 integral along a ray direction
double a2_integrand(const EquilibriumModel& model, const Eigen::VectorXd& v) {
  const double m = model.M(v);
  const double b2 = 1.0 + v.squaredNorm();
  Eigen::VectorXd g = 0.5 * model.drift(v) - 2.0 / b2 * v;
  return m * m * g.squaredNorm() / b2;
}

double a2_integral_up_to(const EquilibriumModel& model, double R) {
  if (model.d() == 1) {
    return integrate_line_truncated(
        [&model](double v) {
          Eigen::VectorXd vv(1);
          vv[0] = v;
          return a2_integrand(model, vv);
        },
        R, 1e-10);
  }
  // d = 2: polar with trapezoid angular rule
  const int na = 128;
  const double U = std::asinh(R);
  return integrate_adaptive(
      [&model, na](double u) {
        const double r = std::sinh(u);
        double acc = 0.0;
        for (int k = 0; k < na; ++k) {
          const double th = 2.0 * M_PI * k / na;
          Eigen::VectorXd v(2);
          v << r * std::cos(th), r * std::sin(th);
          acc += a2_integrand(model, v);
        }
        return acc * (2.0 * M_PI / na) * r * std::cosh(u);
      },
      1e-8, U, 1e-10);
}

}  // namespace

AssumptionReport check_assumptions(const EquilibriumModel& model,
                                   const ScanSpec& scan) {
  AssumptionReport rep;
  rep.beta = model.beta();
  rep.d = model.d();
  const int d = model.d();
  const double gamma = model.gamma();
  rep.beta_in_range = (rep.beta > d && rep.beta < d + 4);
  if (!rep.beta_in_range)
    rep.notes += "beta outside (d, d+4): fractional regime assumptions fail; ";

  // --- A1: min/max of <v>^gamma M over the scan grid -----------------------
  {
    double lo = 1e300, hi = 0.0;
    const int n = scan.resolution;
    const double Umax = std::asinh(scan.radius);
    const int ndir = (d == 1) ? 2 : 16;
    for (int i = 0; i <= n; ++i) {
      const double r = std::sinh(Umax * i / n);
      for (int k = 0; k < ndir; ++k) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
        if (d == 1) {
          v[0] = (k == 0) ? r : -r;
        } else {
          const double th = 2.0 * M_PI * k / ndir;
          v[0] = r * std::cos(th);
          v[1] = r * std::sin(th);
        }
        const double t = model.M(v) * std::pow(bracket(r), gamma);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
    }
    rep.c1 = lo;
    rep.c2 = hi;
    rep.a1_pass = (lo > 0.0) && std::isfinite(hi) &&
                  lo >= 0.99 * model.c1() && hi <= 1.01 * model.c2();
  }

  // --- A2: finite quadrature plus extrapolated tail ------------------------
  {
    const double R = std::min(scan.radius, 1e3);
    const double bulk = a2_integral_up_to(model, R);
    const double bulk2 = a2_integral_up_to(model, 2.0 * R);
    // increments decay geometrically like 2^{-(2 gamma + 4 - d)} per doubling
    const double ratio = std::pow(2.0, -(2.0 * gamma + 4.0 - d));
    const double tail = (bulk2 - bulk) * ratio / (1.0 - ratio);
    rep.a2_integral = bulk2 + tail;
    rep.a2_tail_fraction = std::abs(tail) / rep.a2_integral;
    rep.a2_pass = std::isfinite(rep.a2_integral) && rep.a2_tail_fraction < 0.01;
  }

  // --- A3: max |m_eta - m| on an annulus for decreasing eta ----------------
  {
    rep.a3_samples.clear();
    const double r0 = 0.5, r1 = 5.0;
    const int ns = 64;
    for (double eta : scan.a3_etas) {
      const double scale = std::pow(eta, -1.0 / 3.0);
      const double mscale = std::pow(eta, -gamma / 3.0);
      double err = 0.0;
      for (int i = 0; i < ns; ++i) {
        const double r = r0 + (r1 - r0) * i / (ns - 1);
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          Eigen::VectorXd s = Eigen::VectorXd::Zero(d);
          s[0] = sgn * r;
          Eigen::VectorXd v = scale * s;
          err = std::max(err, std::abs(mscale * model.M(v) - model.limit_m(s)));
        }
      }
      rep.a3_samples.push_back(err);
    }
    rep.a3_pass = true;
    for (size_t i = 1; i < rep.a3_samples.size(); ++i)
      if (!(rep.a3_samples[i] < rep.a3_samples[i - 1])) rep.a3_pass = false;
  }

  // --- A5: decay bound of W from dyadic tail windows -----------------------
  {
    // envelope max|W| per dyadic window [2^k, 2^{k+1}], then a slope fit
    std::vector<double> lr, lw;
    double sup_w2 = 0.0;
    for (int k = 2; (1 << (k + 1)) <= scan.radius; ++k) {
      const double a = double(1 << k), b = double(1 << (k + 1));
      double wmax = 0.0;
      for (int i = 0; i < 64; ++i) {
        const double r = a + (b - a) * i / 63.0;
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
        v[0] = r;
        const double w = std::abs(model.W(v));
        wmax = std::max(wmax, w);
        sup_w2 = std::max(sup_w2, (1.0 + r * r) * w);
      }
      lr.push_back(std::log(std::sqrt(a * b)));
      lw.push_back(std::log(std::max(wmax, 1e-300)));
    }
    double sxx = 0, sxy = 0, sx = 0, sy = 0;
    const double n = double(lr.size());
    for (size_t i = 0; i < lr.size(); ++i) {
      sx += lr[i];
      sy += lw[i];
      sxx += lr[i] * lr[i];
      sxy += lr[i] * lw[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.sigma = std::max(0.0, -slope);
    rep.a5_pass = rep.sigma >= 2.0 - 0.1;
    if (!rep.a5_pass)
      rep.notes += "A5: potential decays slower than <v>^-2; ";
  }

  return rep;
}

}  // namespace fpspec
