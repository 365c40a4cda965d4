#include "fpspec/quadrature.hpp"

#include <cmath>

#include "fpspec/errors.hpp"

namespace fpspec {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa,
             double b, double fb, double m, double fm, double whole,
             double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth) {
  if (!(a < b)) return a == b ? 0.0 : -integrate_adaptive(f, b, a, tol, max_depth);
  // Seed with a coarse panel split so narrow features are not missed.
  const int seed = 16;
  double total = 0.0;
  const double h = (b - a) / seed;
  for (int i = 0; i < seed; ++i) {
    const double x0 = a + i * h, x1 = a + (i + 1) * h, xm = 0.5 * (x0 + x1);
    const double f0 = f(x0), f1 = f(x1), fm = f(xm);
    const double whole = simpson(f, x0, f0, x1, f1, xm, fm);
    total += adapt(f, x0, f0, x1, f1, xm, fm, whole, tol / seed, max_depth);
  }
  if (!std::isfinite(total)) throw QuadratureFailure("integral is not finite");
  return total;
}

double integrate_line(const std::function<double(double)>& f, double tol,
                      double u_cut) {
  auto g = [&f](double u) {
    const double v = std::sinh(u);
    return f(v) * std::cosh(u);
  };
  return integrate_adaptive(g, -u_cut, u_cut, tol);
}

double integrate_line_truncated(const std::function<double(double)>& f,
                                double R, double tol) {
  const double U = std::asinh(R);
  auto g = [&f](double u) {
    const double v = std::sinh(u);
    return f(v) * std::cosh(u);
  };
  return integrate_adaptive(g, -U, U, tol);
}

double integrate_radial(int d, const std::function<double(double)>& f,
                        double tol, double u_cut) {
  auto g = [&f, d](double u) {
    const double r = std::sinh(u);
    return std::pow(r, d - 1) * f(r) * std::cosh(u);
  };
  return integrate_adaptive(g, 0.0, u_cut, tol);
}

double sphere_area(int d) {
  // S_{d-1} = 2 pi^{d/2} / Gamma(d/2)
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

}  // namespace fpspec
