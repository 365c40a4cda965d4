#pragma once

#include <functional>

namespace fpspec {

// Adaptive Simpson on a finite interval.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-12, int max_depth = 48);

// Integral of f over the whole real line through the substitution
// v = sinh(u), so heavy-tailed integrands become exponentially decaying
// on a finite window.
double integrate_line(const std::function<double(double)>& f,
                      double tol = 1e-12, double u_cut = 40.0);

// Same substitution, restricted to |v| <= R.
double integrate_line_truncated(const std::function<double(double)>& f,
                                double R, double tol = 1e-12);

// \int_0^\infty r^{d-1} f(r) dr with r = sinh(u).
double integrate_radial(int d, const std::function<double(double)>& f,
                        double tol = 1e-12, double u_cut = 40.0);

// Surface area of the unit sphere S^{d-1}.
double sphere_area(int d);

}  // namespace fpspec
