#pragma once

#include <complex>
#include <functional>

namespace sle {

using cplx = std::complex<double>;
using CFunc = std::function<cplx(cplx)>;

// n-th derivative of a holomorphic f at z via the Cauchy integral on a circle
// of radius r (trapezoid rule; spectrally accurate for analytic integrands).
cplx cauchy_derivative(const CFunc& f, cplx z, int order, double r,
                       int nodes = 32);

// Laurent coefficient of order m in the expansion of f about z, extracted on
// the circle |zeta - z| = r.
cplx laurent_coefficient(const CFunc& f, cplx z, int m, double r,
                         int nodes = 64);

// Wirtinger partials d/dz, d/dzbar by central differences in x and y.
struct Wirtinger {
  cplx d;
  cplx dbar;
};
Wirtinger wirtinger_fd(const CFunc& f, cplx z, double h = 1e-5);

// Second-order central difference along a complex direction (|dir| = 1).
cplx central_diff(const CFunc& f, cplx z, cplx dir, double h);
cplx central_diff2(const CFunc& f, cplx z, cplx dir, double h);

// 5-point (fourth-order) first and second derivatives of a function of a
// real parameter.
double fd5_first(const std::function<double(double)>& f, double x, double h);
double fd5_second(const std::function<double(double)>& f, double x, double h);
cplx fd5_first(const std::function<cplx(double)>& f, double x, double h);
cplx fd5_second(const std::function<cplx(double)>& f, double x, double h);

// 3-point (second-order) variants, used for discretization-order diagnostics.
cplx fd3_first(const std::function<cplx(double)>& f, double x, double h);
cplx fd3_second(const std::function<cplx(double)>& f, double x, double h);

}  // namespace sle
