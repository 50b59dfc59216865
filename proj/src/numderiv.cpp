#include "sle/numderiv.hpp"

#include <cmath>
#include <numbers>

namespace sle {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}
}  // namespace

cplx cauchy_derivative(const CFunc& f, cplx z, int order, double r, int nodes) {
  // f^{(n)}(z) = n!/(2*pi*i) \oint f(zeta) (zeta-z)^{-n-1} dzeta
  cplx acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double th = kTwoPi * k / nodes;
    const cplx e = std::polar(1.0, th);
    const cplx zeta = z + r * e;
    // dzeta = i r e dth; (zeta-z)^{-n-1} = (r e)^{-n-1}
    acc += f(zeta) * std::pow(r * e, -order) ;
  }
  return acc * factorial(order) / static_cast<double>(nodes);
}

cplx laurent_coefficient(const CFunc& f, cplx z, int m, double r, int nodes) {
  cplx acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double th = kTwoPi * k / nodes;
    const cplx e = std::polar(1.0, th);
    acc += f(z + r * e) * std::pow(r * e, -m);
  }
  return acc / static_cast<double>(nodes);
}

Wirtinger wirtinger_fd(const CFunc& f, cplx z, double h) {
  const cplx fx = (f(z + h) - f(z - h)) / (2.0 * h);
  const cplx fy = (f(z + cplx(0, h)) - f(z - cplx(0, h))) / (2.0 * h);
  return Wirtinger{0.5 * (fx - cplx(0, 1) * fy), 0.5 * (fx + cplx(0, 1) * fy)};
}

cplx central_diff(const CFunc& f, cplx z, cplx dir, double h) {
  const cplx e = dir * h;
  return (f(z + e) - f(z - e)) / (2.0 * h * dir);
}

cplx central_diff2(const CFunc& f, cplx z, cplx dir, double h) {
  const cplx e = dir * h;
  return (f(z + e) - 2.0 * f(z) + f(z - e)) / (h * h * dir * dir);
}

double fd5_first(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
         (12 * h);
}

double fd5_second(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) -
          f(x - 2 * h)) /
         (12 * h * h);
}

cplx fd5_first(const std::function<cplx(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) /
         (12 * h);
}

cplx fd5_second(const std::function<cplx(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
          f(x - 2 * h)) /
         (12 * h * h);
}

cplx fd3_first(const std::function<cplx(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

cplx fd3_second(const std::function<cplx(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace sle
