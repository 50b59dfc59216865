#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace sle {

using cplx = std::complex<double>;

// L(u) = log tanh(u/4), the building block of every strip kernel, and its
// derivatives up to order 6 (closed forms).
cplx strip_log_tanh(cplx u);
cplx strip_log_tanh_deriv(int n, cplx u);

// Green's function of the mixed Dirichlet-Neumann problem.
double green_strip(cplx zeta, cplx z);
double green_quadrant(cplx zeta, cplx z);

// 2-point kernels in the strip identity chart.
cplx kernel_j_phi(cplx zeta, cplx z);  // E[J(zeta) Phi(z)]
cplx kernel_j_j(cplx zeta, cplx z);    // E[J(zeta) J(z)]

// Complex Green's function G+(z, z1) (principal branch; 2G+ = G + i G~).
cplx complex_green(cplx z, cplx z1);

// log C(z) with C = 4 tan(Im z / 2) in the strip identity chart.
double vertex_log_c(cplx z);

struct FieldSpec {
  enum class Base { Phi, PhiPlus, J, Jbar, T, Vertex, BiVertex, RootedVertex };
  Base base = Base::Phi;
  int dz = 0;     // holomorphic derivative order (Phi, PhiPlus)
  int dzbar = 0;  // antiholomorphic derivative order (Phi)
  cplx alpha{};   // vertex charge
  cplx z0{};      // second point (PhiPlus, BiVertex)

  static FieldSpec phi(int dz = 0, int dzbar = 0) {
    return FieldSpec{Base::Phi, dz, dzbar, 0.0, 0.0};
  }
  static FieldSpec j() { return FieldSpec{Base::J, 0, 0, 0.0, 0.0}; }
  static FieldSpec jbar() { return FieldSpec{Base::Jbar, 0, 0, 0.0, 0.0}; }
  static FieldSpec t() { return FieldSpec{Base::T, 0, 0, 0.0, 0.0}; }
  static FieldSpec vertex(cplx alpha) {
    return FieldSpec{Base::Vertex, 0, 0, alpha, 0.0};
  }
  static FieldSpec bi_vertex(cplx alpha, cplx z0) {
    return FieldSpec{Base::BiVertex, 0, 0, alpha, z0};
  }
  static FieldSpec rooted_vertex(cplx alpha) {
    return FieldSpec{Base::RootedVertex, 0, 0, alpha, 0.0};
  }
  static FieldSpec phi_plus(cplx z0, int dz = 0) {
    return FieldSpec{Base::PhiPlus, dz, 0, 0.0, z0};
  }
};

// Boundary condition changing insertion e^{\odot i a Phi+(p, q-)}.
struct Insertion {
  cplx p{0.0, 0.0};                     // on the Dirichlet arc
  double a = 0.7071067811865475244008;  // 1/sqrt(2)
};

struct CorrelationRequest {
  std::vector<std::pair<FieldSpec, cplx>> factors;
  std::optional<Insertion> insertion;
};

// n-point correlation function in the strip identity chart, by Gaussian Wick
// calculus with vertex exponential moments and insertion mean shifts.
cplx correlate(const CorrelationRequest& req);

// Expectation of the n-th OPE power of Phi at z via the Hermite recursion,
// and the closed form (2m)! c^m / m!.
double ope_power_expectation_recursive(int n, cplx z);
double ope_power_expectation_closed(int n, cplx z);
double ope_coefficient_check(int n);
// | sum_{n<=N} alpha^n E[Phi^{*n}]/n! - C^{alpha^2} | at z.
double vertex_series_residual(double alpha, cplx z, int terms);

}  // namespace sle
