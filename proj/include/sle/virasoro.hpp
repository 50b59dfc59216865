#pragma once

#include <string>
#include <vector>

#include "sle/correlators.hpp"
#include "sle/geometry.hpp"

namespace sle::virasoro {

struct IdentityReport {
  std::string name;
  std::vector<cplx> points;        // evaluation points, parallel to residuals
  std::vector<double> residuals;
  double max_residual = 0.0;
  double tolerance = 0.0;
  cplx worst_point{};

  void record(cplx point, double residual) {
    points.push_back(point);
    residuals.push_back(residual);
    if (residual > max_residual) {
      max_residual = residual;
      worst_point = point;
    }
  }
  bool pass() const {
    return std::isfinite(max_residual) && max_residual < tolerance;
  }
};

// E T(z) in the requested chart: 1/48 in the strip identity chart,
// transported as a Schwarzian form of order 1/12 elsewhere.
cplx virasoro_onepoint(cplx z, Chart chart);

// T(zeta) V^alpha(z, z0) ~ -(alpha^2/2) V/(zeta-z)^2 + dV/(zeta-z), checked
// at correlation level against a Phi probe by contour extraction of the
// Laurent coefficients on |zeta - z| = radius.
IdentityReport ward_ope_bivertex_check(cplx z, cplx z0, double radius);

// Virasoro mode actions on the rooted vertex V*^{ia} (a = 1/sqrt 2):
// L1 V = 0, L0 V = V/4, L-1 V = dV, L-2 V = T*V = d^2 V.
IdentityReport mode_action_check(int n);

// Ward's equation for V*^{ia} with a Phi probe, in the (H,-1,1) identity
// chart; z-derivatives on the right-hand side use 3-point central
// differences with step fd_step (residual scales as O(fd_step^2)).
IdentityReport ward_equation_check(double fd_step = 3e-4);

enum class BpzObservable { Phi, J, T, Vertex };

// hat E_xi[L_{v_xi} X] = ((1-xi^2)^2/2 d^2_xi - xi(1-xi^2) d_xi) hat E_xi[X]
// in the (H,-1,1) identity chart; xi-derivatives use 5-point central
// differences with step fd_step.
IdentityReport bpz_cardy_check(BpzObservable kind, double xi,
                               double alpha = 0.25, double fd_step = 1e-4);

// hat E_xi[X(z)] in the (H,-1,1) chart with the insertion at xi in (-1,1).
cplx bpz_hat_expectation(BpzObservable kind, double xi, cplx z, double alpha);

}  // namespace sle::virasoro
