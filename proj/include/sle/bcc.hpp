#pragma once

#include <complex>

#include "sle/correlators.hpp"

namespace sle::bcc {

inline constexpr double kA = 0.7071067811865475244008;  // a = 1/sqrt(2)

// One-point functions in the strip identity chart with the boundary
// insertion e^{(.) i a Phi+(p, q-)} at p on the Dirichlet arc.

// hat E[Phi(z)] = 2 a arg tanh((z-p)/4)
double mean_shift(cplx z, cplx p = 0.0);
// hat E[J(z)] = -i a / (2 sinh((z-p)/2))
cplx hat_j(cplx z, cplx p = 0.0);
// hat E[T(z)] = 1/48 + a^2 / (8 sinh^2((z-p)/2))
cplx hat_t(cplx z, cplx p = 0.0);
// hat E[V^alpha(z)] = (4 tan(Im z / 2))^{alpha^2} e^{alpha mean_shift}
double hat_vertex(double alpha, cplx z, cplx p = 0.0);
// hat E[V^alpha(z, z0)] =
//   tanh((z-z0)/4)^{alpha^2} (tanh((z-p)/4)/tanh((z0-p)/4))^{-i alpha a}
cplx hat_bivertex(cplx alpha, cplx z, cplx z0, cplx p = 0.0);

// Max relative residual between the Wick-engine route (correlate with the
// boundary insertion) and the closed forms above, over a grid of points.
double hat_consistency_residual(cplx p = 0.0);

}  // namespace sle::bcc
