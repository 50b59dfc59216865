#pragma once

#include <complex>

#include "sle/jet.hpp"

namespace sle {

// Canonical model domains. Strip coordinates (S = {0 < Im z < pi}) are the
// reference chart; Strip0 additionally marks the seed p = 0.
enum class Chart {
  StripInf,       // (S, -inf, +inf)
  Strip0,         // (S, 0, -inf, +inf)
  HalfPlanePM1,   // (H, -1, 1), seed at 0
  HalfPlane0Inf,  // (H, 0, inf)
  Quadrant,       // first quadrant, Dirichlet on R+, Neumann on iR+
};

struct ConformalType {
  enum class Kind { Differential, PrePreSchwarzian, PreSchwarzian, Schwarzian };
  Kind kind = Kind::Differential;
  cplx lambda{};       // Differential only
  cplx lambda_star{};  // Differential only
  cplx mu{};           // forms only

  static ConformalType differential(cplx l, cplx ls) {
    return ConformalType{Kind::Differential, l, ls, 0.0};
  }
  static ConformalType pre_pre_schwarzian(cplx mu) {
    return ConformalType{Kind::PrePreSchwarzian, 0.0, 0.0, mu};
  }
  static ConformalType pre_schwarzian(cplx mu) {
    return ConformalType{Kind::PreSchwarzian, 0.0, 0.0, mu};
  }
  static ConformalType schwarzian(cplx mu) {
    return ConformalType{Kind::Schwarzian, 0.0, 0.0, mu};
  }
};

// Jet of the canonical map from `chart` coordinates into strip coordinates.
Jet3 to_strip_jet(Chart chart, cplx z);
// Jet of the canonical map from strip coordinates into `chart` coordinates.
Jet3 from_strip_jet(Chart chart, cplx w);
// Transition map h = (chart_to) ∘ (chart_from)^{-1}, as a jet at z
// (z in chart_from coordinates).
Jet3 transition_jet(Chart from, Chart to, cplx z);
cplx map_point(Chart from, Chart to, cplx z);

// S_h = h'''/h' - (3/2)(h''/h')^2
cplx schwarzian(cplx h1, cplx h2, cplx h3);
cplx schwarzian(const Jet3& h);

// Transport a value known in chart B (at the image point h(z)) back to chart
// A at z, where h is the transition jet A -> B.
cplx transport(cplx value_in_B, const ConformalType& type, const Jet3& h);

// Value and first three derivatives of the dipolar Loewner vector field
// v_xi(z) = (1-z^2)/2 * (1-xi z)/(xi-z) in the (H,-1,1) identity chart.
struct VectorFieldJet {
  cplx v{};
  cplx d1{};
  cplx d2{};
  cplx d3{};
};
VectorFieldJet loewner_vector_field(cplx xi, cplx z);

// Coefficients of the Lie derivative as a linear operator on (X, dX, dbarX):
//   L_v X = c_dz * dX + c_dzbar * dbarX + c_X * X + inhom.
struct LieCoefficients {
  cplx c_dz{};
  cplx c_dzbar{};
  cplx c_X{};
  cplx inhom{};
};
enum class LiePart { Full, Plus, Minus };
LieCoefficients lie_coefficients(const VectorFieldJet& v,
                                 const ConformalType& type,
                                 LiePart part = LiePart::Full);
cplx apply_lie(const LieCoefficients& c, cplx X, cplx dX, cplx dbarX);

}  // namespace sle
