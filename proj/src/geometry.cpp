#include "sle/geometry.hpp"

#include <cmath>

#include "sle/errors.hpp"

namespace sle {

namespace {

constexpr double kMarkedPointRadius = 1e-9;

void check_not_marked(Chart chart, cplx z) {
  auto near = [&](cplx p) { return std::abs(z - p) < kMarkedPointRadius; };
  switch (chart) {
    case Chart::StripInf:
    case Chart::Strip0:
      break;  // finite marked point p=0 is regular for all canonical maps
    case Chart::HalfPlanePM1:
      if (near(1.0) || near(-1.0))
        throw Error(ErrorCode::PoleAtMarkedPoint, "point at q+- = +-1");
      break;
    case Chart::HalfPlane0Inf:
    case Chart::Quadrant:
      if (near(0.0))
        throw Error(ErrorCode::PoleAtMarkedPoint, "point at marked point 0");
      break;
  }
}

}  // namespace

Jet3 to_strip_jet(Chart chart, cplx z) {
  check_not_marked(chart, z);
  switch (chart) {
    case Chart::StripInf:
    case Chart::Strip0:
      return identity_jet(z);
    case Chart::HalfPlanePM1: {
      // w = 2 atanh(z) = log((1+z)/(1-z))
      const cplx q = 1.0 - z * z;
      return Jet3{std::log((1.0 + z) / (1.0 - z)), 2.0 / q, 4.0 * z / (q * q),
                  (4.0 + 12.0 * z * z) / (q * q * q)};
    }
    case Chart::HalfPlane0Inf:
      return Jet3{std::log(z), 1.0 / z, -1.0 / (z * z), 2.0 / (z * z * z)};
    case Chart::Quadrant:
      return Jet3{2.0 * std::log(z), 2.0 / z, -2.0 / (z * z),
                  4.0 / (z * z * z)};
  }
  throw Error(ErrorCode::Unsupported, "unknown chart");
}

Jet3 from_strip_jet(Chart chart, cplx w) {
  switch (chart) {
    case Chart::StripInf:
    case Chart::Strip0:
      return identity_jet(w);
    case Chart::HalfPlanePM1: {
      const cplx z = std::tanh(w / 2.0);
      const cplx d1 = (1.0 - z * z) / 2.0;
      const cplx d2 = -z * d1;
      const cplx d3 = -d1 * d1 - z * d2;
      return Jet3{z, d1, d2, d3};
    }
    case Chart::HalfPlane0Inf: {
      const cplx e = std::exp(w);
      return Jet3{e, e, e, e};
    }
    case Chart::Quadrant: {
      const cplx e = std::exp(w / 2.0);
      return Jet3{e, e / 2.0, e / 4.0, e / 8.0};
    }
  }
  throw Error(ErrorCode::Unsupported, "unknown chart");
}

Jet3 transition_jet(Chart from, Chart to, cplx z) {
  const Jet3 s = to_strip_jet(from, z);
  const Jet3 t = from_strip_jet(to, s.f);
  return compose(t, s);
}

cplx map_point(Chart from, Chart to, cplx z) {
  return transition_jet(from, to, z).f;
}

cplx schwarzian(cplx h1, cplx h2, cplx h3) {
  if (h1 == cplx(0.0))
    throw Error(ErrorCode::DegenerateMap, "schwarzian: h' = 0");
  const cplx r = h2 / h1;
  return h3 / h1 - 1.5 * r * r;
}

cplx schwarzian(const Jet3& h) { return schwarzian(h.d1, h.d2, h.d3); }

cplx transport(cplx value_in_B, const ConformalType& type, const Jet3& h) {
  if (h.d1 == cplx(0.0))
    throw Error(ErrorCode::DegenerateMap, "transport: h' = 0");
  switch (type.kind) {
    case ConformalType::Kind::Differential:
      return std::pow(h.d1, type.lambda) *
             std::pow(std::conj(h.d1), type.lambda_star) * value_in_B;
    case ConformalType::Kind::PrePreSchwarzian:
      return value_in_B + type.mu * std::log(h.d1);
    case ConformalType::Kind::PreSchwarzian:
      return h.d1 * value_in_B + type.mu * h.d2 / h.d1;
    case ConformalType::Kind::Schwarzian:
      return h.d1 * h.d1 * value_in_B + type.mu * schwarzian(h);
  }
  throw Error(ErrorCode::Unsupported, "unknown conformal type");
}

VectorFieldJet loewner_vector_field(cplx xi, cplx z) {
  if (std::abs(z - xi) < 1e-14)
    throw Error(ErrorCode::PoleAtDriving, "vector field evaluated at xi");
  // v = P(z) / (2 (xi - z)),  P(z) = (1 - z^2)(1 - xi z)
  const cplx p0 = (1.0 - z * z) * (1.0 - xi * z);
  const cplx p1 = -xi - 2.0 * z + 3.0 * xi * z * z;
  const cplx p2 = -2.0 + 6.0 * xi * z;
  const cplx p3 = 6.0 * xi;
  const cplx q = 1.0 / (xi - z);
  // d^m/dz^m (xi - z)^{-1} = m! (xi - z)^{-m-1}
  auto qd = [&](int m) {
    cplx r = q;
    double fact = 1.0;
    for (int k = 1; k <= m; ++k) {
      r *= q;
      fact *= k;
    }
    return fact * r;
  };
  auto binom = [](int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - j + 1) / j;
    return r;
  };
  const cplx p[4] = {p0, p1, p2, p3};
  VectorFieldJet out;
  cplx* slots[4] = {&out.v, &out.d1, &out.d2, &out.d3};
  for (int n = 0; n <= 3; ++n) {
    cplx acc = 0.0;
    for (int k = 0; k <= n && k <= 3; ++k)
      acc += binom(n, k) * p[k] * qd(n - k);
    *slots[n] = acc / 2.0;
  }
  return out;
}

LieCoefficients lie_coefficients(const VectorFieldJet& v,
                                 const ConformalType& type, LiePart part) {
  LieCoefficients c;
  if (type.kind == ConformalType::Kind::Differential) {
    const LieCoefficients plus{v.v, 0.0, type.lambda * v.d1, 0.0};
    const LieCoefficients minus{0.0, std::conj(v.v),
                                type.lambda_star * std::conj(v.d1), 0.0};
    switch (part) {
      case LiePart::Plus:
        return plus;
      case LiePart::Minus:
        return minus;
      case LiePart::Full:
        return LieCoefficients{plus.c_dz, minus.c_dzbar,
                               plus.c_X + minus.c_X, 0.0};
    }
  }
  // The form transformation laws are C-linear, so L^- vanishes and
  // L^+ coincides with the full Lie derivative.
  if (part == LiePart::Minus) return LieCoefficients{};
  switch (type.kind) {
    case ConformalType::Kind::PrePreSchwarzian:
      return LieCoefficients{v.v, 0.0, 0.0, type.mu * v.d1};
    case ConformalType::Kind::PreSchwarzian:
      return LieCoefficients{v.v, 0.0, v.d1, type.mu * v.d1};
    case ConformalType::Kind::Schwarzian:
      return LieCoefficients{v.v, 0.0, 2.0 * v.d1, type.mu * v.d3};
    default:
      break;
  }
  throw Error(ErrorCode::Unsupported, "unknown conformal type");
}

cplx apply_lie(const LieCoefficients& c, cplx X, cplx dX, cplx dbarX) {
  return c.c_dz * dX + c.c_dzbar * dbarX + c.c_X * X + c.inhom;
}

}  // namespace sle
