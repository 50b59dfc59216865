#include "sle/virasoro.hpp"

#include <cmath>

#include "sle/bcc.hpp"
#include "sle/errors.hpp"
#include "sle/numderiv.hpp"

namespace sle::virasoro {

namespace {

const cplx kIa{0.0, bcc::kA};  // rooted vertex charge ia, a = 1/sqrt(2)

// E[V*^{ia}(z) Phi(z1)] in the strip identity chart, with optional
// derivatives on the probe.
cplx ev_phi_strip(cplx z, cplx z1, int j = 0, int k = 0) {
  return correlate({{{FieldSpec::rooted_vertex(kIa), z},
                     {FieldSpec::phi(j, k), z1}}});
}

// Same correlation in the (H,-1,1) identity chart. V* carries the rooted
// prefactor (w')^{a^2/2}; Phi is a scalar, so probe derivatives pick up
// chain-rule factors of h'(z1).
cplx ev_phi_h(cplx z, cplx z1, int j = 0, int k = 0) {
  const Jet3 hz = to_strip_jet(Chart::HalfPlanePM1, z);
  const Jet3 h1 = to_strip_jet(Chart::HalfPlanePM1, z1);
  cplx val = ev_phi_strip(hz.f, h1.f, j, k);
  for (int m = 0; m < j; ++m) val *= h1.d1;
  for (int m = 0; m < k; ++m) val *= std::conj(h1.d1);
  return std::pow(hz.d1, 0.25) * val;
}

}  // namespace

cplx virasoro_onepoint(cplx z, Chart chart) {
  if (chart == Chart::StripInf || chart == Chart::Strip0)
    return cplx(1.0 / 48.0, 0.0);
  const Jet3 h = to_strip_jet(chart, z);
  return transport(cplx(1.0 / 48.0, 0.0),
                   ConformalType::schwarzian(1.0 / 12.0), h);
}

IdentityReport ward_ope_bivertex_check(cplx z, cplx z0, double radius) {
  const double alpha = 0.5;
  const cplx z1 = z + cplx(1.4, 0.8);  // probe, well off the contour
  const double clearance =
      std::min({std::abs(z - z0), std::abs(z - z1), z.imag(),
                M_PI - z.imag()});
  if (radius >= clearance / 4.0)
    throw Error(ErrorCode::ContourCollision,
                "contour radius too large for the point configuration");

  auto f = [&](cplx zeta) {
    return correlate({{{FieldSpec::t(), zeta},
                       {FieldSpec::bi_vertex(alpha, z0), z},
                       {FieldSpec::phi(), z1}}});
  };
  auto ev = [&](cplx zz) {
    return correlate({{{FieldSpec::bi_vertex(alpha, z0), zz},
                       {FieldSpec::phi(), z1}}});
  };
  const cplx ref = ev(z);
  const cplx dref = cauchy_derivative(ev, z, 1, radius, 64);

  IdentityReport rep;
  rep.name = "stress-tensor OPE with the two-point vertex";
  rep.tolerance = 1e-6;
  const cplx c2 = laurent_coefficient(f, z, -2, radius, 64);
  const cplx c1 = laurent_coefficient(f, z, -1, radius, 64);
  const cplx c3 = laurent_coefficient(f, z, -3, radius, 64);
  rep.record(z, std::abs(c2 + 0.5 * alpha * alpha * ref) / (1.0 + std::abs(ref)));
  rep.record(z, std::abs(c1 - dref) / (1.0 + std::abs(dref)));
  rep.record(z, std::abs(c3));
  // Radius independence across a decade.
  const cplx c2_small = laurent_coefficient(f, z, -2, radius / 10.0, 64);
  rep.record(z, std::abs(c2 - c2_small) / (1.0 + std::abs(c2)));
  return rep;
}

IdentityReport mode_action_check(int n) {
  if (n < -2 || n > 1)
    throw Error(ErrorCode::Unsupported, "mode_action_check: n in {-2..1}");
  IdentityReport rep;
  rep.name = "Virasoro mode action on the rooted vertex, n=" +
             std::to_string(n);
  rep.tolerance = (n == -2) ? 1e-5 : (n == 1) ? 1e-7 : 1e-6;
  const double radius = 0.05;
  const cplx probes[3] = {cplx(1.6, 2.2), cplx(-1.3, 0.7), cplx(0.4, 2.6)};
  const cplx centers[3] = {cplx(0.0, 1.2), cplx(0.8, 1.8), cplx(-0.6, 0.9)};
  for (int i = 0; i < 3; ++i) {
    const cplx z = centers[i], z1 = probes[i];
    auto f = [&](cplx zeta) {
      return correlate({{{FieldSpec::t(), zeta},
                         {FieldSpec::rooted_vertex(kIa), z},
                         {FieldSpec::phi(), z1}}});
    };
    // E[(L_n V)(z) Phi(z1)] is the Laurent coefficient of order -n-2.
    const cplx got = laurent_coefficient(f, z, -n - 2, radius, 64);
    auto ev = [&](cplx zz) { return ev_phi_strip(zz, z1); };
    cplx want;
    switch (n) {
      case 1: want = 0.0; break;
      case 0: want = 0.25 * ev(z); break;
      case -1: want = cauchy_derivative(ev, z, 1, radius, 64); break;
      default: want = cauchy_derivative(ev, z, 2, radius, 64); break;
    }
    const double denom = (n == 1) ? 1.0 : 1.0 + std::abs(want);
    rep.record(z, std::abs(got - want) / denom);
  }
  return rep;
}

IdentityReport ward_equation_check(double fd_step) {
  IdentityReport rep;
  rep.name = "Ward equation for the rooted vertex";
  rep.tolerance = 1e-6;
  const double zs_re[5] = {-0.45, -0.15, 0.05, 0.3, 0.55};
  const double zs_im[5] = {0.55, 0.85, 1.25, 0.7, 1.0};
  const double z1_re[5] = {0.62, -0.7, 0.2, -0.35, 0.45};
  const double z1_im[5] = {1.7, 1.45, 2.3, 2.0, 0.35};
  for (int i = 0; i < 5; ++i) {
    const cplx z(zs_re[i], zs_im[i]);
    for (int j = 0; j < 5; ++j) {
      const cplx z1(z1_re[j], z1_im[j]);
      // Left side: E[V*(z) (L+_{v_z} + L-_{v_zbar}) Phi(z1)], Phi scalar.
      const cplx vplus = loewner_vector_field(z, z1).v;
      const cplx vminus =
          std::conj(loewner_vector_field(std::conj(z), z1).v);
      const cplx lhs =
          vplus * ev_phi_h(z, z1, 1, 0) + vminus * ev_phi_h(z, z1, 0, 1);
      // Right side with L1 V = 0, L0 V = V/4, L-1 V = dV, L-2 V = d^2 V.
      auto e = [&](double s) { return ev_phi_h(z + s, z1); };
      const cplx e0 = ev_phi_h(z, z1);
      const cplx e1 = fd3_first(e, 0.0, fd_step);
      const cplx e2 = fd3_second(e, 0.0, fd_step);
      const cplx one_m = 1.0 - z * z;
      const cplx rhs = 0.5 * one_m * one_m * e2 - 1.5 * z * one_m * e1 +
                       (3.0 * z * z - 1.0) / 8.0 * e0 - e0 / 8.0;
      rep.record(z1, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
  }
  return rep;
}

cplx bpz_hat_expectation(BpzObservable kind, double xi, cplx z, double alpha) {
  const Jet3 hz = to_strip_jet(Chart::HalfPlanePM1, z);
  const cplx p = to_strip_jet(Chart::HalfPlanePM1, cplx(xi, 0.0)).f;
  switch (kind) {
    case BpzObservable::Phi:
      return cplx(bcc::mean_shift(hz.f, p), 0.0);
    case BpzObservable::J:
      return hz.d1 * bcc::hat_j(hz.f, p);
    case BpzObservable::T:
      return hz.d1 * hz.d1 * bcc::hat_t(hz.f, p) + schwarzian(hz) / 12.0;
    case BpzObservable::Vertex:
      return std::pow(std::abs(hz.d1), -alpha * alpha) *
             bcc::hat_vertex(alpha, hz.f, p);
  }
  throw Error(ErrorCode::Unsupported, "unknown observable");
}

IdentityReport bpz_cardy_check(BpzObservable kind, double xi, double alpha,
                               double fd_step) {
  if (std::abs(xi) > 0.95)
    throw Error(ErrorCode::NearMarkedPoint, "xi too close to +-1");
  IdentityReport rep;
  switch (kind) {
    case BpzObservable::Phi: rep.name = "BPZ-Cardy equation for Phi"; break;
    case BpzObservable::J: rep.name = "BPZ-Cardy equation for J"; break;
    case BpzObservable::T: rep.name = "BPZ-Cardy equation for T"; break;
    case BpzObservable::Vertex:
      rep.name = "BPZ-Cardy equation for the one-point vertex";
      break;
  }
  rep.tolerance = (kind == BpzObservable::Phi) ? 1e-6 : 1e-5;
  ConformalType type = ConformalType::differential(0.0, 0.0);
  if (kind == BpzObservable::J) type = ConformalType::differential(1.0, 0.0);
  if (kind == BpzObservable::T) type = ConformalType::schwarzian(1.0 / 12.0);
  if (kind == BpzObservable::Vertex)
    type = ConformalType::differential(-alpha * alpha / 2.0,
                                       -alpha * alpha / 2.0);
  const double xs[10] = {-0.55, -0.4, -0.2, -0.05, 0.1,
                         0.25,  0.4,  0.5,  -0.3,  0.15};
  const double ys[10] = {0.35, 0.6, 0.9, 1.3, 0.5, 0.75, 1.1, 0.45, 1.6, 1.9};
  for (int i = 0; i < 10; ++i) {
    const cplx z(xs[i], ys[i]);
    if (std::abs(z - xi) < 0.2) continue;
    // Left side: Lie derivative along v_xi acting on the z-dependence.
    const VectorFieldJet v = loewner_vector_field(cplx(xi, 0.0), z);
    auto hx = [&](cplx w) { return bpz_hat_expectation(kind, xi, w, alpha); };
    const Wirtinger d = wirtinger_fd(hx, z, 1e-5);
    const cplx lhs = apply_lie(lie_coefficients(v, type), hx(z), d.d, d.dbar);
    // Right side: second-order hypergeometric operator in xi.
    auto g = [&](double x) { return bpz_hat_expectation(kind, x, z, alpha); };
    const cplx g1 = fd5_first(g, xi, fd_step);
    const cplx g2 = fd5_second(g, xi, fd_step);
    const double om = 1.0 - xi * xi;
    const cplx rhs = 0.5 * om * om * g2 - xi * om * g1;
    rep.record(z, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
  }
  return rep;
}

}  // namespace sle::virasoro
