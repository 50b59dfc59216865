#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sle/bcc.hpp"
#include "sle/errors.hpp"
#include "sle/numderiv.hpp"
#include "sle/virasoro.hpp"

using namespace sle;
using namespace sle::virasoro;

TEST_CASE("stress tensor one-point function per chart") {
  CHECK(virasoro_onepoint(cplx(0.3, 1.1), Chart::StripInf) ==
        cplx(1.0 / 48.0, 0.0));
  // (H,-1,1) identity chart: E T(z) = (1/4) / (1-z^2)^2.
  const cplx z{0.2, 0.6};
  const cplx want = 0.25 / std::pow(1.0 - z * z, 2);
  CHECK(std::abs(virasoro_onepoint(z, Chart::HalfPlanePM1) - want) < 1e-10);
  // Engine route: E[T] in the strip via Wick calculus.
  const cplx engine = correlate({{{FieldSpec::t(), cplx(0.4, 1.9)}}});
  CHECK(std::abs(engine - cplx(1.0 / 48.0, 0.0)) < 1e-14);
}

TEST_CASE("hat T matches the transported one-point function at a = 0") {
  // Without insertion, bcc::hat_t minus the insertion part is E T = 1/48;
  // check the singular part cancels in the far-field limit.
  CHECK(std::abs(bcc::hat_t(cplx(30.0, 1.0)) - cplx(1.0 / 48.0, 0.0)) < 1e-10);
}

TEST_CASE("stress tensor OPE with the two-point vertex") {
  const auto rep =
      ward_ope_bivertex_check(cplx(0.2, 1.4), cplx(-0.9, 0.7), 1e-2);
  CHECK(rep.pass());
  // No cubic pole: third residual entry is absolute and tiny.
  CHECK(rep.residuals[2] < 1e-8);
  // Radius independence across a decade.
  CHECK(rep.residuals[3] < 1e-5);
  CHECK_THROWS_AS(ward_ope_bivertex_check(cplx(0.2, 1.4), cplx(0.21, 1.4), 1e-2),
                  Error);
}

TEST_CASE("mode actions on the rooted vertex") {
  CHECK(mode_action_check(1).max_residual < 1e-7);
  CHECK(mode_action_check(0).pass());
  CHECK(mode_action_check(-1).pass());
  CHECK(mode_action_check(-2).pass());
}

TEST_CASE("Ward equation in the half-plane chart") {
  const auto rep = ward_equation_check();
  CHECK(rep.pass());
}

TEST_CASE("Ward equation residual scales as O(h^2)") {
  const double r1 = ward_equation_check(2e-3).max_residual;
  const double r2 = ward_equation_check(1e-3).max_residual;
  CHECK(r1 / r2 > 2.5);
  CHECK(r1 / r2 < 6.0);
}

TEST_CASE("BPZ-Cardy equation for the closed-form observables") {
  for (double xi : {-0.6, -0.2, 0.0, 0.3, 0.7}) {
    CHECK(bpz_cardy_check(BpzObservable::Phi, xi).pass());
    CHECK(bpz_cardy_check(BpzObservable::J, xi).pass());
    CHECK(bpz_cardy_check(BpzObservable::T, xi).pass());
    CHECK(bpz_cardy_check(BpzObservable::Vertex, xi).pass());
  }
  CHECK_THROWS_AS(bpz_cardy_check(BpzObservable::Phi, 0.99), Error);
}

TEST_CASE("BPZ-Cardy symmetry: xi = 0, z on the imaginary axis") {
  // Both sides are real by reflection symmetry; compare imaginary parts.
  const cplx z{0.0, 0.8};
  const VectorFieldJet v = loewner_vector_field(cplx(0.0), z);
  auto hx = [&](cplx w) {
    return bpz_hat_expectation(BpzObservable::Phi, 0.0, w, 0.0);
  };
  const Wirtinger d = wirtinger_fd(hx, z, 1e-5);
  const cplx lhs = apply_lie(
      lie_coefficients(v, ConformalType::differential(0.0, 0.0)), hx(z), d.d,
      d.dbar);
  CHECK(std::abs(lhs.imag()) < 1e-10);
}
