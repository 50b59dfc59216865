#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "sle/correlators.hpp"
#include "sle/errors.hpp"
#include "sle/numderiv.hpp"

using namespace sle;
using namespace std::complex_literals;

namespace {
const cplx kZ1{0.3, 1.1};
const cplx kZ2{-0.9, 2.0};
const cplx kZ3{1.7, 0.6};
const cplx kZ4{-0.2, 2.7};
}  // namespace

TEST_CASE("log tanh derivatives match contour differentiation") {
  const cplx u{0.8, 0.9};
  for (int n = 1; n <= 6; ++n) {
    const cplx want = cauchy_derivative(
        [](cplx w) { return strip_log_tanh(w); }, u, n, 0.4, 256);
    const cplx got = strip_log_tanh_deriv(n, u);
    CHECK(std::abs(got - want) < 1e-9 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("strip Green's function boundary values") {
  // Dirichlet on the real line: G -> 0.
  CHECK(std::abs(green_strip(cplx(0.7, 1e-9), kZ1)) < 1e-7);
  // Neumann on Im = pi: normal derivative vanishes.
  const double h = 1e-5;
  const double up = green_strip(cplx(-0.4, M_PI - h), kZ1);
  const double dn = green_strip(cplx(-0.4, M_PI - 2 * h), kZ1);
  CHECK(std::abs(up - dn) / h < 1e-3);
  // Symmetry.
  CHECK(green_strip(kZ1, kZ2) == doctest::Approx(green_strip(kZ2, kZ1)));
  // Short-distance logarithm.
  const cplx d{3e-6, 1e-6};
  CHECK(green_strip(kZ1 + d, kZ1) + std::log(std::abs(d)) ==
        doctest::Approx(vertex_log_c(kZ1)).epsilon(1e-4));
}

TEST_CASE("quadrant Green's function agrees with transported strip kernel") {
  // z -> 2 log z maps the quadrant onto the strip; G is invariant.
  const cplx a{1.3, 0.4}, b{0.5, 1.9};
  const double gq = green_quadrant(a, b);
  const double gs = green_strip(2.0 * std::log(a), 2.0 * std::log(b));
  CHECK(gq == doctest::Approx(gs).epsilon(1e-12));
}

TEST_CASE("current kernels are derivatives of the Green's function") {
  // E[J Phi] = d_zeta (2G) -- check against Wirtinger finite differences.
  auto g = [](cplx zeta) { return cplx(2.0 * green_strip(zeta, kZ1), 0.0); };
  const auto w = wirtinger_fd(g, kZ2, 1e-5);
  CHECK(std::abs(kernel_j_phi(kZ2, kZ1) - w.d) < 1e-8);
  // E[J J] = d_zeta d_z (2G): differentiate kernel_j_phi in z.
  auto jphi = [](cplx z) { return kernel_j_phi(kZ2, z); };
  const auto w2 = wirtinger_fd(jphi, kZ1, 1e-5);
  CHECK(std::abs(kernel_j_j(kZ2, kZ1) - w2.d) < 1e-8);
}

TEST_CASE("complex Green's function has the right real part") {
  // 2 G+ = G + i G~
  CHECK(2.0 * complex_green(kZ1, kZ2).real() ==
        doctest::Approx(green_strip(kZ1, kZ2)).epsilon(1e-12));
}

TEST_CASE("correlate reproduces the pair kernels") {
  const cplx phiphi = correlate({{{FieldSpec::phi(), kZ1},
                                  {FieldSpec::phi(), kZ2}}});
  CHECK(phiphi.real() == doctest::Approx(2.0 * green_strip(kZ1, kZ2)));
  CHECK(std::abs(phiphi.imag()) < 1e-14);

  const cplx jphi =
      correlate({{{FieldSpec::j(), kZ2}, {FieldSpec::phi(), kZ1}}});
  CHECK(std::abs(jphi - kernel_j_phi(kZ2, kZ1)) < 1e-14);

  const cplx jj = correlate({{{FieldSpec::j(), kZ2}, {FieldSpec::j(), kZ1}}});
  CHECK(std::abs(jj - kernel_j_j(kZ2, kZ1)) < 1e-14);
}

TEST_CASE("four-point function satisfies the Isserlis identity") {
  auto g = [](cplx a, cplx b) { return 2.0 * green_strip(a, b); };
  const double want = g(kZ1, kZ2) * g(kZ3, kZ4) + g(kZ1, kZ3) * g(kZ2, kZ4) +
                      g(kZ1, kZ4) * g(kZ2, kZ3);
  const cplx got = correlate({{{FieldSpec::phi(), kZ1},
                               {FieldSpec::phi(), kZ2},
                               {FieldSpec::phi(), kZ3},
                               {FieldSpec::phi(), kZ4}}});
  CHECK(got.real() == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("odd correlations vanish without an insertion") {
  const cplx three = correlate({{{FieldSpec::phi(), kZ1},
                                 {FieldSpec::phi(), kZ2},
                                 {FieldSpec::phi(), kZ3}}});
  CHECK(std::abs(three) < 1e-14);
}

TEST_CASE("stress tensor one-point function is central") {
  const cplx t = correlate({{{FieldSpec::t(), kZ1}}});
  CHECK(std::abs(t - cplx(1.0 / 48.0, 0.0)) < 1e-15);
}

TEST_CASE("T with J expands by Wick's rule") {
  // E[T(zeta) J(z)] = -1/2 * 2 E[J(zeta)J(z)] E[J(zeta)] + ... = 0 by
  // oddness; check the two-current insertion instead:
  // E[T(zeta) J(z1) J(z2)] = -E[J(zeta)J(z1)] E[J(zeta)J(z2)]
  //                          + (1/48) E[J(z1)J(z2)].
  const cplx zeta{0.4, 1.9};
  const cplx got = correlate({{{FieldSpec::t(), zeta},
                               {FieldSpec::j(), kZ1},
                               {FieldSpec::j(), kZ2}}});
  const cplx want = -kernel_j_j(zeta, kZ1) * kernel_j_j(zeta, kZ2) +
                    kernel_j_j(kZ1, kZ2) / 48.0;
  CHECK(std::abs(got - want) < 1e-14);
}

TEST_CASE("vertex one-point function matches the exponential moment") {
  const double alpha = 0.45;
  const cplx got = correlate({{{FieldSpec::vertex(alpha), kZ1}}});
  CHECK(got.real() ==
        doctest::Approx(std::exp(alpha * alpha * vertex_log_c(kZ1))));
  CHECK(std::abs(got.imag()) < 1e-14);
}

TEST_CASE("two vertex fields couple through the Green's function") {
  const double a = 0.3, b = -0.55;
  const cplx got = correlate(
      {{{FieldSpec::vertex(a), kZ1}, {FieldSpec::vertex(b), kZ2}}});
  const double want = std::exp(a * a * vertex_log_c(kZ1) +
                               b * b * vertex_log_c(kZ2) +
                               2.0 * a * b * green_strip(kZ1, kZ2));
  CHECK(got.real() == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("vertex-current correlation matches the shifted mean") {
  // E[V^a(z) J(z1)] = E[V^a] * a * E[Phi(z) J(z1)].
  const double a = 0.4;
  const cplx got = correlate(
      {{{FieldSpec::vertex(a), kZ1}, {FieldSpec::j(), kZ2}}});
  const cplx want = std::exp(a * a * vertex_log_c(kZ1)) * a *
                    kernel_j_phi(kZ2, kZ1);
  CHECK(std::abs(got - want) < 1e-12);
}

TEST_CASE("higher derivative orders are rejected") {
  CHECK_THROWS_AS(correlate({{{FieldSpec::phi(4, 0), kZ1},
                              {FieldSpec::phi(), kZ2}}}),
                  Error);
  CHECK_THROWS_AS(correlate({{{FieldSpec::phi(), kZ1},
                              {FieldSpec::phi(), kZ1}}}),
                  Error);
}

TEST_CASE("derivative fields differentiate the pair correlation") {
  // d^2/dz^2 on the first slot of E[Phi Phi].
  auto f = [](cplx z) {
    return correlate({{{FieldSpec::phi(), z}, {FieldSpec::phi(), kZ2}}});
  };
  const auto w1 = wirtinger_fd(f, kZ1, 1e-4);
  auto fz = [](cplx z) {
    return correlate({{{FieldSpec::phi(1, 0), z}, {FieldSpec::phi(), kZ2}}});
  };
  CHECK(std::abs(fz(kZ1) - w1.d) < 1e-7);
  const auto w2 = wirtinger_fd(fz, kZ1, 1e-4);
  const cplx d2 = correlate(
      {{{FieldSpec::phi(2, 0), kZ1}, {FieldSpec::phi(), kZ2}}});
  CHECK(std::abs(d2 - w2.d) < 1e-6);
  const cplx dbar = correlate(
      {{{FieldSpec::phi(0, 1), kZ1}, {FieldSpec::phi(), kZ2}}});
  CHECK(std::abs(dbar - w1.dbar) < 1e-7);
}

TEST_CASE("OPE power expectations: recursion vs closed form") {
  // n = 2 includes the numerical OPE limit at |zeta - z| = 1e-4, whose
  // truncation remainder is O(1e-8); all algebraic identities are exact.
  for (int n = 0; n <= 6; ++n) CHECK(ope_coefficient_check(n) < 1e-6);
}

TEST_CASE("vertex series sums to the closed form") {
  CHECK(vertex_series_residual(0.3, cplx(0.0, M_PI / 2), 40) < 1e-10);
  CHECK(vertex_series_residual(0.3, cplx(0.8, 1.9), 40) < 1e-10);
}

TEST_CASE("bi-vertex pair matches its closed form") {
  // E[V^a(z, z0)] = tanh((z-z0)/4)^{a^2} * E[e^{(.) a Phi+(z,z0)}] = prefactor
  // since the chiral pair has zero self-energy beyond the prefactor.
  const double a = 0.5;
  const cplx z0{0.1, 0.4};
  const cplx got = correlate({{{FieldSpec::bi_vertex(a, z0), kZ1}}});
  const cplx want = std::exp(a * a * strip_log_tanh(kZ1 - z0));
  CHECK(std::abs(got - want) < 1e-12);
}
