#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sle/errors.hpp"
#include "sle/loewner.hpp"

using namespace sle;
using namespace sle::loewner;

TEST_CASE("zero-driving flow matches the cosh identity over 1e4 steps") {
  const std::vector<cplx> pts = {cplx(0.7, 1.2), cplx(-1.4, 0.5),
                                 cplx(2.0, 2.9)};
  LoewnerState s = make_state(pts);
  const DrivingPath drv = DrivingPath::zero(1e-4, 1.0);
  run(s, drv, drv.increments.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx lhs = std::cosh(s.points[i].w / 2.0);
    const cplx rhs = std::exp(0.5) * std::cosh(pts[i] / 2.0);
    CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-12);
    CHECK(s.points[i].w.imag() > 0.0);
    CHECK(s.points[i].w.imag() < M_PI);
  }
}

TEST_CASE("step and run agree for zero driving") {
  LoewnerState a = make_state({cplx(0.3, 1.0)});
  LoewnerState b = make_state({cplx(0.3, 1.0)});
  const DrivingPath drv = DrivingPath::zero(1e-3, 0.1);
  run(a, drv, drv.increments.size());
  for (std::size_t i = 0; i < drv.increments.size(); ++i)
    step(b, 0.0, drv.dt);
  CHECK(std::abs(a.points[0].w - b.points[0].w) < 1e-14);
  CHECK(std::abs(a.points[0].w1 - b.points[0].w1) < 1e-14);
}

TEST_CASE("tracked jet matches finite differences through the composed map") {
  const cplx z{0.4, 1.1};
  const DrivingPath drv = DrivingPath::brownian(4.0, 1e-3, 0.5, 77, 0);
  auto end_w = [&](cplx z0) {
    LoewnerState s = make_state({z0});
    run(s, drv, drv.increments.size());
    REQUIRE(s.points[0].alive);
    return s.points[0].w;
  };
  LoewnerState s = make_state({z});
  run(s, drv, drv.increments.size());
  REQUIRE(s.points[0].alive);
  const double h = 1e-5;
  const cplx d1 = (end_w(z + h) - end_w(z - h)) / (2.0 * h);
  const cplx d2 =
      (end_w(z + h) - 2.0 * end_w(z) + end_w(z - h)) / (h * h);
  CHECK(std::abs(s.points[0].w1 - d1) / std::abs(d1) < 1e-6);
  CHECK(std::abs(s.points[0].w2 - d2) / (1.0 + std::abs(d2)) < 1e-4);
  // Third derivative via five-point stencil; wider step because the
  // third-difference quotient is roundoff-dominated at h = 1e-5.
  const double h3 = 1e-3;
  const cplx d3 = (end_w(z + 2.0 * h3) - 2.0 * end_w(z + h3) +
                   2.0 * end_w(z - h3) - end_w(z - 2.0 * h3)) /
                  (2.0 * h3 * h3 * h3);
  CHECK(std::abs(s.points[0].w3 - d3) / (1.0 + std::abs(d3)) < 1e-3);
  // Continuous log of w' is consistent with the tracked derivative.
  CHECK(std::abs(std::exp(s.points[0].log_w1) - s.points[0].w1) < 1e-10);
}

TEST_CASE("growth jet matches analytic differentiation") {
  const cplx w{0.5, 0.8};
  const double delta = 0.02;
  const Jet3 g = growth_jet(w, delta);
  const double h = 1e-5;
  auto f = [&](cplx u) { return growth_jet(u, delta).f; };
  const cplx d1 = (f(w + h) - f(w - h)) / (2.0 * h);
  const cplx d2 = (f(w + h) - 2.0 * f(w) + f(w - h)) / (h * h);
  CHECK(std::abs(g.d1 - d1) < 1e-9);
  CHECK(std::abs(g.d2 - d2) < 1e-5);
  CHECK_THROWS_AS(growth_jet(w, -1.0), Error);
}

TEST_CASE("hydrodynamic normalization far along the strip") {
  // The vector field tends to 1 for Re w large: g_t(z) ~ z + t, where
  // g_t = w_t + xi_t undoes the driving shift.
  LoewnerState s = make_state({cplx(25.0, 1.5)});
  const DrivingPath drv = DrivingPath::brownian(4.0, 1e-3, 1.0, 5, 3);
  run(s, drv, drv.increments.size());
  double xi = 0.0;
  for (double dxi : drv.increments) xi += dxi;
  CHECK(std::abs(s.points[0].w + xi - s.points[0].z0 - 1.0) < 0.1);
}

TEST_CASE("zero-driving curve is the growing vertical slit") {
  const DrivingPath drv = DrivingPath::zero(1e-3, 1.0);
  const CurveSample c = trace_curve(drv, 1.0, 100);
  REQUIRE(c.tips.size() == 11);
  CHECK(std::abs(c.tips.front()) < 1e-12);  // gamma_0 = 0
  double prev = 0.0;
  for (std::size_t i = 0; i < c.tips.size(); ++i) {
    CHECK(std::abs(c.tips[i].real()) < 1e-8);
    CHECK(c.tips[i].imag() >= prev);
    prev = c.tips[i].imag();
    // Closed form: cos(theta_t / 2) = e^{-t/2}.
    const double want = 2.0 * std::acos(std::exp(-c.times[i] / 2.0));
    CHECK(std::abs(c.tips[i].imag() - want) < 1e-6);
  }
}

TEST_CASE("curve tips stay in the closed strip for random driving") {
  for (std::uint64_t path = 0; path < 20; ++path) {
    const DrivingPath drv = DrivingPath::brownian(4.0, 1e-3, 2.0, 11, path);
    const CurveSample c = trace_curve(drv, 2.0, 200);
    for (cplx tip : c.tips) {
      CHECK(tip.imag() > -1e-9);
      CHECK(tip.imag() < M_PI + 1e-9);
    }
  }
}

TEST_CASE("side classification for the deterministic slit") {
  LoewnerState s = make_state({cplx(-1.0, 0.5), cplx(1.0, 0.5)});
  const DrivingPath drv = DrivingPath::zero(1e-3, 1.0);
  run(s, drv, drv.increments.size());
  CHECK(classify_side(s.points[0]) == Side::Left);
  CHECK(classify_side(s.points[1]) == Side::Right);
}

TEST_CASE("far points keep their side over short horizons") {
  LoewnerState s = make_state({cplx(-30.0, 0.01)});
  const DrivingPath drv = DrivingPath::brownian(4.0, 1e-3, 0.5, 21, 1);
  run(s, drv, drv.increments.size());
  CHECK(classify_side(s.points[0]) == Side::Left);
}

TEST_CASE("driving increments have the right variance and are reproducible") {
  const double kappa = 4.0, dt = 1e-3;
  double sum = 0.0, sum2 = 0.0;
  std::size_t n = 0;
  for (std::uint64_t path = 0; path < 50; ++path) {
    const DrivingPath d = DrivingPath::brownian(kappa, dt, 1.0, 123, path);
    for (double x : d.increments) {
      sum += x;
      sum2 += x * x;
      ++n;
    }
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 3.0 * std::sqrt(kappa * dt / n));
  CHECK(var == doctest::Approx(kappa * dt).epsilon(0.02));
  const DrivingPath a = DrivingPath::brownian(kappa, dt, 1.0, 123, 7);
  const DrivingPath b = DrivingPath::brownian(kappa, dt, 1.0, 123, 7);
  CHECK(a.increments == b.increments);
}

TEST_CASE("refining the driving changes the end state at O(dt)") {
  // Dyadic refinement of the same Brownian path: increments at level m+1 are
  // produced by splitting each level-m increment with a Brownian bridge;
  // here we approximate by comparing two dyadic grids of the same seed via
  // summed fine increments, which keeps the coarse path a function of the
  // fine one.
  const cplx z{0.5, 1.3};
  const double T = 0.25;
  const DrivingPath fine = DrivingPath::brownian(4.0, 1e-4, T, 99, 0);
  DrivingPath coarse;
  coarse.kappa = 4.0;
  coarse.dt = 2e-4;
  for (std::size_t i = 0; i + 1 < fine.increments.size(); i += 2)
    coarse.increments.push_back(fine.increments[i] + fine.increments[i + 1]);
  LoewnerState sf = make_state({z});
  LoewnerState sc = make_state({z});
  run(sf, fine, fine.increments.size());
  run(sc, coarse, coarse.increments.size());
  const double diff = std::abs(sf.points[0].w - sc.points[0].w);
  CHECK(diff < 0.05);  // small perturbation, consistent with O(dt) coupling
  CHECK(diff > 0.0);
}

TEST_CASE("swallowed points record positive increasing swallow times") {
  // Points straight above the seed are swallowed by the vertical slit in
  // order of height.
  LoewnerState s = make_state(
      {cplx(0.0, 0.3), cplx(0.0, 0.6), cplx(0.0, 0.9)});
  const DrivingPath drv = DrivingPath::zero(1e-3, 3.0);
  run(s, drv, drv.increments.size());
  for (const auto& p : s.points) CHECK(!p.alive);
  CHECK(s.points[0].t_swallow <= s.points[1].t_swallow);
  CHECK(s.points[1].t_swallow <= s.points[2].t_swallow);
}
