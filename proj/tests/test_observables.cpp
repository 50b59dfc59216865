#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>

#include "doctest.h"
#include "sle/bcc.hpp"
#include "sle/correlators.hpp"
#include "sle/geometry.hpp"
#include "sle/loewner.hpp"
#include "sle/observables.hpp"

using namespace sle;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

double cnorm(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("catalog covers every transformation law with distinct names") {
  const auto cat = obs::catalog();
  CHECK(cat.size() >= 6);
  std::set<std::string> names;
  std::set<int> kinds;
  int n_pair = 0;
  for (const auto& o : cat) {
    names.insert(o.name);
    kinds.insert(static_cast<int>(o.kind));
    if (o.two_point) ++n_pair;
  }
  CHECK(names.size() == cat.size());
  CHECK(kinds.count(static_cast<int>(obs::Kind::MeanField)) == 1);
  CHECK(kinds.count(static_cast<int>(obs::Kind::Current)) == 1);
  CHECK(kinds.count(static_cast<int>(obs::Kind::Stress)) == 1);
  CHECK(kinds.count(static_cast<int>(obs::Kind::Vertex)) == 1);
  CHECK(n_pair >= 2);
  CHECK(obs::negative_control().kind == obs::Kind::NegativeControl);
}

TEST_CASE("time-zero values reproduce the closed-form one-point functions") {
  const cplx z(0.7, 1.9);
  const cplx z0(-0.4, 2.3);
  auto state = loewner::make_state({z, z0});
  const auto& a = state.points[0];
  const auto& b = state.points[1];
  const cplx pair_log = obs::pair_log_init(a.w, b.w);

  for (const auto& o : obs::catalog()) {
    const cplx got = obs::evaluate(o, a, b, pair_log);
    cplx want;
    switch (o.kind) {
      case obs::Kind::MeanField: want = bcc::mean_shift(z); break;
      case obs::Kind::Current: want = bcc::hat_j(z); break;
      case obs::Kind::Stress: want = bcc::hat_t(z); break;
      case obs::Kind::Vertex: want = bcc::hat_vertex(o.alpha, z); break;
      case obs::Kind::BiVertex: want = bcc::hat_bivertex(o.alpha, z, z0); break;
      case obs::Kind::PhiPair:
        want = 2.0 * green_strip(z, z0) +
               bcc::mean_shift(z) * bcc::mean_shift(z0);
        break;
      default: continue;
    }
    INFO(o.name);
    CHECK(cnorm(got, want) < 1e-13 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("phi-pair closed form matches the insertion correlator") {
  const cplx z(0.5, 1.2), z0(-0.8, 2.0);
  CorrelationRequest req;
  req.factors = {{FieldSpec::phi(), z}, {FieldSpec::phi(), z0}};
  req.insertion = Insertion{};
  CHECK(cnorm(correlate(req), obs::phi_pair(z, z0)) < 1e-12);
}

TEST_CASE("left-passage probability has the right boundary values") {
  CHECK(obs::schramm_probability(cplx(0.0, kPi)) == doctest::Approx(0.5));
  // The tails close like e^{-|x|/2}.
  CHECK(std::abs(obs::schramm_probability(cplx(-40.0, 1.0)) - 1.0) < 1e-8);
  CHECK(std::abs(obs::schramm_probability(cplx(40.0, 1.0))) < 1e-8);
  // Harmonic in the strip: mean over a small circle equals the center value.
  const cplx c(0.4, 1.6);
  double acc = 0.0;
  const int n = 64;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * kPi * k / n;
    acc += obs::schramm_probability(c + 0.05 * std::polar(1.0, th));
  }
  CHECK(acc / n == doctest::Approx(obs::schramm_probability(c)).epsilon(1e-10));
  CHECK(std::abs(2.0 * bcc::kA * kPi * obs::schramm_probability(c) -
                 obs::mean_field(c)) < 1e-14);
}

TEST_CASE("negative control disagrees with the harmonic observable") {
  const cplx z(0.9, 1.4);
  CHECK(std::abs(obs::negative_control_value(z) -
                 obs::schramm_probability(z)) > 1e-3);
}

TEST_CASE("pair log stays on the continuous branch along a driven flow") {
  const cplx za(0.3, 2.6), zb(-0.5, 2.2);
  auto state = loewner::make_state({za, zb});
  auto drv = loewner::DrivingPath::brownian(4.0, 1e-3, 2.0, 77, 3);
  cplx pair_log = obs::pair_log_init(za, zb);
  cplx wa = za, wb = zb;
  loewner::run(state, drv, drv.increments.size(),
               [&](const loewner::LoewnerState& s, std::size_t) {
                 pair_log = obs::pair_log_update(pair_log, wa, wb,
                                                 s.points[0].w, s.points[1].w);
                 wa = s.points[0].w;
                 wb = s.points[1].w;
               });
  REQUIRE(state.points[0].alive);
  REQUIRE(state.points[1].alive);
  const cplx diff = state.points[0].w - state.points[1].w;
  // Same value as the principal log up to an integer multiple of 2 pi i,
  // and exponentiating recovers tanh((wa - wb)/4) exactly.
  CHECK(std::abs(std::exp(pair_log) - std::tanh(diff / 4.0)) < 1e-10);
  const double winding =
      (pair_log - strip_log_tanh(diff)).imag() / (2.0 * kPi);
  CHECK(std::abs(winding - std::round(winding)) < 1e-10);
}

TEST_CASE("vertex and bivertex carry the differential weight of the jet") {
  const cplx z(0.6, 1.8), z0(-0.2, 1.1);
  auto state = loewner::make_state({z, z0});
  auto drv = loewner::DrivingPath::zero(1e-3, 0.5);
  loewner::run(state, drv, drv.increments.size());
  const auto& a = state.points[0];
  const auto& b = state.points[1];
  REQUIRE(a.alive);
  REQUIRE(b.alive);
  // The accumulated log derivative matches the jet.
  CHECK(std::abs(std::exp(a.log_w1) - a.w1) < 1e-12);

  const double alpha = 0.5;
  const double direct =
      std::pow(std::abs(a.w1), -alpha * alpha) * bcc::hat_vertex(alpha, a.w);
  CHECK(obs::vertex(a, alpha) == doctest::Approx(direct).epsilon(1e-13));

  const cplx pair_log = obs::pair_log_init(a.w, b.w);
  const cplx weight = std::exp(-0.5 * alpha * alpha * (a.log_w1 + b.log_w1));
  const cplx direct_pair = bcc::hat_bivertex(alpha, a.w, b.w) * weight;
  CHECK(cnorm(obs::bivertex(a, b, pair_log, alpha), direct_pair) < 1e-12);
}

TEST_CASE("stress observable is the Schwarzian-form transport of hat T") {
  // Transporting hat T(w) back through z -> w_t(z) with the geometry layer
  // must agree with the jet-based evaluator.
  const cplx z(0.8, 2.1);
  auto state = loewner::make_state({z});
  auto drv = loewner::DrivingPath::brownian(4.0, 1e-3, 1.0, 5, 11);
  loewner::run(state, drv, drv.increments.size());
  const auto& p = state.points[0];
  REQUIRE(p.alive);
  const Jet3 jet{p.w, p.w1, p.w2, p.w3};
  const cplx transported =
      bcc::hat_t(p.w) * p.w1 * p.w1 + schwarzian(jet) / 12.0;
  CHECK(cnorm(obs::stress(p), transported) < 1e-13);
}
