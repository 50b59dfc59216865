#include "sle/loewner.hpp"

#include <cmath>

#include "sle/errors.hpp"
#include "sle/rng.hpp"

namespace sle::loewner {

namespace {

constexpr double kSwallowGuard = 1e-6;   // |w| below this counts as caught
constexpr double kRealAxisTol = 1e-12;

// Strip-preserving growth map 2 acosh(k cosh(w/2)) on the branch with
// Im in [0, pi]. On the real axis cosh loses the sign of w, so the branch
// there is fixed by the sign of Re w.
cplx strip_growth(cplx w, double k) {
  cplx r = std::acosh(k * std::cosh(w / 2.0));
  if (r.imag() < 0.0)
    r = -r;
  else if (r.imag() == 0.0 && w.real() < 0.0)
    r = -r;
  return 2.0 * r;
}

bool swallowed_by_growth(cplx w, double k) {
  if (std::abs(w) < kSwallowGuard) return true;
  const cplx u = k * std::cosh(w / 2.0);
  // Branch violation: the acosh argument reaches the real segment (-inf, 1].
  return std::abs(u.imag()) < kRealAxisTol && u.real() <= 1.0 + kRealAxisTol;
}

}  // namespace

DrivingPath DrivingPath::brownian(double kappa, double dt, double T,
                                  std::uint64_t seed, std::uint64_t path_id) {
  DrivingPath p;
  p.kappa = kappa;
  p.dt = dt;
  const auto n = static_cast<std::size_t>(std::llround(T / dt));
  p.increments.resize(n);
  const double scale = std::sqrt(kappa * dt);
  for (std::size_t i = 0; i < n; ++i)
    p.increments[i] = scale * rng::normal(seed, path_id, i);
  return p;
}

DrivingPath DrivingPath::zero(double dt, double T) {
  DrivingPath p;
  p.kappa = 0.0;
  p.dt = dt;
  p.increments.assign(static_cast<std::size_t>(std::llround(T / dt)), 0.0);
  return p;
}

LoewnerState make_state(const std::vector<cplx>& points) {
  LoewnerState s;
  s.points.reserve(points.size());
  for (cplx z : points) {
    TrackedPoint p;
    p.z0 = z;
    p.w = z;
    s.points.push_back(p);
  }
  return s;
}

Jet3 growth_jet(cplx w, double delta) {
  if (delta <= 0.0)
    throw Error(ErrorCode::BadStep, "growth step requires delta > 0");
  const double k = std::exp(delta / 2.0);
  const cplx s = std::sinh(w / 2.0);
  const cplx c = std::cosh(w / 2.0);
  const cplx half = strip_growth(w, k) / 2.0;
  const cplx S = std::sinh(half);
  const cplx C = k * c;  // cosh(half)
  Jet3 j;
  j.f = 2.0 * half;
  j.d1 = k * s / S;
  j.d2 = k * c / (2.0 * S) - k * k * C * s * s / (2.0 * S * S * S);
  j.d3 = k * s / (4.0 * S) - 3.0 * k * k * c * C * s / (4.0 * S * S * S) -
         k * k * k * s * s * s / (4.0 * S * S * S) +
         3.0 * k * k * k * C * C * s * s * s / (4.0 * S * S * S * S * S);
  return j;
}

namespace {

void grow_points(LoewnerState& state, double delta) {
  const double k = std::exp(delta / 2.0);
  for (TrackedPoint& p : state.points) {
    if (!p.alive) continue;
    if (swallowed_by_growth(p.w, k)) {
      p.alive = false;
      p.t_swallow = state.t;
      p.swallow_side = (p.w.real() > 0.0) ? Side::Right : Side::Left;
      continue;
    }
    const Jet3 g = growth_jet(p.w, delta);
    p.w = g.f;
    const cplx w1 = p.w1, w2 = p.w2, w3 = p.w3;
    p.w1 = g.d1 * w1;
    p.w2 = g.d2 * w1 * w1 + g.d1 * w2;
    p.w3 = g.d3 * w1 * w1 * w1 + 3.0 * g.d2 * w1 * w2 + g.d1 * w3;
    p.log_w1 += std::log(g.d1);
  }
}

void shift_points(LoewnerState& state, double dxi) {
  if (dxi == 0.0) return;
  for (TrackedPoint& p : state.points)
    if (p.alive) p.w -= dxi;
}

}  // namespace

void step(LoewnerState& state, double dxi, double delta) {
  grow_points(state, delta);
  shift_points(state, dxi);
  state.t += delta;
}

void run(LoewnerState& state, const DrivingPath& drv, std::size_t n_steps) {
  run(state, drv, n_steps, StepCallback{});
}

void run(LoewnerState& state, const DrivingPath& drv, std::size_t n_steps,
         const StepCallback& after_step) {
  if (n_steps > drv.increments.size())
    throw Error(ErrorCode::BadStep, "run: horizon exceeds driving path");
  for (std::size_t i = 0; i < n_steps; ++i) {
    const double dxi = drv.increments[i];
    shift_points(state, dxi / 2.0);
    grow_points(state, drv.dt);
    shift_points(state, dxi / 2.0);
    state.t += drv.dt;
    if (after_step) after_step(state, i);
  }
}

bool growth_swallows(cplx w, double k) { return swallowed_by_growth(w, k); }

cplx growth_value(cplx w, double k) { return strip_growth(w, k); }

CurveSample trace_curve(const DrivingPath& drv, double T, std::size_t stride) {
  const auto n_total =
      std::min(static_cast<std::size_t>(std::llround(T / drv.dt)),
               drv.increments.size());
  const double km = std::exp(-drv.dt / 2.0);
  CurveSample out;
  for (std::size_t m = 0; m <= n_total; m += stride) {
    cplx u = 0.0;
    for (std::size_t i = m; i-- > 0;) {
      const double dxi = drv.increments[i];
      u += dxi / 2.0;
      u = strip_growth(u, km);
      u += dxi / 2.0;
    }
    if (u.imag() < -1e-9 || u.imag() > M_PI + 1e-9)
      throw Error(ErrorCode::TraceInstability,
                  "curve tip left the closed strip");
    out.times.push_back(drv.dt * static_cast<double>(m));
    out.tips.push_back(u);
  }
  return out;
}

Side classify_side(const TrackedPoint& pt, double eps_undecided) {
  if (!pt.alive) return pt.swallow_side;
  if (std::abs(pt.w.real()) < eps_undecided) return Side::Undecided;
  return pt.w.real() < 0.0 ? Side::Left : Side::Right;
}

}  // namespace sle::loewner
