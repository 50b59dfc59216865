#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "sle/jet.hpp"

namespace sle::loewner {

using cplx = std::complex<double>;

enum class Side { Left, Right, Undecided };

// Piecewise-constant driving: increment i covers [i dt, (i+1) dt) with
// constant value, Delta xi_i = sqrt(kappa) * (B_{(i+1)dt} - B_{i dt}).
struct DrivingPath {
  double kappa = 4.0;
  double dt = 1e-3;
  std::vector<double> increments;

  double horizon() const { return dt * static_cast<double>(increments.size()); }
  static DrivingPath brownian(double kappa, double dt, double T,
                              std::uint64_t seed, std::uint64_t path_id);
  static DrivingPath zero(double dt, double T);
};

struct TrackedPoint {
  cplx z0{};
  cplx w{};               // w_t(z) = g_t(z) - xi_t
  cplx w1{1.0};           // dw_t/dz
  cplx w2{};
  cplx w3{};
  cplx log_w1{};          // continuous branch of log w'
  bool alive = true;
  double t_swallow = -1.0;
  Side swallow_side = Side::Undecided;
};

struct LoewnerState {
  double t = 0.0;
  std::vector<TrackedPoint> points;
};

LoewnerState make_state(const std::vector<cplx>& points);

// Jet of the exact frozen-driving growth map phi(w) = 2 acosh(e^{d/2} cosh(w/2))
// at w (strip-preserving branch). Throws BadStep for delta <= 0.
Jet3 growth_jet(cplx w, double delta);

// One integrator step: exact growth by delta, then shift by -dxi. Points
// whose image leaves the slit strip are marked swallowed with the side given
// by the sign of Re w at the violation.
void step(LoewnerState& state, double dxi, double delta);

// Advance through the first n_steps increments of the driving path using
// symmetric (Strang) scheduling of the shifts around each exact growth step,
// which cancels the leading driving-discretization bias.
void run(LoewnerState& state, const DrivingPath& drv, std::size_t n_steps);

// Same, invoking `after_step(state, i)` after each completed step i.
using StepCallback = std::function<void(const LoewnerState&, std::size_t)>;
void run(LoewnerState& state, const DrivingPath& drv, std::size_t n_steps,
         const StepCallback& after_step);

// Low-level pieces of the exact growth map (k = e^{delta/2}) for lean
// value-only tracking loops.
bool growth_swallows(cplx w, double k);
cplx growth_value(cplx w, double k);

struct CurveSample {
  std::vector<double> times;
  std::vector<cplx> tips;
};

// Curve tip gamma_t by backward composition of inverse step maps, sampled
// every `stride` steps (matching the scheduling used by run()).
CurveSample trace_curve(const DrivingPath& drv, double T,
                        std::size_t stride = 1);

// Left/right classification at the horizon: swallowed points keep their
// recorded side; alive points classify by the sign of Re w_T.
Side classify_side(const TrackedPoint& pt, double eps_undecided = 1e-9);

}  // namespace sle::loewner
