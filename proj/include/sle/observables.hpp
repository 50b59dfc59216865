#pragma once

#include <string>
#include <vector>

#include "sle/loewner.hpp"

namespace sle::obs {

using cplx = std::complex<double>;

// The tracked data an observable needs at one evaluation point.
using PointState = loewner::TrackedPoint;

enum class Kind {
  MeanField,     // hat E Phi, the Schramm observable up to normalization
  Current,       // hat E J, a (1,0)-differential
  Stress,        // hat E T, a Schwarzian form of order 1/12
  Vertex,        // hat E of the one-point vertex, charge alpha
  BiVertex,      // hat E of the two-point vertex, charge alpha
  PhiPair,       // hat E[Phi Phi], Wick pair plus product of means
  NegativeControl  // deliberately wrong constant; must show drift
};

struct Observable {
  std::string name;
  Kind kind;
  double alpha = 0.0;
  bool two_point = false;
};

// The martingale-observable catalog exercised by the drift tests. Covers
// every transformation law: scalar, (1,0)-differential, Schwarzian form,
// vertex differentials, and a two-point string.
std::vector<Observable> catalog();
Observable negative_control();

// Closed forms in the moving strip chart. `a` and `b` are tracked points
// carrying w_t and the jet; pair observables additionally take the
// continuously tracked branch of log tanh((w_a - w_b)/4).
double mean_field(cplx w);                 // 2 a arg tanh(w/4)
double schramm_probability(cplx w);        // (1/pi) arg tanh(w/4)
cplx current(const PointState& p);
cplx stress(const PointState& p);
double vertex(const PointState& p, double alpha);
cplx bivertex(const PointState& a, const PointState& b, cplx log_tanh_diff,
              double alpha);
double phi_pair(cplx wa, cplx wb);
double negative_control_value(cplx w);

cplx evaluate(const Observable& o, const PointState& a, const PointState& b,
              cplx log_tanh_diff);

// Continuous branch of log tanh((w_a - w_b)/4) along the flow.
cplx pair_log_init(cplx wa, cplx wb);
cplx pair_log_update(cplx prev, cplx wa_old, cplx wb_old, cplx wa_new,
                     cplx wb_new);

}  // namespace sle::obs
