#pragma once

#include <complex>

namespace sle {

using cplx = std::complex<double>;

// Value and first three derivatives of an analytic map at a point.
struct Jet3 {
  cplx f{};
  cplx d1{};
  cplx d2{};
  cplx d3{};
};

// Jet of g∘h at z, given the jet of h at z and the jet of g at h(z).
inline Jet3 compose(const Jet3& outer, const Jet3& inner) {
  Jet3 r;
  r.f = outer.f;
  r.d1 = outer.d1 * inner.d1;
  r.d2 = outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2;
  r.d3 = outer.d3 * inner.d1 * inner.d1 * inner.d1 +
         3.0 * outer.d2 * inner.d1 * inner.d2 + outer.d1 * inner.d3;
  return r;
}

// Jet of h^{-1} at h(z), given the jet of h at z. Requires h'(z) != 0.
inline Jet3 inverse_jet(const Jet3& j, cplx z) {
  Jet3 r;
  const cplx d1 = j.d1;
  r.f = z;
  r.d1 = 1.0 / d1;
  r.d2 = -j.d2 / (d1 * d1 * d1);
  r.d3 = (3.0 * j.d2 * j.d2 - d1 * j.d3) / (d1 * d1 * d1 * d1 * d1);
  return r;
}

inline Jet3 identity_jet(cplx z) { return Jet3{z, 1.0, 0.0, 0.0}; }

}  // namespace sle
