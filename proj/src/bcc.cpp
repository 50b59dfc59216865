#include "sle/bcc.hpp"

#include <algorithm>
#include <cmath>

#include "sle/errors.hpp"

namespace sle::bcc {

double mean_shift(cplx z, cplx p) {
  if (std::abs(z - p) < 1e-12)
    throw Error(ErrorCode::InsertionSingularity,
                "mean_shift evaluated at the insertion point");
  // tanh((z-p)/4) lies in the upper half-plane for z in the strip, so the
  // principal argument is continuous and takes values in (0, pi).
  return 2.0 * kA * std::arg(std::tanh((z - p) / 4.0));
}

cplx hat_j(cplx z, cplx p) {
  return cplx(0.0, -kA / 2.0) / std::sinh((z - p) / 2.0);
}

cplx hat_t(cplx z, cplx p) {
  const cplx s = std::sinh((z - p) / 2.0);
  return 1.0 / 48.0 + kA * kA / (8.0 * s * s);
}

double hat_vertex(double alpha, cplx z, cplx p) {
  return std::exp(alpha * alpha * vertex_log_c(z) + alpha * mean_shift(z, p));
}

cplx hat_bivertex(cplx alpha, cplx z, cplx z0, cplx p) {
  const cplx lt = strip_log_tanh(z - z0);
  const cplx ratio = strip_log_tanh(z - p) - strip_log_tanh(z0 - p);
  return std::exp(alpha * alpha * lt - cplx(0.0, 1.0) * alpha * kA * ratio);
}

double hat_consistency_residual(cplx p) {
  const Insertion ins{p, kA};
  double worst = 0.0;
  auto rel = [](cplx got, cplx want) {
    return std::abs(got - want) / (1.0 + std::abs(want));
  };
  for (double x : {-1.1, 0.4, 2.3}) {
    for (double y : {0.5, 1.3, 2.6}) {
      const cplx z(x, y);
      const cplx got_phi =
          correlate({{{FieldSpec::phi(), z}}, ins});
      worst = std::max(worst, rel(got_phi, mean_shift(z, p)));
      const cplx got_j = correlate({{{FieldSpec::j(), z}}, ins});
      worst = std::max(worst, rel(got_j, hat_j(z, p)));
      const cplx got_t = correlate({{{FieldSpec::t(), z}}, ins});
      worst = std::max(worst, rel(got_t, hat_t(z, p)));
      const cplx got_v =
          correlate({{{FieldSpec::vertex(0.35), z}}, ins});
      worst = std::max(worst, rel(got_v, hat_vertex(0.35, z, p)));
      const cplx z0 = z + cplx(0.7, -0.2);
      const cplx got_bv =
          correlate({{{FieldSpec::bi_vertex(0.4, z0), z}}, ins});
      worst = std::max(worst, rel(got_bv, hat_bivertex(0.4, z, z0, p)));
    }
  }
  return worst;
}

}  // namespace sle::bcc
