#include "sle/correlators.hpp"

#include <cmath>
#include <cstdlib>

#include "sle/errors.hpp"

namespace sle {

namespace {

constexpr double kCoincidenceRadius = 1e-12;

cplx csch(cplx t) { return 1.0 / std::sinh(t); }
cplx coth(cplx t) { return std::cosh(t) / std::sinh(t); }

void check_log_branch(cplx u) {
  // tanh(u/4) on the negative real axis is the cut of the principal log.
  const cplx t = std::tanh(u / 4.0);
  if (std::abs(t.imag()) < 1e-12 && t.real() < 0.0)
    throw Error(ErrorCode::BranchCutCrossing,
                "chiral kernel evaluated on the branch cut");
}

}  // namespace

cplx strip_log_tanh(cplx u) { return std::log(std::tanh(u / 4.0)); }

cplx strip_log_tanh_deriv(int n, cplx u) {
  if (n < 1 || n > 6)
    throw Error(ErrorCode::Unsupported, "strip_log_tanh_deriv: order 1..6");
  // L^{(n)}(u) = g^{(n-1)}(u/2) / 2^n with g = csch.
  const cplx t = u / 2.0;
  const cplx s = csch(t);
  const cplx c = coth(t);
  cplx g;
  switch (n - 1) {
    case 0: g = s; break;
    case 1: g = -s * c; break;
    case 2: g = s * c * c + s * s * s; break;
    case 3: g = -s * c * c * c - 5.0 * s * s * s * c; break;
    case 4:
      g = s * c * c * c * c + 18.0 * s * s * s * c * c +
          5.0 * s * s * s * s * s;
      break;
    case 5:
      g = -s * c * c * c * c * c - 58.0 * s * s * s * c * c * c -
          61.0 * s * s * s * s * s * c;
      break;
    default: g = 0.0;
  }
  return g / std::pow(2.0, n);
}

double green_strip(cplx zeta, cplx z) {
  if (std::abs(zeta - z) < kCoincidenceRadius)
    throw Error(ErrorCode::DiagonalSingularity, "green_strip: zeta == z");
  return std::log(std::abs(std::tanh((zeta - std::conj(z)) / 4.0))) -
         std::log(std::abs(std::tanh((zeta - z) / 4.0)));
}

double green_quadrant(cplx zeta, cplx z) {
  if (std::abs(zeta - z) < kCoincidenceRadius)
    throw Error(ErrorCode::DiagonalSingularity, "green_quadrant: zeta == z");
  return std::log(std::abs((zeta - std::conj(z)) * (zeta + z) /
                           ((zeta - z) * (zeta + std::conj(z)))));
}

cplx kernel_j_phi(cplx zeta, cplx z) {
  if (std::abs(zeta - z) < kCoincidenceRadius ||
      std::abs(zeta - std::conj(z)) < kCoincidenceRadius)
    throw Error(ErrorCode::DiagonalSingularity, "kernel_j_phi: singular pair");
  return -0.5 / std::sinh((zeta - z) / 2.0) +
         0.5 / std::sinh((zeta - std::conj(z)) / 2.0);
}

cplx kernel_j_j(cplx zeta, cplx z) {
  if (std::abs(zeta - z) < kCoincidenceRadius)
    throw Error(ErrorCode::DiagonalSingularity, "kernel_j_j: zeta == z");
  const cplx u = (zeta - z) / 2.0;
  return -0.25 / (std::sinh(u) * std::tanh(u));
}

cplx complex_green(cplx z, cplx z1) {
  if (std::abs(z - z1) < kCoincidenceRadius)
    throw Error(ErrorCode::DiagonalSingularity, "complex_green: z == z1");
  check_log_branch(z - z1);
  return 0.5 * strip_log_tanh(z - std::conj(z1)) -
         0.5 * strip_log_tanh(z - z1);
}

double vertex_log_c(cplx z) {
  const double y = z.imag();
  if (y <= 0.0 || y >= M_PI)
    throw Error(ErrorCode::Unsupported, "vertex_log_c: point not interior");
  return std::log(4.0 * std::tan(y / 2.0));
}

// ---------------------------------------------------------------------------
// Wick engine
// ---------------------------------------------------------------------------

namespace {

struct GaussFactor {
  enum class Kind { DPhi, PhiPlusPair, PhiPlusRooted };
  Kind kind = Kind::DPhi;
  cplx z{};
  cplx z0{};       // PhiPlusPair only
  int dz = 0;
  int dzbar = 0;   // DPhi only
  int group = -1;  // Wick-product group; same-group factors never pair
};

double sgn_pow(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// L^{(n)} with n >= 1; n == 0 must be handled by the caller (branch choice).
cplx Ld(int n, cplx u) { return strip_log_tanh_deriv(n, u); }

cplx cov_dphi_dphi(const GaussFactor& a, const GaussFactor& b) {
  const int j1 = a.dz, k1 = a.dzbar, j2 = b.dz, k2 = b.dzbar;
  if (j1 + k1 + j2 + k2 == 0) return cplx(2.0 * green_strip(a.z, b.z), 0.0);
  if (j1 + k2 + k1 + j2 > 6)
    throw Error(ErrorCode::Unsupported, "derivative order above closed forms");
  cplx acc = 0.0;
  const cplx z1 = a.z, z2 = b.z;
  if (k1 == 0 && j2 == 0 && j1 + k2 > 0)
    acc += sgn_pow(k2) * Ld(j1 + k2, z1 - std::conj(z2));
  if (j1 == 0 && k2 == 0 && k1 + j2 > 0)
    acc += sgn_pow(j2) * Ld(k1 + j2, std::conj(z1) - z2);
  if (k1 == 0 && k2 == 0 && j1 + j2 > 0)
    acc -= sgn_pow(j2) * Ld(j1 + j2, z1 - z2);
  if (j1 == 0 && j2 == 0 && k1 + k2 > 0)
    acc -= sgn_pow(k2) * Ld(k1 + k2, std::conj(z1) - std::conj(z2));
  return acc;
}

// d^m/dz^m d^j/dz1^j dbar^k/dzbar1^k of [L(z - conj z1) - L(z - z1)],
// the rooted part of 2 G+(z, z1) as seen by a Phi node at z1.
cplx chiral_block(cplx z, int m, cplx z1, int j, int k) {
  cplx acc = 0.0;
  if (j == 0) {
    const int n = m + k;
    if (n == 0) {
      check_log_branch(z - std::conj(z1));
      acc += strip_log_tanh(z - std::conj(z1));
    } else {
      acc += sgn_pow(k) * Ld(n, z - std::conj(z1));
    }
  }
  if (k == 0) {
    const int n = m + j;
    if (n == 0) {
      check_log_branch(z - z1);
      acc -= strip_log_tanh(z - z1);
    } else {
      acc -= sgn_pow(j) * Ld(n, z - z1);
    }
  }
  return acc;
}

cplx cov_phiplus_dphi(const GaussFactor& a, const GaussFactor& b) {
  // a: PhiPlusPair or PhiPlusRooted; b: DPhi
  if (a.kind == GaussFactor::Kind::PhiPlusRooted) {
    if (a.dz == 0 && b.dz == 0 && b.dzbar == 0 &&
        std::abs(a.z.imag()) < 1e-12) {
      // Boundary-rooted branch: i a * cov = 2 a * arg tanh((z1 - p)/4).
      const cplx m = strip_log_tanh(b.z - a.z);
      return std::conj(m) - m;
    }
    return chiral_block(a.z, a.dz, b.z, b.dz, b.dzbar);
  }
  return chiral_block(a.z, a.dz, b.z, b.dz, b.dzbar) -
         chiral_block(a.z0, 0, b.z, b.dz, b.dzbar);
}

cplx cov_phiplus_phiplus(const GaussFactor& a, const GaussFactor& b) {
  using K = GaussFactor::Kind;
  if (a.kind == K::PhiPlusRooted && b.kind == K::PhiPlusRooted)
    throw Error(ErrorCode::Unsupported,
                "at most one rooted chiral factor per correlation");
  if (a.kind == K::PhiPlusRooted || b.kind == K::PhiPlusRooted) {
    const GaussFactor& r = (a.kind == K::PhiPlusRooted) ? a : b;
    const GaussFactor& q = (a.kind == K::PhiPlusRooted) ? b : a;
    if (std::abs(r.z.imag()) > 1e-12 || r.dz != 0)
      throw Error(ErrorCode::Unsupported,
                  "rooted-chiral cross covariance needs a boundary root");
    // E[Phi+(p, q-) Phi+(z, z0)] = L(z0 - p) - L(z - p)
    const cplx p = r.z;
    if (q.dz == 0) {
      check_log_branch(q.z0 - p);
      check_log_branch(q.z - p);
      return strip_log_tanh(q.z0 - p) - strip_log_tanh(q.z - p);
    }
    return -Ld(q.dz, q.z - p);
  }
  // Both bi-variant: E = L(z-z0') + L(z0-z') - L(z-z') - L(z0-z0')
  const int m = a.dz, mp = b.dz;
  cplx acc = 0.0;
  auto term = [&](cplx u, int n, double sign) {
    if (n == 0) {
      check_log_branch(u);
      acc += sign * strip_log_tanh(u);
    } else {
      acc += sign * Ld(n, u);
    }
  };
  if (mp == 0) term(a.z - b.z0, m, 1.0);
  if (m == 0) term(a.z0 - b.z, mp, sgn_pow(mp));
  term(a.z - b.z, m + mp, -sgn_pow(mp));
  if (m == 0 && mp == 0) term(a.z0 - b.z0, 0, -1.0);
  return acc;
}

cplx covariance(const GaussFactor& a, const GaussFactor& b) {
  using K = GaussFactor::Kind;
  const bool a_phi = a.kind == K::DPhi;
  const bool b_phi = b.kind == K::DPhi;
  if (a_phi && b_phi) return cov_dphi_dphi(a, b);
  if (!a_phi && b_phi) return cov_phiplus_dphi(a, b);
  if (a_phi && !b_phi) {
    // Covariances are symmetric; swap so the chiral factor comes first.
    return cov_phiplus_dphi(b, a);
  }
  return cov_phiplus_phiplus(a, b);
}

struct ExpFactor {
  cplx alpha{};
  GaussFactor field;
};

struct Primitive {
  cplx coeff{1.0, 0.0};
  cplx log_prefactor{};
  std::vector<ExpFactor> exps;
  std::vector<GaussFactor> nodes;
};

// Sum over partial matchings: pairs weighted by covariance, singletons by
// their mean shift.
cplx match_sum(const std::vector<GaussFactor>& nodes,
               const std::vector<cplx>& means,
               const std::vector<std::vector<cplx>>& cov,
               std::vector<int>& remaining) {
  if (remaining.empty()) return 1.0;
  const int i = remaining.back();
  remaining.pop_back();
  cplx acc = means[i] * match_sum(nodes, means, cov, remaining);
  for (size_t idx = 0; idx < remaining.size(); ++idx) {
    const int j = remaining[idx];
    if (nodes[i].group >= 0 && nodes[i].group == nodes[j].group) continue;
    std::vector<int> rest = remaining;
    rest.erase(rest.begin() + idx);
    acc += cov[i][j] * match_sum(nodes, means, cov, rest);
  }
  remaining.push_back(i);
  return acc;
}

cplx evaluate_primitive(const Primitive& prim) {
  cplx log_scalar = prim.log_prefactor;
  for (size_t i = 0; i < prim.exps.size(); ++i)
    for (size_t j = i + 1; j < prim.exps.size(); ++j)
      log_scalar += prim.exps[i].alpha * prim.exps[j].alpha *
                    covariance(prim.exps[i].field, prim.exps[j].field);
  const size_t n = prim.nodes.size();
  std::vector<cplx> means(n, 0.0);
  for (size_t m = 0; m < n; ++m)
    for (const ExpFactor& e : prim.exps)
      means[m] += e.alpha * covariance(e.field, prim.nodes[m]);
  std::vector<std::vector<cplx>> cov(n, std::vector<cplx>(n, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      cov[i][j] = cov[j][i] = covariance(prim.nodes[i], prim.nodes[j]);
  std::vector<int> all(n);
  for (size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
  return prim.coeff * std::exp(log_scalar) * match_sum(prim.nodes, means, cov, all);
}

void check_distinct(const CorrelationRequest& req) {
  std::vector<cplx> pts;
  for (const auto& [spec, z] : req.factors) {
    pts.push_back(z);
    if (spec.base == FieldSpec::Base::BiVertex ||
        spec.base == FieldSpec::Base::PhiPlus)
      pts.push_back(spec.z0);
  }
  if (req.insertion) pts.push_back(req.insertion->p);
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (std::abs(pts[i] - pts[j]) < kCoincidenceRadius)
        throw Error(ErrorCode::DiagonalSingularity,
                    "correlate: coincident evaluation points");
}

}  // namespace

cplx correlate(const CorrelationRequest& req) {
  check_distinct(req);
  std::vector<Primitive> prims(1);
  int next_group = 0;
  for (const auto& [spec, z] : req.factors) {
    using B = FieldSpec::Base;
    switch (spec.base) {
      case B::Phi:
        if (spec.dz > 3 || spec.dzbar > 3)
          throw Error(ErrorCode::Unsupported, "derivative order above 3");
        for (auto& p : prims)
          p.nodes.push_back({GaussFactor::Kind::DPhi, z, 0.0, spec.dz,
                             spec.dzbar, -1});
        break;
      case B::J:
        for (auto& p : prims)
          p.nodes.push_back({GaussFactor::Kind::DPhi, z, 0.0, 1, 0, -1});
        break;
      case B::Jbar:
        for (auto& p : prims)
          p.nodes.push_back({GaussFactor::Kind::DPhi, z, 0.0, 0, 1, -1});
        break;
      case B::PhiPlus:
        if (spec.dz > 3 || spec.dzbar != 0)
          throw Error(ErrorCode::Unsupported,
                      "Phi+ supports holomorphic derivatives up to 3");
        for (auto& p : prims)
          p.nodes.push_back({GaussFactor::Kind::PhiPlusPair, z, spec.z0,
                             spec.dz, 0, -1});
        break;
      case B::T: {
        // T = -1/2 J (.) J + 1/48 in the strip identity chart.
        if (spec.dz != 0 || spec.dzbar != 0)
          throw Error(ErrorCode::Unsupported, "derivatives of T unsupported");
        std::vector<Primitive> expanded;
        expanded.reserve(prims.size() * 2);
        const int g = next_group++;
        for (const auto& p : prims) {
          Primitive with = p;
          with.coeff *= -0.5;
          with.nodes.push_back({GaussFactor::Kind::DPhi, z, 0.0, 1, 0, g});
          with.nodes.push_back({GaussFactor::Kind::DPhi, z, 0.0, 1, 0, g});
          expanded.push_back(std::move(with));
          Primitive without = p;
          without.coeff *= 1.0 / 48.0;
          expanded.push_back(std::move(without));
        }
        prims = std::move(expanded);
        break;
      }
      case B::Vertex:
        for (auto& p : prims) {
          p.log_prefactor += spec.alpha * spec.alpha * vertex_log_c(z);
          p.exps.push_back(
              {spec.alpha, {GaussFactor::Kind::DPhi, z, 0.0, 0, 0, -1}});
        }
        break;
      case B::BiVertex:
        check_log_branch(z - spec.z0);
        for (auto& p : prims) {
          p.log_prefactor += spec.alpha * spec.alpha * strip_log_tanh(z - spec.z0);
          p.exps.push_back(
              {spec.alpha,
               {GaussFactor::Kind::PhiPlusPair, z, spec.z0, 0, 0, -1}});
        }
        break;
      case B::RootedVertex:
        // (w')^{-alpha^2/2} = 1 in the strip identity chart.
        for (auto& p : prims)
          p.exps.push_back(
              {spec.alpha, {GaussFactor::Kind::PhiPlusRooted, z, 0.0, 0, 0, -1}});
        break;
    }
  }
  if (req.insertion) {
    const Insertion& ins = *req.insertion;
    if (std::abs(ins.p.imag()) > 1e-12)
      throw Error(ErrorCode::Unsupported,
                  "insertion point must lie on the Dirichlet arc");
    const cplx ia(0.0, ins.a);
    for (auto& p : prims)
      p.exps.push_back(
          {ia, {GaussFactor::Kind::PhiPlusRooted, ins.p, 0.0, 0, 0, -1}});
  }
  cplx acc = 0.0;
  for (const auto& p : prims) acc += evaluate_primitive(p);
  return acc;
}

// ---------------------------------------------------------------------------
// OPE powers and vertex series
// ---------------------------------------------------------------------------

namespace {

// Coefficients of the monic (probabilists') Hermite polynomial He_n.
std::vector<double> hermite_coeffs(int n) {
  std::vector<std::vector<double>> he(n + 1);
  he[0] = {1.0};
  if (n >= 1) he[1] = {0.0, 1.0};
  for (int m = 1; m < n; ++m) {
    std::vector<double> next(m + 2, 0.0);
    for (int k = 0; k <= m; ++k) next[k + 1] += he[m][k];
    for (int k = 0; k < m; ++k) next[k] -= m * he[m - 1][k];
    he[m + 1] = std::move(next);
  }
  return he[n];
}

}  // namespace

double ope_power_expectation_recursive(int n, cplx z) {
  // E[Phi^{(.) m}] = 0 for m >= 1 forces, via
  // Phi^{(.) m} = sum_k a_k (2c)^{(m-k)/2} Phi^{*k},
  // a triangular system for the OPE-power expectations.
  const double twoc = 2.0 * vertex_log_c(z);
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (int m = 1; m <= n; ++m) {
    const auto a = hermite_coeffs(m);
    double rhs = 0.0;
    for (int k = 0; k < m; ++k) {
      if (a[k] == 0.0) continue;
      rhs += a[k] * std::pow(twoc, 0.5 * (m - k)) * e[k];
    }
    e[m] = -rhs;  // leading coefficient of He_m is 1
  }
  return e[n];
}

double ope_power_expectation_closed(int n, cplx z) {
  if (n % 2 == 1) return 0.0;
  const double c = vertex_log_c(z);
  const int m = n / 2;
  double r = std::pow(c, m);
  for (int k = m + 1; k <= n; ++k) r *= k;  // (2m)!/m!
  return r;
}

double ope_coefficient_check(int n) {
  if (n > 6) throw Error(ErrorCode::Unsupported, "ope check supports n <= 6");
  double worst = 0.0;
  for (double x : {-0.7, 0.0, 1.3})
    for (double y : {0.9, 1.4, 2.2}) {
      const cplx z(x, y);
      const double a = ope_power_expectation_recursive(n, z);
      const double b = ope_power_expectation_closed(n, z);
      worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(b)));
      if (n == 2) {
        // OPE limit: E[Phi(zeta)Phi(z')] + log|zeta-z'|^2 -> 2c(z).
        // Evaluated symmetrically about z so the gradient term cancels.
        const cplx d = cplx(0.82, 0.57) * 1e-4;  // |d| = 1e-4
        const double lim =
            2.0 * green_strip(z + 0.5 * d, z - 0.5 * d) +
            2.0 * std::log(std::abs(d));
        worst = std::max(worst, std::abs(lim - 2.0 * vertex_log_c(z)));
      }
    }
  return worst;
}

double vertex_series_residual(double alpha, cplx z, int terms) {
  double series = 0.0;
  double fact = 1.0;
  for (int n = 0; n <= terms; ++n) {
    if (n > 0) fact *= n;
    series += std::pow(alpha, n) * ope_power_expectation_recursive(n, z) / fact;
  }
  const double closed = std::exp(alpha * alpha * vertex_log_c(z));
  return std::abs(series - closed);
}

}  // namespace sle
