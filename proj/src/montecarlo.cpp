#include "sle/montecarlo.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "sle/correlators.hpp"
#include "sle/errors.hpp"
#include "sle/rng.hpp"

namespace sle::mc {

namespace {

std::vector<std::size_t> checkpoint_steps(const EnsembleConfig& cfg) {
  std::vector<std::size_t> steps;
  for (double t : cfg.checkpoints)
    steps.push_back(static_cast<std::size_t>(std::llround(t / cfg.dt)));
  return steps;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace

Table run_ensemble(const EnsembleConfig& cfg) {
  Table table;
  table.observables = obs::catalog();
  if (cfg.include_negative_control)
    table.observables.push_back(obs::negative_control());
  table.points = cfg.points;
  table.checkpoints = cfg.checkpoints;

  const std::size_t n_obs = table.observables.size();
  const std::size_t n_pts = cfg.points.size();
  const std::size_t n_cp = cfg.checkpoints.size();
  const std::vector<std::size_t> cp_steps = checkpoint_steps(cfg);
  const std::size_t n_steps =
      static_cast<std::size_t>(std::llround(cfg.T / cfg.dt));
  table.rows.resize(static_cast<std::size_t>(cfg.n_paths) * n_cp * n_obs *
                    n_pts);

  auto row_index = [&](int path, std::size_t cp, std::size_t o,
                       std::size_t pt) {
    return ((static_cast<std::size_t>(path) * n_cp + cp) * n_obs + o) * n_pts +
           pt;
  };

  auto run_path = [&](int path) {
    std::vector<cplx> all_points = cfg.points;
    all_points.push_back(cfg.companion);
    const std::size_t comp = n_pts;  // companion index
    loewner::LoewnerState state = loewner::make_state(all_points);
    loewner::DrivingPath drv =
        cfg.kappa > 0.0
            ? loewner::DrivingPath::brownian(cfg.kappa, cfg.dt, cfg.T,
                                             cfg.seed, path)
            : loewner::DrivingPath::zero(cfg.dt, cfg.T);

    std::vector<cplx> pair_log(n_pts);
    for (std::size_t i = 0; i < n_pts; ++i)
      pair_log[i] = obs::pair_log_init(state.points[i].w, state.points[comp].w);

    // Frozen observable values, set at the swallow time of any point the
    // observable depends on.
    std::vector<std::vector<cplx>> frozen(n_obs, std::vector<cplx>(n_pts));
    std::vector<std::vector<bool>> is_frozen(n_obs,
                                             std::vector<bool>(n_pts, false));
    loewner::LoewnerState prev = state;
    std::vector<cplx> prev_pair_log = pair_log;

    auto freeze_for_point = [&](const loewner::LoewnerState& at,
                                const std::vector<cplx>& logs, std::size_t pt,
                                bool pair_only) {
      for (std::size_t o = 0; o < n_obs; ++o) {
        const obs::Observable& ob = table.observables[o];
        if (pair_only && !ob.two_point) continue;
        if (is_frozen[o][pt]) continue;
        is_frozen[o][pt] = true;
        frozen[o][pt] =
            obs::evaluate(ob, at.points[pt], at.points[comp], logs[pt]);
      }
    };

    auto record = [&](std::size_t cp) {
      for (std::size_t o = 0; o < n_obs; ++o) {
        const obs::Observable& ob = table.observables[o];
        for (std::size_t pt = 0; pt < n_pts; ++pt) {
          Row& r = table.rows[row_index(path, cp, o, pt)];
          r.path = path;
          r.t = cfg.checkpoints[cp];
          r.observable = static_cast<int>(o);
          r.point = static_cast<int>(pt);
          if (is_frozen[o][pt]) {
            r.value = frozen[o][pt];
            r.stopped = true;
          } else {
            r.value = obs::evaluate(ob, state.points[pt], state.points[comp],
                                    pair_log[pt]);
            r.stopped = false;
          }
        }
      }
    };

    for (std::size_t cp = 0; cp < n_cp; ++cp)
      if (cp_steps[cp] == 0) record(cp);

    loewner::run(
        state, drv, n_steps,
        [&](const loewner::LoewnerState& s, std::size_t i) {
          // Swallow events freeze against the pre-step snapshot.
          for (std::size_t pt = 0; pt < n_pts; ++pt)
            if (prev.points[pt].alive && !s.points[pt].alive)
              freeze_for_point(prev, prev_pair_log, pt, false);
          if (prev.points[comp].alive && !s.points[comp].alive)
            for (std::size_t pt = 0; pt < n_pts; ++pt)
              freeze_for_point(prev, prev_pair_log, pt, true);
          for (std::size_t pt = 0; pt < n_pts; ++pt)
            if (s.points[pt].alive && s.points[comp].alive)
              pair_log[pt] = obs::pair_log_update(
                  pair_log[pt], prev.points[pt].w, prev.points[comp].w,
                  s.points[pt].w, s.points[comp].w);
          // Stopping radius: freeze at the first grid time the flow gets
          // close to the singularity at w = 0.
          for (std::size_t pt = 0; pt < n_pts; ++pt)
            if (s.points[pt].alive &&
                std::abs(s.points[pt].w) < cfg.stop_radius)
              freeze_for_point(s, pair_log, pt, false);
          if (s.points[comp].alive &&
              std::abs(s.points[comp].w) < cfg.stop_radius)
            for (std::size_t pt = 0; pt < n_pts; ++pt)
              freeze_for_point(s, pair_log, pt, true);
          prev = s;
          prev_pair_log = pair_log;
          for (std::size_t cp = 0; cp < n_cp; ++cp)
            if (cp_steps[cp] == i + 1) record(cp);
        });
  };

  const unsigned n_threads = resolve_threads(cfg.threads);
  std::vector<std::thread> workers;
  std::atomic<int> next{0};
  for (unsigned t = 0; t < n_threads; ++t)
    workers.emplace_back([&] {
      for (int p = next.fetch_add(1); p < cfg.n_paths; p = next.fetch_add(1))
        run_path(p);
    });
  for (auto& w : workers) w.join();
  return table;
}

DriftReport drift_test(const Table& table,
                       const std::vector<std::pair<double, double>>& pairs,
                       double z_threshold) {
  DriftReport report;
  report.z_threshold = z_threshold;
  const std::size_t n_obs = table.observables.size();
  const std::size_t n_pts = table.points.size();
  const std::size_t n_cp = table.checkpoints.size();
  const std::size_t n_paths = table.rows.size() / (n_obs * n_pts * n_cp);

  auto cp_index = [&](double t) -> std::size_t {
    for (std::size_t i = 0; i < n_cp; ++i)
      if (std::abs(table.checkpoints[i] - t) < 1e-12) return i;
    throw Error(ErrorCode::Unsupported, "drift_test: unknown checkpoint");
  };
  auto row = [&](std::size_t path, std::size_t cp, std::size_t o,
                 std::size_t pt) -> const Row& {
    return table.rows[((path * n_cp + cp) * n_obs + o) * n_pts + pt];
  };

  for (std::size_t o = 0; o < n_obs; ++o) {
    for (std::size_t pt = 0; pt < n_pts; ++pt) {
      for (const auto& [t0, t1] : pairs) {
        const std::size_t c0 = cp_index(t0), c1 = cp_index(t1);
        DriftCell cell;
        cell.observable = table.observables[o].name;
        cell.point = static_cast<int>(pt);
        cell.t0 = t0;
        cell.t1 = t1;
        double sr = 0, si = 0;
        std::size_t unstopped = 0;
        for (std::size_t p = 0; p < n_paths; ++p) {
          const cplx inc = row(p, c1, o, pt).value - row(p, c0, o, pt).value;
          sr += inc.real();
          si += inc.imag();
          if (!row(p, c1, o, pt).stopped) ++unstopped;
        }
        const auto n = static_cast<double>(n_paths);
        cell.n = static_cast<int>(n_paths);
        cell.mean_re = sr / n;
        cell.mean_im = si / n;
        // Two-pass variance: exact zero for degenerate (e.g. noiseless)
        // ensembles, where the one-pass form leaves rounding residue.
        double vr = 0, vi = 0;
        for (std::size_t p = 0; p < n_paths; ++p) {
          const cplx inc = row(p, c1, o, pt).value - row(p, c0, o, pt).value;
          vr += (inc.real() - cell.mean_re) * (inc.real() - cell.mean_re);
          vi += (inc.imag() - cell.mean_im) * (inc.imag() - cell.mean_im);
        }
        const double var_re = vr / n;
        const double var_im = vi / n;
        cell.stderr_re = std::sqrt(var_re / n);
        cell.stderr_im = std::sqrt(var_im / n);
        auto zscore = [](double mean, double se) {
          if (se < 1e-14) return std::abs(mean) < 1e-12 ? 0.0 : HUGE_VAL;
          return mean / se;
        };
        cell.z_re = zscore(cell.mean_re, cell.stderr_re);
        cell.z_im = zscore(cell.mean_im, cell.stderr_im);
        // The martingale increment test needs enough live statistics and
        // nonzero dispersion.
        cell.inconclusive =
            unstopped < 100 || (cell.stderr_re < 1e-14 && cell.stderr_im < 1e-14);
        cell.pass = !cell.inconclusive &&
                    std::abs(cell.z_re) <= z_threshold &&
                    std::abs(cell.z_im) <= z_threshold;
        if (cell.inconclusive)
          ++report.n_inconclusive;
        else if (!cell.pass)
          report.all_pass = false;
        report.cells.push_back(cell);
      }
    }
  }
  return report;
}

SchrammReport schramm_estimate(const EnsembleConfig& cfg,
                               const std::vector<cplx>& points) {
  const std::size_t n_steps =
      static_cast<std::size_t>(std::llround(cfg.T / cfg.dt));
  const std::size_t n_pts = points.size();
  const double k = std::exp(cfg.dt / 2.0);
  const double scale = std::sqrt(cfg.kappa * cfg.dt);

  struct Tally {
    int left = 0, right = 0, undecided = 0;
  };
  std::vector<Tally> tally(n_pts);
  std::mutex tally_mutex;

  auto run_block = [&](int begin, int end) {
    std::vector<Tally> local(n_pts);
    std::vector<cplx> w(n_pts);
    std::vector<loewner::Side> side(n_pts);
    for (int path = begin; path < end; ++path) {
      for (std::size_t i = 0; i < n_pts; ++i) {
        w[i] = points[i];
        side[i] = loewner::Side::Undecided;
      }
      std::size_t n_alive = n_pts;
      for (std::size_t s = 0; s < n_steps && n_alive > 0; ++s) {
        const double dxi = scale * rng::normal(cfg.seed, path, s);
        for (std::size_t i = 0; i < n_pts; ++i) {
          if (side[i] != loewner::Side::Undecided) continue;
          cplx u = w[i] - dxi / 2.0;
          if (loewner::growth_swallows(u, k)) {
            side[i] = u.real() > 0.0 ? loewner::Side::Right
                                     : loewner::Side::Left;
            --n_alive;
            continue;
          }
          w[i] = loewner::growth_value(u, k) - dxi / 2.0;
        }
      }
      for (std::size_t i = 0; i < n_pts; ++i) {
        loewner::Side s = side[i];
        if (s == loewner::Side::Undecided) {
          loewner::TrackedPoint pt;
          pt.w = w[i];
          s = loewner::classify_side(pt, 1e-6);
        }
        if (s == loewner::Side::Left)
          ++local[i].left;
        else if (s == loewner::Side::Right)
          ++local[i].right;
        else
          ++local[i].undecided;
      }
    }
    std::scoped_lock lock(tally_mutex);
    for (std::size_t i = 0; i < n_pts; ++i) {
      tally[i].left += local[i].left;
      tally[i].right += local[i].right;
      tally[i].undecided += local[i].undecided;
    }
  };

  const unsigned n_threads = resolve_threads(cfg.threads);
  std::vector<std::thread> workers;
  const int block = (cfg.n_paths + static_cast<int>(n_threads) - 1) /
                    static_cast<int>(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    const int b = static_cast<int>(t) * block;
    const int e = std::min(cfg.n_paths, b + block);
    if (b < e) workers.emplace_back(run_block, b, e);
  }
  for (auto& th : workers) th.join();

  SchrammReport report;
  report.n_paths = cfg.n_paths;
  long total_undecided = 0;
  for (std::size_t i = 0; i < n_pts; ++i) {
    SchrammRow r;
    r.z = points[i];
    r.n_left = tally[i].left;
    r.n_right = tally[i].right;
    r.n_undecided = tally[i].undecided;
    total_undecided += tally[i].undecided;
    const int decided = r.n_left + r.n_right;
    r.closed_form = obs::schramm_probability(points[i]);
    if (decided > 0) {
      r.fraction = static_cast<double>(r.n_left) / decided;
      r.stderr_ = std::sqrt(
          std::max(r.fraction * (1.0 - r.fraction), 1.0 / decided) / decided);
      r.zscore = (r.fraction - r.closed_form) / r.stderr_;
    }
    report.rows.push_back(r);
  }
  report.undecided_fraction =
      static_cast<double>(total_undecided) /
      (static_cast<double>(cfg.n_paths) * static_cast<double>(n_pts));
  report.flagged = report.undecided_fraction > 0.05;
  return report;
}

LatticeReport lattice_green_check(double mesh, double half_length) {
  if (mesh > 1.0 / 32.0 + 1e-12)
    throw Error(ErrorCode::Unsupported, "lattice check requires mesh <= 1/32");
  if (half_length < 6.0 * M_PI - 1e-9)
    throw Error(ErrorCode::Unsupported, "lattice check requires L >= 6 pi");
  // Fit the mesh to the strip height exactly.
  const int m = static_cast<int>(std::lround(M_PI / mesh));
  const double h = M_PI / m;
  const int half_cols = static_cast<int>(std::lround(half_length / h));
  const int nxi = 2 * half_cols - 1;  // interior x nodes
  const int rows = m;                 // y = h .. pi (top row Neumann)
  const auto n_unknowns = static_cast<std::size_t>(nxi) * rows;

  auto index = [&](int i, int j) {  // i in [0,nxi), j in [1,m]
    return static_cast<long>(j - 1) * nxi + i;
  };
  auto x_of = [&](int i) { return (i - (half_cols - 1)) * h; };

  using Trip = Eigen::Triplet<double>;
  std::vector<Trip> trips;
  trips.reserve(n_unknowns * 5);
  for (int j = 1; j <= m; ++j) {
    const bool top = (j == m);
    const double rowscale = top ? 0.5 : 1.0;  // keep the matrix symmetric
    for (int i = 0; i < nxi; ++i) {
      const long r = index(i, j);
      trips.emplace_back(r, r, 4.0 * rowscale);
      if (i > 0) trips.emplace_back(r, index(i - 1, j), -rowscale);
      if (i + 1 < nxi) trips.emplace_back(r, index(i + 1, j), -rowscale);
      // The ghost reflection on the top row doubles the downward coupling;
      // after the 1/2 row scaling it is the same -1 entry as elsewhere,
      // which keeps the matrix symmetric positive definite.
      if (j > 1) trips.emplace_back(r, index(i, j - 1), -1.0);
      if (!top) trips.emplace_back(r, index(i, j + 1), -1.0);
    }
  }
  Eigen::SparseMatrix<double> A(static_cast<long>(n_unknowns),
                                static_cast<long>(n_unknowns));
  A.setFromTriplets(trips.begin(), trips.end());

  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                           Eigen::Lower | Eigen::Upper>
      solver;
  solver.setTolerance(1e-10);
  solver.compute(A);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::SolverFailure, "CG factorization failed");

  LatticeReport report;
  report.mesh = h;
  report.half_length = half_length;

  // Sources and targets snapped to grid nodes near the center.
  struct Probe {
    int si, sj;
    std::vector<std::pair<int, int>> targets;
  };
  const int ci = half_cols - 1;  // column of x = 0
  std::vector<Probe> probes;
  {
    Probe p1;
    p1.si = ci;
    p1.sj = m / 2;
    p1.targets = {{ci + static_cast<int>(std::lround(0.8 / h)), m / 2},
                  {ci - static_cast<int>(std::lround(1.3 / h)), 3 * m / 4},
                  {ci + static_cast<int>(std::lround(0.5 / h)), m / 4}};
    probes.push_back(p1);
    Probe p2;
    p2.si = ci + static_cast<int>(std::lround(0.7 / h));
    p2.sj = 2 * m / 3;
    p2.targets = {{ci - static_cast<int>(std::lround(0.6 / h)), m / 2},
                  {ci + static_cast<int>(std::lround(1.9 / h)), m / 3}};
    probes.push_back(p2);
  }

  for (const Probe& pr : probes) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<long>(n_unknowns));
    const double rowscale = (pr.sj == m) ? 0.5 : 1.0;
    b[index(pr.si, pr.sj)] = 2.0 * M_PI * rowscale;
    const Eigen::VectorXd u = solver.solve(b);
    if (solver.info() != Eigen::Success)
      throw Error(ErrorCode::SolverFailure, "CG did not converge");
    const cplx zsrc(x_of(pr.si), pr.sj * h);
    for (auto [ti, tj] : pr.targets) {
      LatticePair pair;
      pair.source = zsrc;
      pair.target = cplx(x_of(ti), tj * h);
      pair.discrete = u[index(ti, tj)];
      pair.continuum = green_strip(pair.target, zsrc);
      pair.rel_error =
          std::abs(pair.discrete - pair.continuum) / std::abs(pair.continuum);
      report.max_rel_error = std::max(report.max_rel_error, pair.rel_error);
      report.pairs.push_back(pair);
    }
  }
  return report;
}

}  // namespace sle::mc
