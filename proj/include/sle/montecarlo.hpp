#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sle/observables.hpp"

namespace sle::mc {

using cplx = std::complex<double>;

struct EnsembleConfig {
  int n_paths = 1000;
  double kappa = 4.0;
  double dt = 1e-3;
  double T = 1.0;
  std::uint64_t seed = 1;
  std::vector<cplx> points;          // primary evaluation points
  cplx companion{-0.3, 1.7};         // partner point for two-point entries
  std::vector<double> checkpoints;   // subset of [0, T]
  unsigned threads = 0;              // 0 = hardware concurrency
  bool include_negative_control = false;
  // Observables are frozen at the first grid time |w_t| drops below this
  // radius (a stopping time). The singular entries (current, two-point
  // vertex) are local martingales; stopping at a fixed radius bounds them,
  // so the frozen increments have zero mean exactly.
  double stop_radius = 0.3;
};

struct Row {
  int path = 0;
  double t = 0.0;
  int observable = 0;  // index into Table::observables
  int point = 0;       // index into Table::points
  cplx value{};
  bool stopped = false;
};

struct Table {
  std::vector<obs::Observable> observables;
  std::vector<cplx> points;
  std::vector<double> checkpoints;
  std::vector<Row> rows;  // ordered by (path, checkpoint, observable, point)
};

// Evaluate the observable catalog along an ensemble of driven flows at each
// checkpoint; values are frozen at the swallow time of any involved point.
Table run_ensemble(const EnsembleConfig& cfg);

struct DriftCell {
  std::string observable;
  int point = 0;
  double t0 = 0.0, t1 = 0.0;
  int n = 0;
  double mean_re = 0.0, stderr_re = 0.0, z_re = 0.0;
  double mean_im = 0.0, stderr_im = 0.0, z_im = 0.0;
  bool inconclusive = false;
  bool pass = false;
};

struct DriftReport {
  std::vector<DriftCell> cells;
  double z_threshold = 3.5;
  int n_inconclusive = 0;
  bool all_pass = true;  // over conclusive cells
};

DriftReport drift_test(const Table& table,
                       const std::vector<std::pair<double, double>>& pairs,
                       double z_threshold = 3.5);

struct SchrammRow {
  cplx z{};
  int n_left = 0, n_right = 0, n_undecided = 0;
  double fraction = 0.0;   // left fraction among decided paths
  double stderr_ = 0.0;
  double closed_form = 0.0;
  double zscore = 0.0;
};

struct SchrammReport {
  std::vector<SchrammRow> rows;
  int n_paths = 0;
  double undecided_fraction = 0.0;
  bool flagged = false;  // undecided fraction above 5%
};

// Monte Carlo estimate of P[z left of the curve] against the closed form
// arg(tanh(z/4)) / pi.
SchrammReport schramm_estimate(const EnsembleConfig& cfg,
                               const std::vector<cplx>& points);

struct LatticePair {
  cplx source{};
  cplx target{};
  double discrete = 0.0;
  double continuum = 0.0;
  double rel_error = 0.0;
};

struct LatticeReport {
  double mesh = 0.0;
  double half_length = 0.0;
  std::vector<LatticePair> pairs;
  double max_rel_error = 0.0;
};

// Discrete mixed-boundary Green's function (5-point Laplacian, Dirichlet
// bottom/ends, Neumann top via ghost reflection) vs the continuum formula.
LatticeReport lattice_green_check(double mesh, double half_length);

}  // namespace sle::mc
