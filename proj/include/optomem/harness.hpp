#pragma once

// Run orchestration: single trajectories, Wigner snapshot series and
// parameter sweeps, each writing its artifacts plus the resolved config into
// an output directory.

#include <filesystem>
#include <string>
#include <vector>

#include "optomem/config.hpp"
#include "optomem/evolve.hpp"
#include "optomem/revival.hpp"
#include "optomem/wigner.hpp"

namespace optomem {

/// Initial state and generator for a config.
struct Problem {
  HilbertDims dims;
  DensityMatrix rho0;
  Superoperator generator;
  /// Mode carrying the stored coherent state; its amplitude feeds the revival
  /// analysis and its reduced state the Wigner snapshots.
  std::size_t tracked_mode;
  /// Squared norm of the truncated coherent ket before renormalization.
  double captured_norm;
};

Problem build_problem(const RunConfig& config);

/// "optical" / "mechanical" in two-mode runs, "combined" otherwise.
std::string tracked_mode_label(const RunConfig& config);

struct RunResult {
  Trajectory trajectory;
  RevivalReport report;
  std::size_t tracked_mode;
};

/// Integrates the config without touching the disk. `with_snapshots` keeps
/// the full state at the configured snapshot times.
RunResult simulate(const RunConfig& config, bool with_snapshots = false);

struct SnapshotMetrics {
  double t;
  GridExtremum min;
  GridExtremum max;
  double negativity_volume;
  double integral;
  std::string file;
};

struct SnapshotRun {
  RunResult run;
  std::vector<SnapshotMetrics> snapshots;
};

/// Writes trajectory.csv, report.json and config.resolved.txt.
RunResult run_single(const RunConfig& config, const std::filesystem::path& out_dir);

/// Writes one Wigner grid file per snapshot time that lies within the horizon,
/// snapshots.json, and the files of run_single.
SnapshotRun run_snapshots(const RunConfig& config, const std::filesystem::path& out_dir);

/// Runs every sweep point concurrently, writes point_<k>/ (k in parameter
/// order) and summary.csv. Returns the summary rows.
std::vector<SweepRow> run_sweep(const RunConfig& config, const std::filesystem::path& out_dir);

/// JSON document for a revival report; `traj` adds integration diagnostics.
std::string report_json(const RunConfig& config, const RevivalReport& report, const Trajectory* traj);

/// "wigner_t<time>_<mode>.grid" with the time printed to three decimals.
std::string snapshot_filename(double t, const std::string& mode_label);

}  // namespace optomem
