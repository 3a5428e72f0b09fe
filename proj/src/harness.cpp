#include "optomem/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "optomem/errors.hpp"
#include "optomem/output.hpp"

namespace optomem {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kConfigEcho = "config.resolved.txt";
constexpr double kCapturedNormWarning = 1e-3;

void write_echo(const RunConfig& config, const fs::path& dir) {
  io::write_file(dir / kConfigEcho, to_config_text(config));
}

// Runs `fn`; library errors are re-raised with a pointer to the config echo.
template <typename Fn>
auto with_echo(const RunConfig& config, const fs::path& dir, Fn&& fn) {
  write_echo(config, dir);
  const std::string suffix = " [run '" + config.name + "', resolved config in " + (dir / kConfigEcho).string() + "]";
  try {
    return fn();
  } catch (const StiffnessError& e) {
    throw StiffnessError(e.what() + suffix);
  } catch (const IntegrationError& e) {
    throw IntegrationError(e.what() + suffix);
  } catch (const SamplingError& e) {
    throw SamplingError(e.what() + suffix);
  } catch (const NoRevivalError& e) {
    throw NoRevivalError(e.what() + suffix);
  } catch (const ParameterError& e) {
    throw ParameterError(e.what() + suffix);
  } catch (const DimensionError& e) {
    throw DimensionError(e.what() + suffix);
  }
}

ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return io::rounded(v);
}

double sweep_parameter(const RunConfig& c, SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Gamma: return c.params.gamma_m;
    case SweepAxis::Nonlinearity: return c.params.k_m;
    case SweepAxis::BathTemp: return c.params.bath_temp;
    case SweepAxis::Alpha: return c.alpha.real();
  }
  return 0.0;
}

std::vector<double> snapshots_within(const RunConfig& config, double horizon) {
  std::vector<double> kept;
  for (double t : config.snapshots) {
    if (t >= 0.0 && t <= horizon) {
      kept.push_back(t);
    } else {
      spdlog::warn("snapshot t = {} lies outside [0, {}] and is dropped", t, horizon);
    }
  }
  return kept;
}

}  // namespace

std::string tracked_mode_label(const RunConfig& config) {
  if (config.mode == RunMode::CombinedKerr) return "combined";
  return to_string(config.storage);
}

Problem build_problem(const RunConfig& config) {
  config.validate();
  const SystemParams& p = config.params;
  const double t_au = kelvin_to_au(p.bath_temp);

  if (config.mode == RunMode::CombinedKerr) {
    const std::size_t n = config.dim_combined;
    const Ket psi = coherent_ket(config.alpha, n);
    SystemParams h = p;
    if (config.zero_linear_frequencies) h.omega_m = 0.0;
    const double n_th = thermal_occupation(p.omega_m, t_au);
    return {HilbertDims{n}, product_dm({psi}), combined_kerr_liouvillian(h, n, n_th), 0,
            psi.norm() * psi.norm()};
  }

  const HilbertDims dims{config.dim_optical, config.dim_mechanical};
  const std::size_t storage = config.storage == StorageMode::Optical ? 0 : 1;
  const Ket stored = coherent_ket(config.alpha, dims[storage]);
  const Ket idle = vacuum_ket(dims[1 - storage]);
  const Ket kets[2] = {storage == 0 ? stored : idle, storage == 0 ? idle : stored};
  SystemParams h = p;
  if (config.zero_linear_frequencies) {
    h.omega_c = 0.0;
    h.omega_m = 0.0;
  }
  const double n_c = thermal_occupation(p.omega_c, t_au);
  const double n_m = thermal_occupation(p.omega_m, t_au);
  return {dims, product_dm(std::span<const Ket>(kets)), liouvillian(h, dims, n_c, n_m), storage,
          stored.norm() * stored.norm()};
}

RunResult simulate(const RunConfig& config, bool with_snapshots) {
  const Problem prob = build_problem(config);
  if (prob.captured_norm < 1.0 - kCapturedNormWarning) {
    spdlog::warn("truncation keeps only {:.6f} of the coherent state's norm; raise the mode dimension",
                 prob.captured_norm);
  }
  const double horizon = config.resolved_horizon();
  const TimeGrid grid = TimeGrid::uniform(horizon, config.n_samples);

  EvolveOptions opts = config.evolve_options();
  opts.overlap_alpha = config.alpha;
  opts.overlap_mode = prob.tracked_mode;
  if (with_snapshots) opts.snapshot_times = snapshots_within(config, horizon);

  Trajectory traj = evolve(prob.rho0, prob.generator, grid, opts);
  RevivalReport report = detect_revivals(traj, prob.tracked_mode, config.revival_options());
  return {std::move(traj), std::move(report), prob.tracked_mode};
}

std::string report_json(const RunConfig& config, const RevivalReport& report, const Trajectory* traj) {
  ordered_json j;
  j["name"] = config.name;
  j["mode"] = to_string(config.mode);
  j["tracked_mode"] = tracked_mode_label(config);
  j["t_rev_predicted"] = report.t_rev_predicted ? num(*report.t_rev_predicted) : ordered_json(nullptr);
  j["initial_modulus"] = num(report.initial_modulus);
  j["first_revival_ratio"] = num(report.first_revival_ratio);
  j["regime"] = to_string(report.regime);
  j["peaks"] = ordered_json::array();
  for (const auto& pk : report.peaks) j["peaks"].push_back({{"t", num(pk.t)}, {"modulus", num(pk.modulus)}});
  j["collapse_windows"] = ordered_json::array();
  for (const auto& w : report.collapse_windows) {
    j["collapse_windows"].push_back({{"t_start", num(w.t_start)}, {"t_end", num(w.t_end)}});
  }
  if (traj) {
    j["integration"] = {{"max_trace_drift", num(traj->max_trace_drift())},
                        {"max_hermiticity_defect", num(traj->max_hermiticity_defect)},
                        {"accepted_steps", traj->stats.accepted},
                        {"rejected_steps", traj->stats.rejected},
                        {"rhs_evaluations", traj->stats.rhs_evals}};
  }
  return j.dump(2) + "\n";
}

std::string snapshot_filename(double t, const std::string& mode_label) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "wigner_t%.3f_%s.grid", t, mode_label.c_str());
  return buf;
}

namespace {

void write_run(const RunConfig& config, const RunResult& r, const fs::path& dir) {
  io::write_file(dir / "trajectory.csv", io::trajectory_csv(io::to_table(r.trajectory)));
  io::write_file(dir / "report.json", report_json(config, r.report, &r.trajectory));
}

}  // namespace

RunResult run_single(const RunConfig& config, const fs::path& out_dir) {
  return with_echo(config, out_dir, [&] {
    RunResult r = simulate(config);
    write_run(config, r, out_dir);
    return r;
  });
}

SnapshotRun run_snapshots(const RunConfig& config, const fs::path& out_dir) {
  return with_echo(config, out_dir, [&] {
    SnapshotRun out{simulate(config, true), {}};
    write_run(config, out.run, out_dir);
    const std::string label = tracked_mode_label(config);
    ordered_json j = ordered_json::array();
    for (const auto& snap : out.run.trajectory.snapshots) {
      const QOperator reduced = snap.rho.dims().modes() > 1 ? partial_trace(snap.rho.op(), out.run.tracked_mode)
                                                             : snap.rho.op();
      const WignerField field = wigner(reduced, config.wigner_grid);
      const std::string file = snapshot_filename(snap.t, label);
      io::write_file(out_dir / file, io::wigner_grid_text(field));
      SnapshotMetrics m{snap.t, min_value(field), max_value(field), negativity_volume(field), integral(field), file};
      j.push_back({{"t", num(m.t)},
                   {"file", m.file},
                   {"min", {{"value", num(m.min.value)}, {"x", num(m.min.x)}, {"p", num(m.min.p)}}},
                   {"max", {{"value", num(m.max.value)}, {"x", num(m.max.x)}, {"p", num(m.max.p)}}},
                   {"negativity_volume", num(m.negativity_volume)},
                   {"integral", num(m.integral)}});
      out.snapshots.push_back(std::move(m));
    }
    io::write_file(out_dir / "snapshots.json", j.dump(2) + "\n");
    return out;
  });
}

std::vector<SweepRow> run_sweep(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  if (!config.sweep) throw ConfigError("run_sweep needs sweep.axis and sweep.values");
  write_echo(config, out_dir);

  const SweepAxis axis = config.sweep->axis;
  std::vector<double> values = config.sweep->values;
  std::sort(values.begin(), values.end());

  std::vector<RunConfig> points;
  for (double v : values) {
    RunConfig c = with_sweep_value(config, axis, v);
    c.name = config.name + "/point";
    points.push_back(std::move(c));
  }
  for (std::size_t k = 0; k < points.size(); ++k) points[k].name += std::to_string(k);

  std::vector<std::optional<RevivalReport>> reports(points.size());
  std::vector<std::exception_ptr> errors(points.size());

  const int saved_levels = omp_get_max_active_levels();
  omp_set_max_active_levels(1);
  const int n_points = static_cast<int>(points.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < n_points; ++k) {
    try {
      const fs::path dir = out_dir / ("point_" + std::to_string(k));
      reports[k] = run_single(points[k], dir).report;
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  omp_set_max_active_levels(saved_levels);

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<std::pair<double, RevivalReport>> keyed;
  for (std::size_t k = 0; k < points.size(); ++k) keyed.emplace_back(sweep_parameter(points[k], axis), *reports[k]);
  std::vector<SweepRow> rows = sweep_summary(keyed);
  io::write_file(out_dir / "summary.csv", io::summary_csv(rows));
  return rows;
}

}  // namespace optomem
