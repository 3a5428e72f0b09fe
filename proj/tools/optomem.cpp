// optomem: command-line front end for the Kerr optomechanical memory model.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "optomem/config.hpp"
#include "optomem/errors.hpp"
#include "optomem/harness.hpp"
#include "optomem/kernels.hpp"
#include "optomem/output.hpp"

namespace {

using namespace optomem;

struct CommonArgs {
  std::string config_path;
  std::string preset_name;
  std::string out_dir;
  int threads = 0;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "config file (key = value lines)")->check(CLI::ExistingFile);
  cmd->add_option("--preset", args.preset_name, "built-in preset to start from");
  cmd->add_option("--out", args.out_dir, "output directory (overrides output.dir)");
  cmd->add_option("--threads", args.threads, "OpenMP threads")->check(CLI::PositiveNumber);
  cmd->add_option("--override", args.overrides, "dotted key=value applied last (repeatable)");
}

// Preset first, then the config file on top, then overrides.
RunConfig resolve(const CommonArgs& args) {
  RunConfig config = args.preset_name.empty() ? RunConfig{} : preset(args.preset_name);
  if (!args.config_path.empty()) config = load_config(args.config_path, config);
  for (const auto& o : args.overrides) apply_override(config, o);
  if (!args.out_dir.empty()) config.output_dir = args.out_dir;
  if (args.threads > 0) kernels::set_threads(args.threads);
  config.validate();
  return config;
}

void print_report(const RevivalReport& r) {
  std::printf("regime              %s\n", to_string(r.regime).c_str());
  std::printf("first_revival_ratio %s\n", io::format_double(r.first_revival_ratio).c_str());
  std::printf("peaks               %zu\n", r.peaks.size());
  for (const auto& p : r.peaks) {
    std::printf("  t = %s  |a| = %s\n", io::format_double(p.t).c_str(), io::format_double(p.modulus).c_str());
  }
  std::printf("collapse windows    %zu\n", r.collapse_windows.size());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kerr optomechanical quantum memory: simulation, Wigner snapshots and revival analysis"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "debug logging");

  CommonArgs sim_args, snap_args, sweep_args, report_args;
  auto* sim = app.add_subcommand("simulate", "integrate one configuration; write trajectory.csv and report.json");
  add_common(sim, sim_args);
  auto* snaps = app.add_subcommand("wigner-snapshots", "simulate and write Wigner grids at the snapshot times");
  add_common(snaps, snap_args);
  auto* sweep = app.add_subcommand("sweep", "run every sweep point and write summary.csv");
  add_common(sweep, sweep_args);
  auto* report = app.add_subcommand("revival-report", "analyse an existing trajectory.csv");
  add_common(report, report_args);
  std::string trajectory_path;
  std::string column = "auto";
  report->add_option("--trajectory", trajectory_path, "trajectory CSV written by simulate")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--column", column, "amplitude column to analyse")
      ->check(CLI::IsMember({"auto", "a", "b"}));
  auto* presets = app.add_subcommand("presets", "list built-in presets, or print one resolved");
  std::string show;
  presets->add_option("name", show, "preset to print");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (*sim) {
      const RunConfig c = resolve(sim_args);
      const RunResult r = run_single(c, c.output_dir);
      print_report(r.report);
      std::printf("wrote %s\n", c.output_dir.c_str());
    } else if (*snaps) {
      const RunConfig c = resolve(snap_args);
      const SnapshotRun r = run_snapshots(c, c.output_dir);
      for (const auto& s : r.snapshots) {
        std::printf("t = %s  min W = %s  negativity = %s  %s\n", io::format_double(s.t).c_str(),
                    io::format_double(s.min.value).c_str(), io::format_double(s.negativity_volume).c_str(),
                    s.file.c_str());
      }
      std::printf("wrote %s\n", c.output_dir.c_str());
    } else if (*sweep) {
      const RunConfig c = resolve(sweep_args);
      const auto rows = run_sweep(c, c.output_dir);
      std::cout << io::summary_csv(rows);
      std::printf("wrote %s\n", c.output_dir.c_str());
    } else if (*report) {
      const RunConfig c = resolve(report_args);
      const io::TrajectoryTable t = io::read_trajectory_csv(trajectory_path);
      bool use_b = column == "b";
      if (column == "auto") use_b = c.mode == RunMode::TwoMode && c.storage == StorageMode::Mechanical;
      std::vector<double> modulus;
      for (const auto& a : use_b ? t.b : t.a) modulus.push_back(std::abs(a));
      const RevivalReport r = detect_revivals(t.t, modulus, c.revival_options());
      print_report(r);
      if (!report_args.out_dir.empty()) {
        io::write_file(std::filesystem::path(c.output_dir) / "report.json", report_json(c, r, nullptr));
      }
    } else if (*presets) {
      if (show.empty()) {
        for (const auto& n : preset_names()) std::printf("%s\n", n.c_str());
      } else {
        std::cout << to_config_text(preset(show));
      }
    }
  } catch (const ConfigError& e) {
    spdlog::error("configuration: {}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
