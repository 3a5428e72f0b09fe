#pragma once

// Run configuration and its flat text format.
//
// The file format is one `dotted.key = value` per line. `#` starts a comment,
// blank lines are ignored, lists are comma-separated, and every key may
// appear at most once. The recognized keys and their defaults are those
// written by `to_config_text`; `known_keys()` lists them in that order.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optomem/evolve.hpp"
#include "optomem/liouvillian.hpp"
#include "optomem/revival.hpp"
#include "optomem/wigner.hpp"

namespace optomem {

enum class RunMode { TwoMode, CombinedKerr };
enum class StorageMode { Optical, Mechanical };
enum class SweepAxis { Gamma, Nonlinearity, BathTemp, Alpha };

std::string to_string(RunMode mode);
std::string to_string(StorageMode mode);
std::string to_string(SweepAxis axis);

struct SweepSettings {
  SweepAxis axis = SweepAxis::Gamma;
  std::vector<double> values;
};

struct RunConfig {
  std::string name = "custom";
  RunMode mode = RunMode::TwoMode;
  SystemParams params = SystemParams::reference();
  /// Drops the omega n terms from the Hamiltonian (thermal occupations still
  /// use the configured frequencies).
  bool zero_linear_frequencies = false;

  std::size_t dim_optical = 10;
  std::size_t dim_mechanical = 10;
  std::size_t dim_combined = 30;

  StorageMode storage = StorageMode::Mechanical;
  cplx alpha{1.5, 0.0};

  std::optional<double> horizon;  // unset: 2 * revival time
  std::size_t n_samples = 2000;
  std::vector<double> snapshots{0, 10, 30, 50, 79, 100, 125, 150, 157, 237, 314, 395, 471, 553, 627};

  PhaseSpaceGrid wigner_grid;

  Stepper stepper = Stepper::Dopri5;
  double rtol = 1e-8;
  double atol = 1e-10;
  double fixed_step = 0.0;

  double prominence = 0.1;
  double collapse_threshold = 0.15;
  double min_separation = 0.3;

  std::string output_dir = "out";
  std::optional<SweepSettings> sweep;

  /// Throws ConfigError on any violated invariant.
  void validate() const;

  /// Explicit horizon, or twice the revival time. Throws ConfigError when
  /// neither is available.
  double resolved_horizon() const;

  /// Predicted revival time, absent in the harmonic limit.
  std::optional<double> revival_prediction() const;

  RevivalOptions revival_options() const;
  EvolveOptions evolve_options() const;
};

/// Applies `key = value` assignments from `text` on top of `base`.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Applies one `key=value` override (same grammar as a config line).
void apply_override(RunConfig& config, std::string_view assignment);

/// Fully resolved configuration in the file format; parse_config of the
/// result reproduces `config` exactly.
std::string to_config_text(const RunConfig& config);

const std::vector<std::string>& known_keys();

/// Built-in presets: fig2-combined, fig4, fig5, fig6, fig7, fig8, harmonic-check.
const std::vector<std::string>& preset_names();
RunConfig preset(std::string_view name);

/// Returns a copy of `base` with the sweep axis set to `value`.
RunConfig with_sweep_value(const RunConfig& base, SweepAxis axis, double value);

}  // namespace optomem
