#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "optomem/evolve.hpp"

namespace optomem {

/// 2 pi / (k_c + k_m). Throws NoRevivalError in the harmonic limit.
double revival_time(double k_c, double k_m);

struct RevivalOptions {
  /// Predicted revival time; when absent (harmonic evolution) the sampling
  /// check and the peak separation constraint are skipped.
  std::optional<double> t_rev;
  double prominence = 0.1;          // relative to |amplitude(0)|
  double collapse_threshold = 0.15;  // relative to |amplitude(0)|
  double min_separation = 0.3;      // fraction of t_rev / 2
  double min_samples_per_half_revival = 20.0;
  double irregular_window = 0.1;    // fraction of t_rev / 2
};

enum class RevivalRegime {
  PerfectRevival,       // modulus never drops below the collapse threshold
  CollapseRevival,      // collapses followed by revivals near multiples of t_rev / 2
  Irregular,            // revivals present but none near a predicted time
  RevivalsDisappeared,  // collapse without any detected revival
};

std::string to_string(RevivalRegime regime);

struct RevivalPeak {
  double t;
  double modulus;
};

struct CollapseWindow {
  double t_start;
  double t_end;
};

struct RevivalReport {
  std::optional<double> t_rev_predicted;
  double initial_modulus = 0.0;
  std::vector<RevivalPeak> peaks;
  std::vector<CollapseWindow> collapse_windows;
  double first_revival_ratio = 0.0;
  RevivalRegime regime = RevivalRegime::PerfectRevival;

  /// Total length of collapse windows inside [t0, t1].
  double collapsed_time(double t0, double t1) const;
  bool collapsed_at(double t) const;
};

/// Peak and collapse analysis of the modulus series |amplitude(t)|.
///
/// Peaks are interior local maxima with prominence >= prominence * |a(0)|,
/// thinned so that no two are closer than min_separation * t_rev / 2 (the
/// higher one wins). Collapse windows are the maximal intervals where the
/// modulus is below collapse_threshold * |a(0)|, with linearly interpolated
/// crossing times. first_revival_ratio is the modulus of the first peak over
/// |a(0)|; without peaks it is taken at the sample nearest t_rev / 2 (or the
/// last sample when there is no predicted revival).
RevivalReport detect_revivals(std::span<const double> times, std::span<const double> modulus,
                              const RevivalOptions& opts = {});
RevivalReport detect_revivals(const Trajectory& traj, std::size_t mode, const RevivalOptions& opts = {});

struct SweepRow {
  double parameter;
  double first_revival_ratio;
  std::size_t n_peaks;
  RevivalRegime regime;
};

/// One row per (parameter, report), ordered by parameter value.
std::vector<SweepRow> sweep_summary(std::span<const std::pair<double, RevivalReport>> reports);

}  // namespace optomem
