#include "optomem/revival.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "optomem/errors.hpp"

namespace optomem {

namespace {

struct Candidate {
  std::size_t index;
  double value;
};

std::vector<Candidate> local_maxima(std::span<const double> x) {
  std::vector<Candidate> out;
  const std::size_t n = x.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (x[i - 1] < x[i]) {
      std::size_t j = i;
      while (j + 1 < n && x[j + 1] == x[i]) ++j;
      if (j + 1 < n && x[j + 1] < x[i]) {
        out.push_back({(i + j) / 2, x[i]});
      }
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

double prominence(std::span<const double> x, std::size_t k) {
  const double v = x[k];
  double left_min = v;
  for (std::size_t idx = k; idx-- > 0;) {
    if (x[idx] > v) break;
    left_min = std::min(left_min, x[idx]);
  }
  double right_min = v;
  for (std::size_t idx = k + 1; idx < x.size(); ++idx) {
    if (x[idx] > v) break;
    right_min = std::min(right_min, x[idx]);
  }
  return v - std::max(left_min, right_min);
}

double crossing(double t0, double v0, double t1, double v1, double level) {
  if (v1 == v0) return t0;
  return t0 + (level - v0) * (t1 - t0) / (v1 - v0);
}

}  // namespace

double revival_time(double k_c, double k_m) {
  const double sum = k_c + k_m;
  if (!(sum > 0.0)) throw NoRevivalError("k_c + k_m must be positive for a revival timescale");
  return 2.0 * std::numbers::pi / sum;
}

std::string to_string(RevivalRegime regime) {
  switch (regime) {
    case RevivalRegime::PerfectRevival: return "perfect_revival";
    case RevivalRegime::CollapseRevival: return "collapse_revival";
    case RevivalRegime::Irregular: return "irregular";
    case RevivalRegime::RevivalsDisappeared: return "revivals_disappeared";
  }
  return "unknown";
}

double RevivalReport::collapsed_time(double t0, double t1) const {
  double total = 0.0;
  for (const auto& w : collapse_windows) {
    const double lo = std::max(t0, w.t_start);
    const double hi = std::min(t1, w.t_end);
    if (hi > lo) total += hi - lo;
  }
  return total;
}

bool RevivalReport::collapsed_at(double t) const {
  return std::any_of(collapse_windows.begin(), collapse_windows.end(),
                     [t](const auto& w) { return w.t_start <= t && t <= w.t_end; });
}

RevivalReport detect_revivals(std::span<const double> times, std::span<const double> modulus,
                              const RevivalOptions& opts) {
  if (times.size() != modulus.size()) throw SamplingError("time and modulus series differ in length");
  if (times.size() < 3) throw SamplingError("revival detection needs at least 3 samples");
  const double a0 = modulus[0];
  if (!(a0 > 0.0)) throw SamplingError("initial amplitude is zero; nothing to track");

  RevivalReport report;
  report.t_rev_predicted = opts.t_rev;
  report.initial_modulus = a0;
  const double t_first = times.front();
  const double t_last = times.back();

  if (opts.t_rev) {
    const double half = *opts.t_rev / 2.0;
    const double dt = (t_last - t_first) / static_cast<double>(times.size() - 1);
    if (half / dt < opts.min_samples_per_half_revival) {
      throw SamplingError("trajectory has " + std::to_string(half / dt) +
                          " samples per half revival; need at least " +
                          std::to_string(opts.min_samples_per_half_revival));
    }
  }

  // Peaks.
  std::vector<Candidate> cands;
  for (const auto& c : local_maxima(modulus)) {
    if (prominence(modulus, c.index) >= opts.prominence * a0) cands.push_back(c);
  }
  if (opts.t_rev) {
    const double min_gap = opts.min_separation * *opts.t_rev / 2.0;
    std::vector<Candidate> by_height = cands;
    std::stable_sort(by_height.begin(), by_height.end(),
                     [](const auto& a, const auto& b) { return a.value > b.value; });
    std::vector<Candidate> kept;
    for (const auto& c : by_height) {
      const bool clash = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
        return std::abs(times[k.index] - times[c.index]) < min_gap;
      });
      if (!clash) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    cands = std::move(kept);
  }
  for (const auto& c : cands) report.peaks.push_back({times[c.index], c.value});

  // Collapse windows.
  const double level = opts.collapse_threshold * a0;
  std::optional<double> open;
  for (std::size_t i = 0; i < modulus.size(); ++i) {
    const bool below = modulus[i] < level;
    if (below && !open) {
      open = i == 0 ? times[0] : crossing(times[i - 1], modulus[i - 1], times[i], modulus[i], level);
    } else if (!below && open) {
      report.collapse_windows.push_back(
          {*open, crossing(times[i - 1], modulus[i - 1], times[i], modulus[i], level)});
      open.reset();
    }
  }
  if (open) report.collapse_windows.push_back({*open, t_last});

  // First revival ratio.
  if (!report.peaks.empty()) {
    report.first_revival_ratio = report.peaks.front().modulus / a0;
  } else {
    std::size_t idx = modulus.size() - 1;
    if (opts.t_rev && *opts.t_rev / 2.0 <= t_last) {
      const double target = t_first + *opts.t_rev / 2.0;
      const auto it = std::lower_bound(times.begin(), times.end(), target);
      idx = static_cast<std::size_t>(it - times.begin());
      if (idx > 0 && (idx == times.size() || target - times[idx - 1] <= times[idx] - target)) --idx;
    }
    report.first_revival_ratio = modulus[idx] / a0;
  }

  // Classification.
  if (report.collapse_windows.empty()) {
    report.regime = RevivalRegime::PerfectRevival;
  } else if (report.peaks.empty()) {
    report.regime = RevivalRegime::RevivalsDisappeared;
  } else if (opts.t_rev) {
    const double half = *opts.t_rev / 2.0;
    const double window = opts.irregular_window * half;
    const bool near_prediction = std::any_of(report.peaks.begin(), report.peaks.end(), [&](const auto& pk) {
      const double m = std::round((pk.t - t_first) / half);
      return m >= 1.0 && std::abs(pk.t - t_first - m * half) <= window;
    });
    report.regime = near_prediction ? RevivalRegime::CollapseRevival : RevivalRegime::Irregular;
  } else {
    report.regime = RevivalRegime::CollapseRevival;
  }
  return report;
}

RevivalReport detect_revivals(const Trajectory& traj, std::size_t mode, const RevivalOptions& opts) {
  const auto& amp = traj.amplitude(mode);
  std::vector<double> modulus(amp.size());
  std::transform(amp.begin(), amp.end(), modulus.begin(), [](cplx a) { return std::abs(a); });
  return detect_revivals(traj.times, modulus, opts);
}

std::vector<SweepRow> sweep_summary(std::span<const std::pair<double, RevivalReport>> reports) {
  std::vector<SweepRow> rows;
  rows.reserve(reports.size());
  for (const auto& [param, rep] : reports) {
    rows.push_back({param, rep.first_revival_ratio, rep.peaks.size(), rep.regime});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.parameter < b.parameter; });
  return rows;
}

}  // namespace optomem
