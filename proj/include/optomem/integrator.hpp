#pragma once

// Explicit Runge-Kutta integrators for real first-order systems y' = f(t, y).
// Complex problems are handed over as interleaved (re, im) doubles.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>

namespace optomem {

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Called once per output time, in increasing order.
using OdeObserver = std::function<void(std::size_t index, double t, std::span<const double> y)>;

/// Applied to the state and its derivative after every accepted step. Must
/// commute with the right-hand side (e.g. a projection onto an invariant set).
using OdeStepHook = std::function<void(std::span<double> y, std::span<double> dydt)>;

struct Dopri5Options {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 0.0;  // 0 selects a step automatically
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 100'000'000;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
  double last_step = 0.0;
};

/// Adaptive Dormand-Prince 5(4) with the 4th-order continuous extension used
/// to report `y` at each entry of `output_times` (strictly increasing, first
/// entry >= t0). On return `y` holds the state at the last output time.
///
/// The error norm is max_i |err_i| / (atol + rtol * max(|y_i|, |y_new_i|)).
/// Throws StiffnessError when the step shrinks below 1e-13 * max(1, |t|) or
/// the step budget is exhausted.
IntegrationStats integrate_dopri5(const OdeRhs& f, double t0, std::span<double> y,
                                  std::span<const double> output_times, const OdeObserver& observe,
                                  const Dopri5Options& opts = {}, const OdeStepHook& hook = {});

/// Classical fixed-step RK4. Each interval between consecutive output times is
/// split into ceil(interval / dt) equal steps.
IntegrationStats integrate_rk4(const OdeRhs& f, double t0, std::span<double> y,
                               std::span<const double> output_times, double dt,
                               const OdeObserver& observe, const OdeStepHook& hook = {});

}  // namespace optomem
