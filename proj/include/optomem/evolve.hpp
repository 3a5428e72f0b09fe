#pragma once

#include <optional>
#include <vector>

#include "optomem/integrator.hpp"
#include "optomem/liouvillian.hpp"
#include "optomem/states.hpp"

namespace optomem {

/// Strictly increasing sample times starting at 0.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);

  /// n_samples points evenly spaced on [0, horizon], both ends included.
  static TimeGrid uniform(double horizon, std::size_t n_samples);

  const std::vector<double>& times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  double horizon() const { return times_.back(); }

 private:
  std::vector<double> times_;
};

enum class Stepper { Dopri5, Rk4Fixed };

struct EvolveOptions {
  Stepper stepper = Stepper::Dopri5;
  double rtol = 1e-8;
  double atol = 1e-10;
  double fixed_step = 0.0;  // Rk4Fixed only
  /// Times at which the full state is kept. Times beyond the grid horizon
  /// are ignored.
  std::vector<double> snapshot_times;
  /// Reference amplitude and mode for the per-sample coherent overlap.
  std::optional<cplx> overlap_alpha;
  std::size_t overlap_mode = 0;

  static constexpr double kTraceFailure = 1e-4;
};

struct Snapshot {
  double t;
  DensityMatrix rho;
};

struct Trajectory {
  HilbertDims dims;
  std::vector<double> times;
  /// amplitudes[mode][sample] = Tr(a_mode rho(t)).
  std::vector<std::vector<cplx>> amplitudes;
  std::vector<double> trace;
  std::vector<double> purity;
  std::optional<std::vector<double>> coherent_overlap;
  std::vector<Snapshot> snapshots;
  double max_hermiticity_defect = 0.0;
  IntegrationStats stats;

  const std::vector<cplx>& amplitude(std::size_t mode) const { return amplitudes.at(mode); }
  double max_trace_drift() const;
  const Snapshot* snapshot_at(double t) const;
};

/// Integrates d rho / dt = L rho over `grid`. The complex state is handed to
/// the integrator as interleaved real/imaginary parts; the state and its
/// derivative are Hermitian-symmetrized after every accepted step. The trace
/// is never renormalized: if it drifts by more than 1e-4 an IntegrationError
/// is thrown.
Trajectory evolve(const DensityMatrix& rho0, const Superoperator& l, const TimeGrid& grid,
                  const EvolveOptions& opts = {});

/// Tr(a_mode rho).
cplx expectation_amplitude(const QOperator& rho, std::size_t mode);
cplx expectation_amplitude(const DensityMatrix& rho, std::size_t mode);

/// || (rho(dt) - rho(0)) / dt - L rho(0) || / || L rho(0) || in the Frobenius
/// norm, with rho(dt) from a Taylor series of exp(L dt) summed to machine
/// precision. Returns 0 when || L rho(0) || < 1e-14.
double generator_check(const Superoperator& l, const DensityMatrix& rho, double dt);

}  // namespace optomem
