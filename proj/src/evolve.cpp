#include "optomem/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optomem/errors.hpp"
#include "optomem/kernels.hpp"

namespace optomem {

namespace {

struct OutputPoint {
  double t;
  std::optional<std::size_t> sample;  // index into the grid
  bool snapshot = false;
};

std::vector<OutputPoint> merge_outputs(const TimeGrid& grid, const std::vector<double>& snaps) {
  std::vector<OutputPoint> out;
  out.reserve(grid.size() + snaps.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out.push_back({grid.times()[i], i, false});
  for (double s : snaps) {
    if (s < 0.0 || s > grid.horizon()) continue;
    out.push_back({s, std::nullopt, true});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  // Collapse duplicates so the integrator sees strictly increasing times.
  std::vector<OutputPoint> merged;
  for (const auto& p : out) {
    if (!merged.empty() && merged.back().t == p.t) {
      if (p.sample) merged.back().sample = p.sample;
      merged.back().snapshot = merged.back().snapshot || p.snapshot;
    } else {
      merged.push_back(p);
    }
  }
  return merged;
}

// Nonzeros of an embedded annihilation operator, for Tr(a rho) = sum a_ij rho_ji.
struct SparseTerm {
  Eigen::Index row;
  Eigen::Index col;
  double value;
};

std::vector<SparseTerm> lowering_terms(const HilbertDims& dims, std::size_t mode) {
  const QOperator a = embed(annihilation(dims[mode]), mode, dims);
  std::vector<SparseTerm> terms;
  const Matrix& m = a.matrix();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) != cplx{}) terms.push_back({r, c, m(r, c).real()});
    }
  }
  return terms;
}

double frobenius(const Matrix& m) { return m.norm(); }

}  // namespace

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) throw Error("time grid is empty");
  if (times_.front() != 0.0) throw Error("time grid must start at 0");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) throw Error("time grid must be strictly increasing");
  }
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t n_samples) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw Error("horizon must be positive");
  if (n_samples < 2) throw Error("uniform grid needs at least 2 samples");
  std::vector<double> t(n_samples);
  const double step = horizon / static_cast<double>(n_samples - 1);
  for (std::size_t i = 0; i < n_samples; ++i) t[i] = step * static_cast<double>(i);
  t.back() = horizon;
  return TimeGrid(std::move(t));
}

double Trajectory::max_trace_drift() const {
  double d = 0.0;
  for (double tr : trace) d = std::max(d, std::abs(tr - 1.0));
  return d;
}

const Snapshot* Trajectory::snapshot_at(double t) const {
  for (const auto& s : snapshots) {
    if (s.t == t) return &s;
  }
  return nullptr;
}

cplx expectation_amplitude(const QOperator& rho, std::size_t mode) {
  return expectation(embed(annihilation(rho.dims()[mode]), mode, rho.dims()), rho);
}

cplx expectation_amplitude(const DensityMatrix& rho, std::size_t mode) {
  return expectation_amplitude(rho.op(), mode);
}

Trajectory evolve(const DensityMatrix& rho0, const Superoperator& l, const TimeGrid& grid,
                  const EvolveOptions& opts) {
  if (rho0.op().side() != l.side()) throw DimensionError("initial state does not match generator side");
  const HilbertDims dims = rho0.dims();
  const std::size_t side = dims.total();
  const std::size_t n = side * side;

  Trajectory traj{dims, grid.times(), {}, {}, {}, std::nullopt, {}, 0.0, {}};
  traj.amplitudes.assign(dims.modes(), std::vector<cplx>(grid.size()));
  traj.trace.resize(grid.size());
  traj.purity.resize(grid.size());
  if (opts.overlap_alpha) traj.coherent_overlap.emplace(grid.size());

  std::vector<std::vector<SparseTerm>> lowering;
  for (std::size_t m = 0; m < dims.modes(); ++m) lowering.push_back(lowering_terms(dims, m));

  std::vector<cplx> state(rho0.matrix().data(), rho0.matrix().data() + n);
  auto as_complex = [](std::span<const double> v) {
    return std::span<const cplx>(reinterpret_cast<const cplx*>(v.data()), v.size() / 2);
  };
  auto as_complex_mut = [](std::span<double> v) {
    return std::span<cplx>(reinterpret_cast<cplx*>(v.data()), v.size() / 2);
  };

  const SparseMatrix& lm = l.matrix();
  OdeRhs rhs = [&](double, std::span<const double> y, std::span<double> dydt) {
    auto out = as_complex_mut(dydt);
    kernels::spmv_omp(lm, as_complex(y), out);
    kernels::hermitize_omp(out, side);
  };
  OdeStepHook hook = [&](std::span<double> y, std::span<double> dydt) {
    kernels::hermitize_omp(as_complex_mut(y), side);
    kernels::hermitize_omp(as_complex_mut(dydt), side);
  };

  const std::vector<OutputPoint> outputs = merge_outputs(grid, opts.snapshot_times);
  std::vector<double> out_times(outputs.size());
  std::transform(outputs.begin(), outputs.end(), out_times.begin(), [](const auto& p) { return p.t; });

  OdeObserver observe = [&](std::size_t idx, double t, std::span<const double> y) {
    const OutputPoint& p = outputs[idx];
    const auto rho = Eigen::Map<const Matrix>(as_complex(y).data(), static_cast<Eigen::Index>(side),
                                              static_cast<Eigen::Index>(side));
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > EvolveOptions::kTraceFailure) {
      throw IntegrationError("trace drifted to " + std::to_string(tr) + " at t = " + std::to_string(t) +
                             "; tighten tolerances");
    }
    traj.max_hermiticity_defect = std::max(traj.max_hermiticity_defect, hermiticity_defect(rho));
    if (p.sample) {
      const std::size_t s = *p.sample;
      traj.trace[s] = tr;
      traj.purity[s] = rho.cwiseAbs2().sum();
      for (std::size_t m = 0; m < dims.modes(); ++m) {
        cplx acc{};
        for (const auto& term : lowering[m]) acc += term.value * rho(term.col, term.row);
        traj.amplitudes[m][s] = acc;
      }
      if (opts.overlap_alpha) {
        (*traj.coherent_overlap)[s] =
            coherent_overlap(QOperator(dims, Matrix(rho)), *opts.overlap_alpha, opts.overlap_mode);
      }
    }
    if (p.snapshot) traj.snapshots.push_back({t, DensityMatrix(QOperator(dims, Matrix(rho)))});
  };

  std::span<double> y(reinterpret_cast<double*>(state.data()), 2 * n);
  if (opts.stepper == Stepper::Dopri5) {
    Dopri5Options dopts;
    dopts.rtol = opts.rtol;
    dopts.atol = opts.atol;
    traj.stats = integrate_dopri5(rhs, 0.0, y, out_times, observe, dopts, hook);
  } else {
    traj.stats = integrate_rk4(rhs, 0.0, y, out_times, opts.fixed_step, observe, hook);
  }
  return traj;
}

double generator_check(const Superoperator& l, const DensityMatrix& rho, double dt) {
  if (!(dt > 0.0)) throw Error("generator_check needs dt > 0");
  const QOperator lr = apply(l, rho);
  const double scale = frobenius(lr.matrix());
  if (scale < 1e-14) return 0.0;

  // rho(dt) = sum_k (dt L)^k rho / k!
  // Only the k >= 1 terms are accumulated, so rho(dt) - rho(0) carries no
  // cancellation error.
  Matrix increment = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  QOperator term = rho.op();
  for (int k = 1; k < 400; ++k) {
    term = cplx(dt / k) * apply(l, term);
    increment += term.matrix();
    if (frobenius(term.matrix()) < 1e-18 * frobenius(increment)) break;
  }
  const Matrix fd = increment / dt;
  return frobenius(fd - lr.matrix()) / scale;
}

}  // namespace optomem
