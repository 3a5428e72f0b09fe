#include "optomem/wigner.hpp"

#include <cmath>
#include <numbers>

#include "optomem/errors.hpp"

namespace optomem {

namespace {

// Evaluates W at one phase-space point. `w` is scratch of length n.
//
// w[k] walks the upper triangle row by row: on entry to row m it holds the
// kernels of row m-1, and the three-term recurrence
//   W_{m,n} = (2 A W_{m,n-1} - sqrt(m) W_{m-1,n-1}) / sqrt(n)
// advances it in place. Each kernel already carries the factor
// exp(-2|A|^2) sqrt(m!/n!) / pi, so no factorials or powers are formed.
double wigner_point(const Matrix& rho, double x, double p, std::vector<cplx>& w) {
  const auto n = rho.rows();
  const cplx a = cplx(x, p) / std::numbers::sqrt2;
  const cplx two_a = 2.0 * a;
  const cplx two_a_conj = 2.0 * std::conj(a);

  w[0] = std::exp(-2.0 * std::norm(a)) / std::numbers::pi;
  double acc = rho(0, 0).real() * w[0].real();
  for (Eigen::Index k = 1; k < n; ++k) {
    w[k] = two_a * w[k - 1] / std::sqrt(static_cast<double>(k));
    acc += 2.0 * (rho(0, k) * w[k]).real();
  }
  for (Eigen::Index m = 1; m < n; ++m) {
    const double sm = std::sqrt(static_cast<double>(m));
    cplx prev = w[m];
    w[m] = (two_a_conj * prev - sm * w[m - 1]) / sm;
    acc += (rho(m, m) * w[m]).real();
    for (Eigen::Index k = m + 1; k < n; ++k) {
      const cplx next = (two_a * w[k - 1] - sm * prev) / std::sqrt(static_cast<double>(k));
      prev = w[k];
      w[k] = next;
      acc += 2.0 * (rho(m, k) * w[k]).real();
    }
  }
  return acc;
}

void require_single_mode(const QOperator& rho) {
  if (rho.dims().modes() != 1) {
    throw DimensionError("wigner expects a single-mode state; take a partial trace first");
  }
}

WignerField make_field(const PhaseSpaceGrid& grid) {
  grid.validate();
  return WignerField{grid, std::vector<double>(grid.nx * grid.np)};
}

}  // namespace

void PhaseSpaceGrid::validate() const {
  if (!(x_max > x_min) || !(p_max > p_min)) throw DimensionError("phase-space grid bounds are empty");
  if (nx < 2 || np < 2) throw DimensionError("phase-space grid needs at least 2 samples per axis");
}

double PhaseSpaceGrid::x(std::size_t i) const {
  return x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(nx - 1);
}

double PhaseSpaceGrid::p(std::size_t j) const {
  return p_min + (p_max - p_min) * static_cast<double>(j) / static_cast<double>(np - 1);
}

WignerField wigner_serial(const QOperator& rho, const PhaseSpaceGrid& grid) {
  require_single_mode(rho);
  WignerField field = make_field(grid);
  std::vector<cplx> scratch(rho.side());
  for (std::size_t j = 0; j < grid.np; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      field.values[j * grid.nx + i] = wigner_point(rho.matrix(), grid.x(i), grid.p(j), scratch);
    }
  }
  return field;
}

WignerField wigner(const QOperator& rho, const PhaseSpaceGrid& grid) {
  require_single_mode(rho);
  WignerField field = make_field(grid);
  const Matrix& m = rho.matrix();
  const auto rows = static_cast<std::ptrdiff_t>(grid.np);
#pragma omp parallel
  {
    std::vector<cplx> scratch(rho.side());
#pragma omp for schedule(static)
    for (std::ptrdiff_t j = 0; j < rows; ++j) {
      const auto row = static_cast<std::size_t>(j);
      for (std::size_t i = 0; i < grid.nx; ++i) {
        field.values[row * grid.nx + i] = wigner_point(m, grid.x(i), grid.p(row), scratch);
      }
    }
  }
  return field;
}

WignerField wigner(const DensityMatrix& rho, const PhaseSpaceGrid& grid) { return wigner(rho.op(), grid); }

GridExtremum min_value(const WignerField& field) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < field.values.size(); ++k) {
    if (field.values[k] < field.values[best]) best = k;
  }
  const std::size_t i = best % field.grid.nx;
  const std::size_t j = best / field.grid.nx;
  return {field.values[best], field.grid.x(i), field.grid.p(j)};
}

GridExtremum max_value(const WignerField& field) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < field.values.size(); ++k) {
    if (field.values[k] > field.values[best]) best = k;
  }
  const std::size_t i = best % field.grid.nx;
  const std::size_t j = best / field.grid.nx;
  return {field.values[best], field.grid.x(i), field.grid.p(j)};
}

double negativity_volume(const WignerField& field) {
  double acc = 0.0;
  for (double v : field.values) acc += 0.5 * (std::abs(v) - v);
  return acc * field.grid.dx() * field.grid.dp();
}

double integral(const WignerField& field) {
  double acc = 0.0;
  for (double v : field.values) acc += v;
  return acc * field.grid.dx() * field.grid.dp();
}

}  // namespace optomem
