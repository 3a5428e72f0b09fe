#pragma once

// Wigner function of a single-mode state on a rectangular phase-space grid.
//
// Quadratures are x = (a + a^dagger)/sqrt(2), p = (a - a^dagger)/(i sqrt(2))
// with hbar = 1, so the vacuum is exp(-(x^2 + p^2)) / pi and every Wigner
// function is bounded by 1/pi in magnitude.

#include <cstddef>
#include <vector>

#include "optomem/fock.hpp"
#include "optomem/states.hpp"

namespace optomem {

struct PhaseSpaceGrid {
  double x_min = -5.0;
  double x_max = 5.0;
  double p_min = -5.0;
  double p_max = 5.0;
  std::size_t nx = 201;
  std::size_t np = 201;

  void validate() const;
  double x(std::size_t i) const;
  double p(std::size_t j) const;
  double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double dp() const { return (p_max - p_min) / static_cast<double>(np - 1); }
};

struct WignerField {
  PhaseSpaceGrid grid;
  /// Row-major over p: values[j * nx + i] = W(x_i, p_j).
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[j * grid.nx + i]; }
};

struct GridExtremum {
  double value;
  double x;
  double p;
};

/// W(x, p) = sum_mn rho_mn W_mn(x, p), with the Fock kernels W_mn generated
/// point by point from a normalized Laguerre recurrence in 2(x^2 + p^2).
/// Rows of the grid are evaluated in parallel.
WignerField wigner(const QOperator& rho, const PhaseSpaceGrid& grid);
WignerField wigner(const DensityMatrix& rho, const PhaseSpaceGrid& grid);

/// Serial reference for `wigner`; bitwise identical output.
WignerField wigner_serial(const QOperator& rho, const PhaseSpaceGrid& grid);

GridExtremum min_value(const WignerField& field);
GridExtremum max_value(const WignerField& field);

/// Riemann sum of (|W| - W) / 2 over the grid, times the cell area.
double negativity_volume(const WignerField& field);

/// Riemann sum of W over the grid, times the cell area.
double integral(const WignerField& field);

}  // namespace optomem
