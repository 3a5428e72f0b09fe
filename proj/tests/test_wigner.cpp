#include <doctest.h>

#include <cmath>
#include <numbers>

#include "optomem/errors.hpp"
#include "optomem/kernels.hpp"
#include "optomem/states.hpp"
#include "optomem/wigner.hpp"
#include "oracles.hpp"

using namespace optomem;

namespace {

constexpr double kInvPi = 1.0 / std::numbers::pi;

QOperator pure(const Vector& v) {
  const Vector u = v / v.norm();
  return QOperator(HilbertDims{static_cast<std::size_t>(v.size())}, u * u.adjoint());
}

QOperator fock_dm(std::size_t k, std::size_t n) { return pure(fock_ket(k, n).amplitudes()); }

PhaseSpaceGrid grid(double half, std::size_t pts) {
  PhaseSpaceGrid g;
  g.x_min = g.p_min = -half;
  g.x_max = g.p_max = half;
  g.nx = g.np = pts;
  return g;
}

}  // namespace

TEST_CASE("vacuum is the unit Gaussian with peak 1/pi") {
  const WignerField w = wigner(fock_dm(0, 8), PhaseSpaceGrid{});
  const GridExtremum mx = max_value(w);
  CHECK(std::abs(mx.value - kInvPi) < 1e-8);
  CHECK(mx.x == 0.0);
  CHECK(mx.p == 0.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < w.grid.np; ++j) {
    for (std::size_t i = 0; i < w.grid.nx; ++i) {
      const double x = w.grid.x(i), p = w.grid.p(j);
      worst = std::max(worst, std::abs(w.at(i, j) - kInvPi * std::exp(-x * x - p * p)));
    }
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("single photon trough and negativity volume") {
  const WignerField w = wigner(fock_dm(1, 5), PhaseSpaceGrid{});
  const GridExtremum mn = min_value(w);
  CHECK(std::abs(mn.value + kInvPi) < 1e-8);
  CHECK(mn.x == 0.0);
  CHECK(mn.p == 0.0);
  // Exact value: integral of the negative lobe, 2 / sqrt(e) - 1.
  const WignerField fine = wigner(fock_dm(1, 5), grid(1.0, 801));
  CHECK(std::abs(negativity_volume(fine) - (2.0 / std::sqrt(std::numbers::e) - 1.0)) < 1e-4);
}

TEST_CASE("coherent state is a displaced Gaussian") {
  const cplx alpha(1.1, -0.6);
  const WignerField w = wigner(pure(coherent_ket(alpha, 40).amplitudes()), PhaseSpaceGrid{});
  const double x0 = std::sqrt(2.0) * alpha.real(), p0 = std::sqrt(2.0) * alpha.imag();
  double worst = 0.0;
  for (std::size_t j = 0; j < w.grid.np; j += 5) {
    for (std::size_t i = 0; i < w.grid.nx; i += 5) {
      const double dx = w.grid.x(i) - x0, dp = w.grid.p(j) - p0;
      worst = std::max(worst, std::abs(w.at(i, j) - kInvPi * std::exp(-dx * dx - dp * dp)));
    }
  }
  CHECK(worst < 1e-10);
  const GridExtremum mx = max_value(w);
  CHECK(std::abs(mx.x - x0) <= w.grid.dx());
  CHECK(std::abs(mx.p - p0) <= w.grid.dp());
  CHECK(std::abs(integral(w) - 1.0) < 1e-6);  // Gaussian tail past the grid edge
}

TEST_CASE("position marginal equals the squared wavefunction") {
  const std::size_t n = 6;
  Vector c(n);
  c << 0.5, cplx(0.0, 0.3), -0.4, 0.2, cplx(0.1, -0.2), 0.15;
  c /= c.norm();
  const WignerField w = wigner(pure(c), grid(7.0, 281));
  for (std::size_t i = 40; i < 240; i += 20) {
    const double x = w.grid.x(i);
    double marginal = 0.0;
    for (std::size_t j = 0; j < w.grid.np; ++j) marginal += w.at(i, j);
    marginal *= w.grid.dp();
    cplx psi{};
    for (std::size_t k = 0; k < n; ++k) psi += c[k] * oracle::hermite_function(k, x);
    CHECK(std::abs(marginal - std::norm(psi)) < 1e-8);
  }
}

TEST_CASE("linearity and conjugation symmetry") {
  const std::size_t n = 7;
  const QOperator r1 = pure(coherent_ket(cplx(0.4, 0.9), n).amplitudes());
  const QOperator r2 = fock_dm(3, n);
  const PhaseSpaceGrid g = grid(3.0, 61);
  const WignerField w1 = wigner(r1, g), w2 = wigner(r2, g);
  const WignerField mix = wigner(cplx(0.3) * r1 + cplx(0.7) * r2, g);
  for (std::size_t k = 0; k < mix.values.size(); ++k) {
    CHECK(std::abs(mix.values[k] - (0.3 * w1.values[k] + 0.7 * w2.values[k])) < 1e-14);
  }
  // Complex conjugation of rho mirrors p.
  const WignerField wc = wigner(QOperator(r1.dims(), r1.matrix().conjugate()), g);
  for (std::size_t j = 0; j < g.np; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) CHECK(std::abs(wc.at(i, j) - w1.at(i, g.np - 1 - j)) < 1e-14);
  }
}

TEST_CASE("high Fock states stay finite") {
  const std::size_t n = 60;
  const WignerField w = wigner(fock_dm(59, n), grid(12.0, 121));
  for (double v : w.values) CHECK(std::isfinite(v));
  CHECK(std::abs(w.at(60, 60) + kInvPi) < 1e-10);  // (-1)^59 / pi at the origin
  CHECK(std::abs(integral(w) - 1.0) < 1e-5);
}

TEST_CASE("parallel grid evaluation is bitwise identical to the serial reference") {
  const QOperator rho = pure(coherent_ket(cplx(1.5, 0.2), 30).amplitudes()) + cplx(0.0) * fock_dm(2, 30);
  const PhaseSpaceGrid g = grid(4.0, 97);
  const WignerField s = wigner_serial(rho, g);
  for (int threads : {1, 2, 5}) {
    kernels::set_threads(threads);
    CHECK(wigner(rho, g).values == s.values);
  }
}

TEST_CASE("input validation") {
  const DensityMatrix two = product_dm({vacuum_ket(2), vacuum_ket(3)});
  CHECK_THROWS_AS(wigner(two, PhaseSpaceGrid{}), DimensionError);
  PhaseSpaceGrid bad;
  bad.nx = 1;
  CHECK_THROWS_AS(wigner(fock_dm(0, 3), bad), DimensionError);
  bad = PhaseSpaceGrid{};
  bad.x_max = bad.x_min;
  CHECK_THROWS_AS(bad.validate(), DimensionError);
}
