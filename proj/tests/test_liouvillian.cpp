#include <doctest.h>

#include <cmath>
#include <numbers>

#include "optomem/errors.hpp"
#include "optomem/kernels.hpp"
#include "optomem/liouvillian.hpp"

using namespace optomem;

namespace {

Matrix dense(const Superoperator& l) { return Matrix(l.matrix()); }

// Column (i, j) of the generator built directly from matrix products on the
// basis operator E_ij, with no Kronecker algebra involved.
Matrix reference_generator(const Matrix& h, const std::vector<std::pair<Matrix, double>>& jumps) {
  const Eigen::Index d = h.rows();
  Matrix out(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = 1.0;
      Matrix le = cplx(0.0, -1.0) * (h * e - e * h);
      for (const auto& [c, rate] : jumps) {
        const Matrix cdc = c.adjoint() * c;
        le += rate * (c * e * c.adjoint() - 0.5 * (cdc * e + e * cdc));
      }
      out.col(j * d + i) = Eigen::Map<const Vector>(le.data(), d * d);
    }
  }
  return out;
}

SystemParams test_params() {
  SystemParams p;
  p.omega_c = 0.7;
  p.omega_m = 0.2;
  p.k_c = 0.03;
  p.k_m = 0.05;
  p.g0 = 0.11;
  p.gamma_c = 0.013;
  p.gamma_m = 0.021;
  return p;
}

}  // namespace

TEST_CASE("hamiltonian matrix elements") {
  const SystemParams p = test_params();
  const HilbertDims dims{3, 4};
  const Matrix h = hamiltonian(p, dims).matrix();
  CHECK(hermiticity_defect(h) == 0.0);
  for (std::size_t na = 0; na < 3; ++na) {
    for (std::size_t nb = 0; nb < 4; ++nb) {
      const double a = double(na), b = double(nb);
      const std::size_t idx = na * 4 + nb;
      CHECK(std::abs(h(idx, idx) - (p.omega_c * a + p.k_c * a * a + p.omega_m * b + p.k_m * b * b)) < 1e-14);
      if (nb + 1 < 4) CHECK(std::abs(h(idx + 1, idx) - (-p.g0 * a * std::sqrt(b + 1.0))) < 1e-15);
    }
  }
}

TEST_CASE("two-mode generator matches a term-by-term construction") {
  const SystemParams p = test_params();
  const HilbertDims dims{3, 4};
  const double n_c = 0.4, n_m = 1.7;
  const Matrix a = embed(annihilation(3), 0, dims).matrix();
  const Matrix b = embed(annihilation(4), 1, dims).matrix();
  const Matrix ref = reference_generator(hamiltonian(p, dims).matrix(),
                                         {{a, p.gamma_c * (n_c + 1)},
                                          {Matrix(a.adjoint()), p.gamma_c * n_c},
                                          {b, p.gamma_m * (n_m + 1)},
                                          {Matrix(b.adjoint()), p.gamma_m * n_m}});
  const Superoperator l = liouvillian(p, dims, n_c, n_m);
  CHECK(l.side() == 12);
  CHECK((dense(l) - ref).norm() < 1e-13);
}

TEST_CASE("temperature enters through the Bose occupation of each mode") {
  SystemParams p = test_params();
  p.bath_temp = 2e5;  // Kelvin, i.e. about 0.63 in atomic units
  const HilbertDims dims{3, 3};
  const double t_au = p.bath_temp / kKelvinPerAtomicUnit;
  const double n_c = 1.0 / (std::exp(p.omega_c / t_au) - 1.0);
  const double n_m = 1.0 / (std::exp(p.omega_m / t_au) - 1.0);
  CHECK((dense(liouvillian(p, dims)) - dense(liouvillian(p, dims, n_c, n_m))).norm() < 1e-12);
}

TEST_CASE("generator annihilates the trace and preserves Hermiticity") {
  const SystemParams p = test_params();
  const HilbertDims dims{3, 3};
  const Matrix l = dense(liouvillian(p, dims, 0.3, 2.0));
  const Eigen::Index d = 9;
  Vector trace_row = Vector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) trace_row[i * d + i] = 1.0;
  CHECK((trace_row.transpose() * l).norm() < 1e-13);

  Matrix x = Matrix::Random(d, d);
  x = x + x.adjoint().eval();
  const Vector lx = l * Eigen::Map<const Vector>(x.data(), d * d);
  const Eigen::Map<const Matrix> out(lx.data(), d, d);
  CHECK(hermiticity_defect(out) < 1e-13);
}

TEST_CASE("thermal state is stationary under a thermal dissipator") {
  const std::size_t n = 15;
  const double omega = 0.4, temp = 0.9;
  const double n_th = thermal_occupation(omega, temp);
  const Superoperator l = hamiltonian_superop(kerr_hamiltonian(omega, 0.02, n)) +
                          dissipator(annihilation(n), 0.05, n_th);
  Matrix rho = Matrix::Zero(n, n);
  double z = 0.0;
  for (std::size_t k = 0; k < n; ++k) z += std::exp(-omega * double(k) / temp);
  for (std::size_t k = 0; k < n; ++k) rho(k, k) = std::exp(-omega * double(k) / temp) / z;
  const QOperator out = apply(l, QOperator(HilbertDims{n}, rho));
  CHECK(out.matrix().norm() < 1e-15);
}

TEST_CASE("thermal occupation") {
  CHECK(std::abs(thermal_occupation(1.0, 1.0) - 1.0 / (std::numbers::e - 1.0)) < 1e-12);
  CHECK(thermal_occupation(0.5, 0.0) == 0.0);
  CHECK(thermal_occupation(0.0, 0.0) == 0.0);
  CHECK_THROWS_AS(thermal_occupation(0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(thermal_occupation(-1.0, 1.0), ParameterError);
  // Large omega / T underflows to zero rather than producing inf or nan.
  CHECK(thermal_occupation(1.0, 1e-4) == 0.0);
}

TEST_CASE("single-mode Kerr generator") {
  SystemParams p = test_params();
  p.bath_temp = 0.0;
  const std::size_t n = 6;
  const Matrix ref = reference_generator(kerr_hamiltonian(p.omega_m, p.k_c + p.k_m, n).matrix(),
                                         {{annihilation(n).matrix(), p.gamma_m}});
  CHECK((dense(combined_kerr_liouvillian(p, n)) - ref).norm() < 1e-13);
  const Matrix ref_hot = reference_generator(kerr_hamiltonian(p.omega_m, p.k_c + p.k_m, n).matrix(),
                                             {{annihilation(n).matrix(), p.gamma_m * 3.5},
                                              {creation(n).matrix(), p.gamma_m * 2.5}});
  CHECK((dense(combined_kerr_liouvillian(p, n, 2.5)) - ref_hot).norm() < 1e-13);
}

TEST_CASE("zero damping leaves only the coherent part") {
  SystemParams p = test_params();
  p.gamma_c = p.gamma_m = 0.0;
  const HilbertDims dims{2, 3};
  CHECK((dense(liouvillian(p, dims)) - dense(hamiltonian_superop(hamiltonian(p, dims)))).norm() == 0.0);
  CHECK(dissipator(annihilation(4), 0.0, 3.0).nonzeros() == 0);
}

TEST_CASE("apply, vec and unvec agree with dense algebra") {
  const SystemParams p = test_params();
  const HilbertDims dims{2, 3};
  const Superoperator l = liouvillian(p, dims, 0.2, 0.5);
  Matrix x = Matrix::Random(6, 6);
  x = (x + x.adjoint().eval()) / 2.0;
  const QOperator rho(dims, x);
  const Vector v = vec(rho);
  CHECK(v[1] == x(1, 0));  // column stacking
  CHECK((unvec(v, dims).matrix() - x).norm() == 0.0);
  const Vector expect = dense(l) * v;
  CHECK((vec(apply(l, rho)) - expect).norm() < 1e-13);
  CHECK_THROWS_AS(unvec(Vector::Zero(5), dims), DimensionError);
}

TEST_CASE("assembly is independent of the thread count") {
  const SystemParams p = SystemParams::reference();
  const HilbertDims dims{5, 6};
  kernels::set_threads(1);
  const Matrix one = dense(liouvillian(p, dims));
  kernels::set_threads(3);
  const Matrix three = dense(liouvillian(p, dims));
  CHECK(one == three);
}

TEST_CASE("parameter validation") {
  SystemParams p = test_params();
  p.gamma_m = -1e-3;
  CHECK_THROWS_AS(liouvillian(p, HilbertDims{2, 2}), ParameterError);
  p = test_params();
  p.k_c = std::nan("");
  CHECK_THROWS_AS(p.validate(), ParameterError);
  CHECK_THROWS_AS(liouvillian(test_params(), HilbertDims{4}), DimensionError);
  CHECK_THROWS_AS(dissipator(annihilation(3), 0.1, -0.5), ParameterError);
}

TEST_CASE("reference parameters") {
  const SystemParams p = SystemParams::reference();
  CHECK(p.omega_c == doctest::Approx(2 * std::numbers::pi * 0.056233).epsilon(1e-15));
  CHECK(p.omega_m == doctest::Approx(2 * std::numbers::pi * 0.151983e-8).epsilon(1e-15));
  CHECK(p.g0 == 0.20472e-2);
  CHECK(p.k_c == 0.01);
  CHECK(p.k_m == 0.01);
  CHECK(p.gamma_c == 1e-5);
  CHECK(p.gamma_m == 1e-5);
  CHECK(p.bath_temp == 0.0);
}
