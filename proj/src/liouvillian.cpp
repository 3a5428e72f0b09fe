#include "optomem/liouvillian.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "optomem/errors.hpp"

namespace optomem {

namespace {

using Triplet = Eigen::Triplet<cplx>;

void require_nonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw ParameterError(std::string(name) + " must be finite and >= 0, got " + std::to_string(v));
  }
}

// kron(A, B) for sparse operands, appending scale * entries to `out`.
void kron_into(const SparseMatrix& a, const SparseMatrix& b, cplx scale, std::vector<Triplet>& out) {
  for (Eigen::Index i = 0; i < a.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator ia(a, i); ia; ++ia) {
      for (Eigen::Index k = 0; k < b.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator ib(b, k); ib; ++ib) {
          out.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()),
                           static_cast<int>(ia.col() * b.cols() + ib.col()),
                           scale * ia.value() * ib.value());
        }
      }
    }
  }
}

SparseMatrix sparse_identity(std::size_t n) {
  SparseMatrix id(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  id.setIdentity();
  id.makeCompressed();
  return id;
}

SparseMatrix assemble(std::size_t side, const std::vector<Triplet>& triplets) {
  const auto n = static_cast<Eigen::Index>(side * side);
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(cplx{0.0, 0.0});
  m.makeCompressed();
  return m;
}

}  // namespace

void SystemParams::validate() const {
  require_nonnegative(omega_c, "omega_c");
  require_nonnegative(omega_m, "omega_m");
  require_nonnegative(k_c, "k_c");
  require_nonnegative(k_m, "k_m");
  require_nonnegative(g0, "g0");
  require_nonnegative(gamma_c, "gamma_c");
  require_nonnegative(gamma_m, "gamma_m");
  require_nonnegative(bath_temp, "bath_temp");
}

SystemParams SystemParams::reference() {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  SystemParams p;
  p.omega_c = two_pi * 0.056233;
  p.omega_m = two_pi * 0.151983e-8;
  p.g0 = 0.20472e-2;
  p.k_c = 0.01;
  p.k_m = 0.01;
  p.gamma_c = 1e-5;
  p.gamma_m = 1e-5;
  p.bath_temp = 0.0;
  return p;
}

Superoperator::Superoperator(std::size_t side, SparseMatrix matrix) : side_(side), m_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(side_ * side_);
  if (m_.rows() != n || m_.cols() != n) {
    throw DimensionError("superoperator shape does not match side " + std::to_string(side_));
  }
  m_.makeCompressed();
}

Superoperator Superoperator::zero(std::size_t side) {
  const auto n = static_cast<Eigen::Index>(side * side);
  return Superoperator(side, SparseMatrix(n, n));
}

Superoperator operator+(const Superoperator& a, const Superoperator& b) {
  if (a.side() != b.side()) throw DimensionError("superoperator sides differ");
  SparseMatrix sum = a.matrix() + b.matrix();
  sum.prune(cplx{0.0, 0.0});
  return Superoperator(a.side(), std::move(sum));
}

QOperator hamiltonian(const SystemParams& params, const HilbertDims& dims) {
  params.validate();
  if (dims.modes() != 2) throw DimensionError("hamiltonian needs two-mode dims");
  const QOperator na = embed(number(dims[0]), 0, dims);
  const QOperator nb = embed(number(dims[1]), 1, dims);
  const QOperator b = embed(annihilation(dims[1]), 1, dims);
  const QOperator x = b + adjoint(b);
  return cplx(params.omega_c) * na + cplx(params.k_c) * (na * na) + cplx(params.omega_m) * nb +
         cplx(params.k_m) * (nb * nb) - cplx(params.g0) * (na * x);
}

QOperator kerr_hamiltonian(double omega, double chi, std::size_t n) {
  const QOperator num = number(n);
  return cplx(omega) * num + cplx(chi) * (num * num);
}

double thermal_occupation(double omega, double temp_au) {
  require_nonnegative(omega, "omega");
  require_nonnegative(temp_au, "temperature");
  if (temp_au == 0.0) return 0.0;
  if (omega == 0.0) throw ParameterError("thermal occupation diverges for omega = 0 at T > 0");
  return 1.0 / std::expm1(omega / temp_au);
}

SparseMatrix to_sparse(const QOperator& op) {
  SparseMatrix s = op.matrix().sparseView(0.0, 0.0);
  s.makeCompressed();
  return s;
}

Superoperator hamiltonian_superop(const QOperator& h) {
  const std::size_t d = h.side();
  const SparseMatrix hs = to_sparse(h);
  const SparseMatrix ht = SparseMatrix(hs.transpose());
  const SparseMatrix id = sparse_identity(d);
  std::vector<Triplet> t;
  kron_into(id, hs, cplx(0.0, -1.0), t);
  kron_into(ht, id, cplx(0.0, 1.0), t);
  return Superoperator(d, assemble(d, t));
}

Superoperator dissipator(const QOperator& c_op, double gamma, double n_th) {
  require_nonnegative(gamma, "gamma");
  require_nonnegative(n_th, "n_th");
  const std::size_t d = c_op.side();
  if (gamma == 0.0) return Superoperator::zero(d);

  const SparseMatrix id = sparse_identity(d);
  std::vector<Triplet> t;
  // rate * (x rho x^dag - 1/2 x^dag x rho - 1/2 rho x^dag x)
  auto add_term = [&](const Matrix& x, double rate) {
    if (rate == 0.0) return;
    const SparseMatrix xs = Matrix(x).sparseView(0.0, 0.0);
    const SparseMatrix xconj = Matrix(x.conjugate()).sparseView(0.0, 0.0);
    const Matrix xdx = x.adjoint() * x;
    const SparseMatrix xdx_s = xdx.sparseView(0.0, 0.0);
    const SparseMatrix xdx_t = Matrix(xdx.transpose()).sparseView(0.0, 0.0);
    kron_into(xconj, xs, cplx(rate), t);
    kron_into(id, xdx_s, cplx(-0.5 * rate), t);
    kron_into(xdx_t, id, cplx(-0.5 * rate), t);
  };
  add_term(c_op.matrix(), gamma * (n_th + 1.0));
  add_term(c_op.matrix().adjoint(), gamma * n_th);
  return Superoperator(d, assemble(d, t));
}

Superoperator liouvillian(const SystemParams& params, const HilbertDims& dims) {
  params.validate();
  const double t_au = kelvin_to_au(params.bath_temp);
  return liouvillian(params, dims, thermal_occupation(params.omega_c, t_au),
                     thermal_occupation(params.omega_m, t_au));
}

Superoperator liouvillian(const SystemParams& params, const HilbertDims& dims, double n_c, double n_m) {
  params.validate();
  if (dims.modes() != 2) throw DimensionError("liouvillian needs two-mode dims");

  const QOperator a = embed(annihilation(dims[0]), 0, dims);
  const QOperator b = embed(annihilation(dims[1]), 1, dims);

  // Terms are independent; assemble them concurrently, sum in fixed order.
  std::vector<Superoperator> terms(3, Superoperator::zero(dims.total()));
#pragma omp parallel for schedule(static, 1)
  for (int k = 0; k < 3; ++k) {
    switch (k) {
      case 0: terms[0] = hamiltonian_superop(hamiltonian(params, dims)); break;
      case 1: terms[1] = dissipator(a, params.gamma_c, n_c); break;
      default: terms[2] = dissipator(b, params.gamma_m, n_m); break;
    }
  }
  return terms[0] + terms[1] + terms[2];
}

Superoperator combined_kerr_liouvillian(const SystemParams& params, std::size_t n) {
  params.validate();
  return combined_kerr_liouvillian(params, n, thermal_occupation(params.omega_m, kelvin_to_au(params.bath_temp)));
}

Superoperator combined_kerr_liouvillian(const SystemParams& params, std::size_t n, double n_th) {
  params.validate();
  const QOperator h = kerr_hamiltonian(params.omega_m, params.k_c + params.k_m, n);
  return hamiltonian_superop(h) + dissipator(annihilation(n), params.gamma_m, n_th);
}

QOperator apply(const Superoperator& l, const QOperator& rho) {
  if (rho.side() != l.side()) throw DimensionError("apply: state side does not match superoperator");
  const auto d = static_cast<Eigen::Index>(l.side());
  Matrix out(d, d);
  std::span<const cplx> in(rho.matrix().data(), static_cast<std::size_t>(d * d));
  std::span<cplx> res(out.data(), static_cast<std::size_t>(d * d));
  kernels::spmv_omp(l.matrix(), in, res);
  kernels::hermitize_omp(res, l.side());
  return QOperator(rho.dims(), std::move(out));
}

QOperator apply(const Superoperator& l, const DensityMatrix& rho) { return apply(l, rho.op()); }

Vector vec(const QOperator& rho) {
  return Eigen::Map<const Vector>(rho.matrix().data(), rho.matrix().size());
}

QOperator unvec(const Vector& v, const HilbertDims& dims) {
  const auto d = static_cast<Eigen::Index>(dims.total());
  if (v.size() != d * d) throw DimensionError("unvec: vector length is not side^2");
  return QOperator(dims, Eigen::Map<const Matrix>(v.data(), d, d));
}

}  // namespace optomem
