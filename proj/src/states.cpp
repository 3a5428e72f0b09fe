#include "optomem/states.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "optomem/errors.hpp"

namespace optomem {

Ket::Ket(HilbertDims dims, Vector amplitudes) : dims_(std::move(dims)), v_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(v_.size()) != dims_.total()) {
    throw DimensionError("ket length " + std::to_string(v_.size()) + " does not match dims total " +
                         std::to_string(dims_.total()));
  }
}

DensityMatrix::DensityMatrix(QOperator op) : op_(std::move(op)) {
  const double herm = hermiticity_defect(op_.matrix());
  if (herm > kHermiticityTol) {
    throw DimensionError("density matrix is not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const double tr = trace(op_).real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw DimensionError("density matrix trace " + std::to_string(tr) + " is not 1");
  }
}

Ket coherent_ket(cplx alpha, std::size_t n) {
  if (n == 0) throw DimensionError("truncation size must be >= 1");
  Vector c(static_cast<Eigen::Index>(n));
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index m = 0; m + 1 < c.size(); ++m) {
    c(m + 1) = c(m) * alpha / std::sqrt(static_cast<double>(m + 1));
  }
  return Ket(HilbertDims{n}, std::move(c));
}

Ket fock_ket(std::size_t k, std::size_t n) {
  if (k >= n) throw DimensionError("Fock level " + std::to_string(k) + " outside truncation");
  Vector c = Vector::Zero(static_cast<Eigen::Index>(n));
  c(static_cast<Eigen::Index>(k)) = 1.0;
  return Ket(HilbertDims{n}, std::move(c));
}

Ket vacuum_ket(std::size_t n) { return fock_ket(0, n); }

Ket tensor(std::span<const Ket> kets) {
  if (kets.empty()) throw DimensionError("tensor of zero kets");
  std::vector<std::size_t> dims;
  Vector acc = Vector::Ones(1);
  for (const Ket& k : kets) {
    if (k.dims().modes() != 1) throw DimensionError("tensor expects single-mode kets");
    dims.push_back(k.dims().total());
    const Vector& v = k.amplitudes();
    Vector next(acc.size() * v.size());
    for (Eigen::Index i = 0; i < acc.size(); ++i) next.segment(i * v.size(), v.size()) = acc(i) * v;
    acc = std::move(next);
  }
  return Ket(HilbertDims(std::move(dims)), std::move(acc));
}

QOperator displacement_operator(cplx alpha, std::size_t n) {
  const QOperator a = annihilation(n);
  const Matrix gen = alpha * a.matrix().adjoint() - std::conj(alpha) * a.matrix();
  const Matrix herm = cplx(0.0, 1.0) * gen;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm);
  // exp(gen) = exp(-i herm)
  const Vector phases = (cplx(0.0, -1.0) * eig.eigenvalues().cast<cplx>()).array().exp();
  Matrix d = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
  return QOperator(HilbertDims{n}, std::move(d));
}

DensityMatrix product_dm(std::span<const Ket> kets) {
  const Ket psi = tensor(kets);
  const Vector& v = psi.amplitudes();
  const double n2 = v.squaredNorm();
  if (n2 == 0.0) throw DimensionError("product_dm of a zero ket");
  Matrix rho = (v * v.adjoint()) / n2;
  return DensityMatrix(QOperator(psi.dims(), std::move(rho)));
}

DensityMatrix product_dm(std::initializer_list<Ket> kets) {
  return product_dm(std::span<const Ket>(kets.begin(), kets.size()));
}

QOperator partial_trace(const QOperator& rho, std::size_t keep_mode) {
  const HilbertDims& dims = rho.dims();
  const std::size_t d = dims[keep_mode];
  std::size_t outer = 1;
  std::size_t inner = 1;
  for (std::size_t k = 0; k < keep_mode; ++k) outer *= dims[k];
  for (std::size_t k = keep_mode + 1; k < dims.modes(); ++k) inner *= dims[k];

  // flat index = (o * d + i) * inner + j
  const auto di = static_cast<Eigen::Index>(d);
  const auto in = static_cast<Eigen::Index>(inner);
  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(di, di);
  for (Eigen::Index r = 0; r < di; ++r) {
    for (Eigen::Index c = 0; c < di; ++c) {
      cplx acc{};
      for (Eigen::Index o = 0; o < static_cast<Eigen::Index>(outer); ++o) {
        for (Eigen::Index j = 0; j < in; ++j) {
          acc += m((o * di + r) * in + j, (o * di + c) * in + j);
        }
      }
      out(r, c) = acc;
    }
  }
  return QOperator(HilbertDims{d}, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep_mode) {
  return DensityMatrix(partial_trace(rho.op(), keep_mode));
}

double purity(const QOperator& rho) {
  // Tr(rho^2) = sum_ij rho_ij rho_ji; for Hermitian rho this is sum |rho_ij|^2.
  return rho.matrix().cwiseProduct(rho.matrix().transpose()).sum().real();
}

double coherent_overlap(const QOperator& rho, cplx alpha, std::size_t mode) {
  const QOperator reduced = rho.dims().modes() == 1 ? rho : partial_trace(rho, mode);
  const Vector ref = coherent_ket(alpha, reduced.side()).amplitudes();
  return ref.dot(reduced.matrix() * ref).real();
}

cplx expectation(const QOperator& op, const DensityMatrix& rho) { return expectation(op, rho.op()); }

}  // namespace optomem
