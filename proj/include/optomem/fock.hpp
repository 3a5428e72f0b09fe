#pragma once

// Truncated Fock-space operator algebra.
//
// Multi-mode spaces use the Kronecker convention in which mode 0 is the
// slowest-varying index: for dims = {d0, d1} the basis state |i0, i1> sits at
// flat index i0 * d1 + i1. Mode 0 is the optical mode, mode 1 the mechanical
// mode. All operators are dense complex matrices; the superoperator layer
// converts to compressed storage where it matters.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace optomem {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class HilbertDims {
 public:
  HilbertDims(std::initializer_list<std::size_t> dims);
  explicit HilbertDims(std::vector<std::size_t> dims);

  std::size_t modes() const { return dims_.size(); }
  std::size_t total() const { return total_; }
  std::size_t operator[](std::size_t mode) const;
  std::span<const std::size_t> dims() const { return dims_; }

  friend bool operator==(const HilbertDims&, const HilbertDims&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

class QOperator {
 public:
  QOperator(HilbertDims dims, Matrix elements);

  const HilbertDims& dims() const { return dims_; }
  const Matrix& matrix() const { return m_; }
  std::size_t side() const { return dims_.total(); }
  cplx operator()(std::size_t row, std::size_t col) const { return m_(row, col); }

  static QOperator identity(const HilbertDims& dims);
  static QOperator zero(const HilbertDims& dims);

 private:
  HilbertDims dims_;
  Matrix m_;
};

/// Lowering operator on n levels: A[m, m+1] = sqrt(m+1).
QOperator annihilation(std::size_t n);
QOperator creation(std::size_t n);
/// diag(0, 1, ..., n-1).
QOperator number(std::size_t n);

/// Lifts a single-mode operator into the tensor-product space `dims`, with
/// identities on every other mode.
QOperator embed(const QOperator& op, std::size_t mode, const HilbertDims& dims);

QOperator operator*(const QOperator& a, const QOperator& b);
QOperator operator+(const QOperator& a, const QOperator& b);
QOperator operator-(const QOperator& a, const QOperator& b);
QOperator operator*(cplx s, const QOperator& a);

QOperator adjoint(const QOperator& a);
QOperator commutator(const QOperator& a, const QOperator& b);
cplx trace(const QOperator& a);
/// Tr(A rho).
cplx expectation(const QOperator& op, const QOperator& rho);

/// max |A - A^dagger| over all entries.
double hermiticity_defect(const Matrix& m);

}  // namespace optomem
