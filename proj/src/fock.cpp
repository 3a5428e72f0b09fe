#include "optomem/fock.hpp"

#include <cmath>
#include <string>

#include "optomem/errors.hpp"

namespace optomem {

namespace {

void require_same_dims(const QOperator& a, const QOperator& b, const char* what) {
  if (!(a.dims() == b.dims())) {
    throw DimensionError(std::string(what) + ": operand dimensions differ");
  }
}

void require_nonzero(std::size_t n) {
  if (n == 0) throw DimensionError("truncation size must be >= 1");
}

}  // namespace

HilbertDims::HilbertDims(std::initializer_list<std::size_t> dims)
    : HilbertDims(std::vector<std::size_t>(dims)) {}

HilbertDims::HilbertDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("HilbertDims needs at least one mode");
  for (std::size_t d : dims_) {
    require_nonzero(d);
    total_ *= d;
  }
}

std::size_t HilbertDims::operator[](std::size_t mode) const {
  if (mode >= dims_.size()) {
    throw DimensionError("mode index " + std::to_string(mode) + " out of range");
  }
  return dims_[mode];
}

QOperator::QOperator(HilbertDims dims, Matrix elements)
    : dims_(std::move(dims)), m_(std::move(elements)) {
  const auto n = static_cast<Eigen::Index>(dims_.total());
  if (m_.rows() != n || m_.cols() != n) {
    throw DimensionError("operator matrix is " + std::to_string(m_.rows()) + "x" +
                         std::to_string(m_.cols()) + ", expected side " + std::to_string(n));
  }
}

QOperator QOperator::identity(const HilbertDims& dims) {
  const auto n = static_cast<Eigen::Index>(dims.total());
  return QOperator(dims, Matrix::Identity(n, n));
}

QOperator QOperator::zero(const HilbertDims& dims) {
  const auto n = static_cast<Eigen::Index>(dims.total());
  return QOperator(dims, Matrix::Zero(n, n));
}

QOperator annihilation(std::size_t n) {
  require_nonzero(n);
  const auto side = static_cast<Eigen::Index>(n);
  Matrix m = Matrix::Zero(side, side);
  for (Eigen::Index k = 0; k + 1 < side; ++k) {
    m(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
  }
  return QOperator(HilbertDims{n}, std::move(m));
}

QOperator creation(std::size_t n) { return adjoint(annihilation(n)); }

QOperator number(std::size_t n) {
  require_nonzero(n);
  const auto side = static_cast<Eigen::Index>(n);
  Matrix m = Matrix::Zero(side, side);
  for (Eigen::Index k = 0; k < side; ++k) m(k, k) = static_cast<double>(k);
  return QOperator(HilbertDims{n}, std::move(m));
}

QOperator embed(const QOperator& op, std::size_t mode, const HilbertDims& dims) {
  if (op.dims().modes() != 1) throw DimensionError("embed expects a single-mode operator");
  if (op.side() != dims[mode]) {
    throw DimensionError("embed: operator side " + std::to_string(op.side()) +
                         " does not match mode size " + std::to_string(dims[mode]));
  }
  // Block structure: slower modes (before `mode`) and faster modes (after).
  std::size_t outer = 1;
  std::size_t inner = 1;
  for (std::size_t k = 0; k < mode; ++k) outer *= dims[k];
  for (std::size_t k = mode + 1; k < dims.modes(); ++k) inner *= dims[k];

  const auto n = static_cast<Eigen::Index>(dims.total());
  const auto d = static_cast<Eigen::Index>(op.side());
  const auto in = static_cast<Eigen::Index>(inner);
  Matrix m = Matrix::Zero(n, n);
  const Matrix& a = op.matrix();
  for (Eigen::Index o = 0; o < static_cast<Eigen::Index>(outer); ++o) {
    const Eigen::Index base = o * d * in;
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        const cplx v = a(r, c);
        if (v == cplx{}) continue;
        for (Eigen::Index i = 0; i < in; ++i) {
          m(base + r * in + i, base + c * in + i) = v;
        }
      }
    }
  }
  return QOperator(dims, std::move(m));
}

QOperator operator*(const QOperator& a, const QOperator& b) {
  require_same_dims(a, b, "matmul");
  return QOperator(a.dims(), a.matrix() * b.matrix());
}

QOperator operator+(const QOperator& a, const QOperator& b) {
  require_same_dims(a, b, "add");
  return QOperator(a.dims(), a.matrix() + b.matrix());
}

QOperator operator-(const QOperator& a, const QOperator& b) {
  require_same_dims(a, b, "subtract");
  return QOperator(a.dims(), a.matrix() - b.matrix());
}

QOperator operator*(cplx s, const QOperator& a) { return QOperator(a.dims(), s * a.matrix()); }

QOperator adjoint(const QOperator& a) { return QOperator(a.dims(), a.matrix().adjoint()); }

QOperator commutator(const QOperator& a, const QOperator& b) { return a * b - b * a; }

cplx trace(const QOperator& a) { return a.matrix().trace(); }

cplx expectation(const QOperator& op, const QOperator& rho) {
  require_same_dims(op, rho, "expectation");
  // Tr(A rho) = sum_ij A_ij rho_ji, without forming the product.
  return op.matrix().cwiseProduct(rho.matrix().transpose()).sum();
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace optomem
