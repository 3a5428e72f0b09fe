#pragma once

#include <span>
#include <vector>

#include "optomem/fock.hpp"

namespace optomem {

/// State vector on a truncated space. Truncated coherent kets keep the norm
/// they are born with (< 1 when amplitude leaks past the cutoff).
class Ket {
 public:
  Ket(HilbertDims dims, Vector amplitudes);

  const HilbertDims& dims() const { return dims_; }
  const Vector& amplitudes() const { return v_; }
  double norm() const { return v_.norm(); }

 private:
  HilbertDims dims_;
  Vector v_;
};

/// Hermitian, unit-trace operator. Construction checks Hermiticity to 1e-10
/// and accepts trace within 1e-4 of one, which admits states carried by the
/// integrator (whose trace drift is itself a measured quantity).
class DensityMatrix {
 public:
  explicit DensityMatrix(QOperator op);

  const QOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const HilbertDims& dims() const { return op_.dims(); }

  static constexpr double kHermiticityTol = 1e-10;
  static constexpr double kTraceTol = 1e-4;

 private:
  QOperator op_;
};

/// Truncated Fock expansion of |alpha>, c_{m+1} = c_m * alpha / sqrt(m+1),
/// starting from c_0 = exp(-|alpha|^2 / 2). Not renormalized.
Ket coherent_ket(cplx alpha, std::size_t n);
Ket fock_ket(std::size_t k, std::size_t n);
Ket vacuum_ket(std::size_t n);
Ket tensor(std::span<const Ket> kets);

/// exp(alpha a^dagger - alpha* a) on n levels, via eigendecomposition of the
/// Hermitian matrix i (alpha a^dagger - alpha* a).
QOperator displacement_operator(cplx alpha, std::size_t n);

/// |psi><psi| of the tensor product of `kets`, renormalized to unit trace.
DensityMatrix product_dm(std::span<const Ket> kets);
DensityMatrix product_dm(std::initializer_list<Ket> kets);

/// Reduced state of `keep_mode`. Works on any multi-mode operator; the trace
/// is preserved.
QOperator partial_trace(const QOperator& rho, std::size_t keep_mode);
DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep_mode);

double purity(const QOperator& rho);

/// <alpha| rho_mode |alpha> with the truncated (unnormalized) coherent ket of
/// the mode's size. Multi-mode inputs are reduced to `mode` first.
double coherent_overlap(const QOperator& rho, cplx alpha, std::size_t mode);

cplx expectation(const QOperator& op, const DensityMatrix& rho);

}  // namespace optomem
