#include "optomem/kernels.hpp"

#include <omp.h>

#include "optomem/errors.hpp"

namespace optomem::kernels {

namespace {

// Below this many rows the fork/join overhead dominates.
constexpr Eigen::Index kParallelRows = 256;

void check_spmv(const SparseMatrix& a, std::span<const std::complex<double>> x,
                std::span<std::complex<double>> y) {
  if (!a.isCompressed()) throw DimensionError("spmv requires a compressed matrix");
  if (static_cast<Eigen::Index>(x.size()) != a.cols() ||
      static_cast<Eigen::Index>(y.size()) != a.rows()) {
    throw DimensionError("spmv: vector length does not match matrix shape");
  }
}

inline std::complex<double> row_dot(const int* ptr, const int* idx, const std::complex<double>* val,
                                    const std::complex<double>* x, Eigen::Index row) {
  double re = 0.0;
  double im = 0.0;
  for (int k = ptr[row]; k < ptr[row + 1]; ++k) {
    const double ar = val[k].real();
    const double ai = val[k].imag();
    const double xr = x[idx[k]].real();
    const double xi = x[idx[k]].imag();
    re += ar * xr - ai * xi;
    im += ar * xi + ai * xr;
  }
  return {re, im};
}

}  // namespace

void spmv_serial(const SparseMatrix& a, std::span<const std::complex<double>> x,
                 std::span<std::complex<double>> y) {
  check_spmv(a, x, y);
  const int* ptr = a.outerIndexPtr();
  const int* idx = a.innerIndexPtr();
  const std::complex<double>* val = a.valuePtr();
  for (Eigen::Index r = 0; r < a.rows(); ++r) y[r] = row_dot(ptr, idx, val, x.data(), r);
}

void spmv_omp(const SparseMatrix& a, std::span<const std::complex<double>> x,
              std::span<std::complex<double>> y) {
  check_spmv(a, x, y);
  const int* ptr = a.outerIndexPtr();
  const int* idx = a.innerIndexPtr();
  const std::complex<double>* val = a.valuePtr();
  const std::complex<double>* xp = x.data();
  std::complex<double>* yp = y.data();
  const Eigen::Index rows = a.rows();
#pragma omp parallel for schedule(static) if (rows >= kParallelRows)
  for (Eigen::Index r = 0; r < rows; ++r) yp[r] = row_dot(ptr, idx, val, xp, r);
}

void hermitize_serial(std::span<std::complex<double>> m, std::size_t side) {
  if (m.size() != side * side) throw DimensionError("hermitize: buffer is not side x side");
  for (std::size_t c = 0; c < side; ++c) {
    m[c * side + c] = {m[c * side + c].real(), 0.0};
    for (std::size_t r = c + 1; r < side; ++r) {
      const std::complex<double> avg = 0.5 * (m[c * side + r] + std::conj(m[r * side + c]));
      m[c * side + r] = avg;
      m[r * side + c] = std::conj(avg);
    }
  }
}

void hermitize_omp(std::span<std::complex<double>> m, std::size_t side) {
  if (m.size() != side * side) throw DimensionError("hermitize: buffer is not side x side");
  std::complex<double>* p = m.data();
  const auto n = static_cast<std::ptrdiff_t>(side);
#pragma omp parallel for schedule(static) if (n >= 64)
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    p[c * n + c] = {p[c * n + c].real(), 0.0};
    for (std::ptrdiff_t r = c + 1; r < n; ++r) {
      const std::complex<double> avg = 0.5 * (p[c * n + r] + std::conj(p[r * n + c]));
      p[c * n + r] = avg;
      p[r * n + c] = std::conj(avg);
    }
  }
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
  if (n < 1) throw ConfigError("thread count must be >= 1");
  omp_set_num_threads(n);
}

}  // namespace optomem::kernels
