#pragma once

// Data-parallel inner loops. Every kernel has a serial reference version kept
// for testing and benchmarking; the OpenMP versions partition rows across
// threads so each output element is still accumulated by exactly one thread
// in a fixed order. Results are therefore bitwise identical to the serial
// path for any thread count.

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/SparseCore>

namespace optomem {

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

namespace kernels {

/// y = A x for a compressed row-major matrix.
void spmv_serial(const SparseMatrix& a, std::span<const std::complex<double>> x,
                 std::span<std::complex<double>> y);
void spmv_omp(const SparseMatrix& a, std::span<const std::complex<double>> x,
              std::span<std::complex<double>> y);

/// In-place (M + M^dagger) / 2 for a column-major side x side matrix.
void hermitize_serial(std::span<std::complex<double>> m, std::size_t side);
void hermitize_omp(std::span<std::complex<double>> m, std::size_t side);

/// Number of threads the OpenMP kernels will use.
int max_threads();
void set_threads(int n);

}  // namespace kernels
}  // namespace optomem
