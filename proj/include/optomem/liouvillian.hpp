#pragma once

// Hamiltonian and Lindblad generator of the Kerr optomechanical memory.
//
// Density matrices are vectorized by column stacking (Eigen's native layout
// for a column-major matrix), so vec(A rho B) = (B^T (x) A) vec(rho) and the
// coherent part -i[H, rho] becomes -i (I (x) H - H^T (x) I).

#include <span>

#include "optomem/fock.hpp"
#include "optomem/kernels.hpp"
#include "optomem/states.hpp"

namespace optomem {

/// Kelvin per atomic unit of temperature (Hartree / k_B).
inline constexpr double kKelvinPerAtomicUnit = 3.1577464e5;

inline double kelvin_to_au(double kelvin) { return kelvin / kKelvinPerAtomicUnit; }

/// Physical constants in atomic units (hbar = k_B = 1), except the bath
/// temperature, which is kept in Kelvin and converted where it is used.
struct SystemParams {
  double omega_c = 0.0;
  double omega_m = 0.0;
  double k_c = 0.0;
  double k_m = 0.0;
  double g0 = 0.0;
  double gamma_c = 0.0;
  double gamma_m = 0.0;
  double bath_temp = 0.0;  // Kelvin

  /// Throws ParameterError when a rate, frequency or temperature is negative
  /// or non-finite.
  void validate() const;

  /// Frequencies and coupling of the reference device; Kerr strengths 0.01,
  /// damping 1e-5, zero temperature.
  static SystemParams reference();
};

/// Sparse linear map on column-stacked density matrices of side `side`.
class Superoperator {
 public:
  Superoperator(std::size_t side, SparseMatrix matrix);

  std::size_t side() const { return side_; }
  const SparseMatrix& matrix() const { return m_; }
  std::size_t nonzeros() const { return static_cast<std::size_t>(m_.nonZeros()); }

  static Superoperator zero(std::size_t side);

 private:
  std::size_t side_;
  SparseMatrix m_;
};

Superoperator operator+(const Superoperator& a, const Superoperator& b);

/// H = w_c n_a + k_c n_a^2 + w_m n_b + k_m n_b^2 - g0 n_a (b + b^dagger).
QOperator hamiltonian(const SystemParams& params, const HilbertDims& dims);

/// Single mode H = omega n + chi n^2.
QOperator kerr_hamiltonian(double omega, double chi, std::size_t n);

/// Bose occupation 1 / (exp(omega / T) - 1) with T in atomic units; exactly 0
/// at T = 0.
double thermal_occupation(double omega, double temp_au);

SparseMatrix to_sparse(const QOperator& op);

/// -i [H, .]
Superoperator hamiltonian_superop(const QOperator& h);

/// gamma (n_th + 1) D[c] + gamma n_th D[c^dagger], with
/// D[x] rho = x rho x^dagger - {x^dagger x, rho} / 2.
Superoperator dissipator(const QOperator& c_op, double gamma, double n_th);

/// Full two-mode generator: coherent part of `hamiltonian` plus optical and
/// mechanical thermal dissipators sharing one bath temperature.
Superoperator liouvillian(const SystemParams& params, const HilbertDims& dims);
/// As above with the bath occupations given explicitly.
Superoperator liouvillian(const SystemParams& params, const HilbertDims& dims, double n_c, double n_m);

/// One Kerr mode standing for the combined system: chi = k_c + k_m, linear
/// frequency omega_m, damping gamma_m, thermal occupation from omega_m.
Superoperator combined_kerr_liouvillian(const SystemParams& params, std::size_t n);
Superoperator combined_kerr_liouvillian(const SystemParams& params, std::size_t n, double n_th);

/// L vec(rho), reshaped and Hermitian-symmetrized.
QOperator apply(const Superoperator& l, const QOperator& rho);
QOperator apply(const Superoperator& l, const DensityMatrix& rho);

/// Column-stacking vectorization and its inverse.
Vector vec(const QOperator& rho);
QOperator unvec(const Vector& v, const HilbertDims& dims);

}  // namespace optomem
