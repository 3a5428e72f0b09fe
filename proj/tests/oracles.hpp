#pragma once

// Closed-form reference values used across the test suite. Nothing in here
// calls into the library's solvers.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// <a(t)> for H = omega n + chi n^2 with amplitude damping gamma at zero
// temperature, starting from the (untruncated) coherent state |alpha>.
inline cplx damped_kerr_amplitude(cplx alpha, double omega, double chi, double gamma, double t) {
  const cplx i(0.0, 1.0);
  const cplx s = gamma + 2.0 * i * chi;
  const double n0 = std::norm(alpha);
  const cplx exponent = -(i * omega + i * chi + gamma / 2.0) * t;
  const cplx phase = (std::abs(s) == 0.0) ? cplx{} : -n0 * (1.0 - std::exp(-s * t)) * (2.0 * i * chi / s);
  return alpha * std::exp(exponent + phase);
}

// Same closed system evaluated as a Fock sum over the first n levels of the
// renormalized truncated coherent state: <a> = sum_k sqrt(k+1) c_{k+1} c_k^* e^{-i (E_{k+1} - E_k) t}.
inline cplx truncated_kerr_amplitude(cplx alpha, double omega, double chi, std::size_t n, double t) {
  std::vector<cplx> c(n);
  c[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) c[k] = c[k - 1] * alpha / std::sqrt(static_cast<double>(k));
  double norm = 0.0;
  for (const auto& v : c) norm += std::norm(v);
  cplx acc{};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dk = static_cast<double>(k);
    const double gap = omega + chi * (2.0 * dk + 1.0);
    acc += std::sqrt(dk + 1.0) * c[k + 1] * std::conj(c[k]) * std::exp(cplx(0.0, -gap * t));
  }
  return acc / norm;
}

// Hermite function psi_n(x) for the oscillator with x = (a + a^dagger)/sqrt(2).
inline double hermite_function(std::size_t n, double x) {
  double p0 = std::pow(M_PI, -0.25) * std::exp(-x * x / 2.0);
  if (n == 0) return p0;
  double p1 = std::sqrt(2.0) * x * p0;
  for (std::size_t k = 2; k <= n; ++k) {
    const double dk = static_cast<double>(k);
    const double p2 = std::sqrt(2.0 / dk) * x * p1 - std::sqrt((dk - 1.0) / dk) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace oracle
