// Explicit M-stage Runge-Kutta integration in two-storage form, plus
// stability-polynomial and numerical-frequency analysis.

#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "dispfd/scheme.hpp"

namespace dispfd {

struct RKScheme {
  int stages = 0;
  std::vector<double> a;  // polynomial coefficients a_0..a_M, a_0 = 1
  std::vector<double> w;  // derived stage weights w_1..w_M

  // Build from polynomial coefficients (a_0 must be 1).
  static RKScheme from_polynomial(std::vector<double> coeffs);
  // a_m = 1/m! for all stages: the classical full-order polynomial.
  static RKScheme classical(int stages);
  static RKScheme rk8() { return classical(8); }
  static RKScheme forward_euler() { return classical(1); }
};

// w_M = a_1, w_{M-i+1} = a_i / a_{i-1} for i = 2..M. Throws if an
// intermediate coefficient is zero.
std::vector<double> stage_weights(std::span<const double> a);

// Inverse of stage_weights, used by round-trip checks.
std::vector<double> polynomial_from_weights(std::span<const double> w);

// P(z) = sum a_m z^m.
std::complex<double> stability_polynomial(const RKScheme& rk,
                                          std::complex<double> z);

// omega* dt = i Log P(-i z), principal branch; z = c k* dt.
std::complex<double> numerical_frequency(const RKScheme& rk, double z);

// Largest CFL number r (bisection to 1e-4) with max over kappa of
// |P(-i r kappa*(kappa))| <= 1 + 1e-12. Symmetric interiors only.
double max_stable_cfl(const RKScheme& rk, const InteriorScheme& s);

// One step of the two-storage form: K_1 = dt F(U); K_i = dt F(U + w_{i-1}
// K_{i-1}); U += w_M K_M. `rhs(in, out)` must not alias its arguments.
// `stage` and `k` are the two caller-owned work buffers.
template <class T, class Rhs>
void rk_step(const RKScheme& rk, Rhs&& rhs, std::vector<T>& u, double dt,
             std::vector<T>& stage, std::vector<T>& k) {
  const size_t n = u.size();
  stage.resize(n);
  k.resize(n);
  rhs(std::span<const T>(u), std::span<T>(k));
  for (size_t j = 0; j < n; ++j) k[j] *= dt;
  for (int i = 2; i <= rk.stages; ++i) {
    const double wi = rk.w[i - 2];
    for (size_t j = 0; j < n; ++j) stage[j] = u[j] + wi * k[j];
    rhs(std::span<const T>(stage), std::span<T>(k));
    for (size_t j = 0; j < n; ++j) k[j] *= dt;
  }
  const double wm = rk.w[rk.stages - 1];
  for (size_t j = 0; j < n; ++j) u[j] += wm * k[j];
}

}  // namespace dispfd
