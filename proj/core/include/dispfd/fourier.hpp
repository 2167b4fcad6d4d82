// Discrete Fourier transform with the 1/N-forward normalization and the
// k' = -N/2+1 .. N/2 index layout used throughout the dispersion analysis.

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dispfd {

// Spectrum of an N-point periodic sequence sampled at x_j = j dx, j = 1..N.
// coeff[i] holds U_hat(k') with k' = i - N/2 + 1.
struct Spectrum {
  int n = 0;
  std::vector<std::complex<double>> coeff;

  int kprime_min() const { return -n / 2 + 1; }
  int kprime_max() const { return n / 2; }
  // k' must lie in [kprime_min, kprime_max].
  const std::complex<double>& at(int kprime) const {
    return coeff[kprime + n / 2 - 1];
  }
  std::complex<double>& at(int kprime) { return coeff[kprime + n / 2 - 1]; }
  int kprime_of(int index) const { return index - n / 2 + 1; }
};

// U_hat(k') = (1/N) sum_{j=1..N} U_j e^{-2 pi i k' j / N}. Radix-2 FFT for
// power-of-two N, direct transform otherwise.
Spectrum dft(std::span<const std::complex<double>> u);
Spectrum dft(std::span<const double> u);

// Inverse: U_j = sum_{k'} U_hat(k') e^{2 pi i k' j / N}, j = 1..N.
std::vector<std::complex<double>> idft(const Spectrum& s);

}  // namespace dispfd
