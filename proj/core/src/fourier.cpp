#include "dispfd/fourier.hpp"

#include <cmath>
#include <numbers>

namespace dispfd {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT, sign = -1 forward.
void fft_pow2(std::vector<cd>& a, int sign) {
  const int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    double ang = sign * kTwoPi / len;
    cd wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      cd w = 1.0;
      for (int k = 0; k < len / 2; ++k) {
        cd u = a[i + k];
        cd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

// Raw bins B[m] = sum_{j=0..N-1} u[j] e^{sign * 2 pi i m j / N}.
std::vector<cd> raw_transform(std::span<const cd> u, int sign) {
  const int n = static_cast<int>(u.size());
  std::vector<cd> b(u.begin(), u.end());
  if (is_pow2(n)) {
    fft_pow2(b, sign);
    return b;
  }
  std::vector<cd> out(n);
  for (int m = 0; m < n; ++m) {
    cd acc = 0.0;
    for (int j = 0; j < n; ++j) {
      double ang = sign * kTwoPi * m * static_cast<double>(j) / n;
      acc += u[j] * cd(std::cos(ang), std::sin(ang));
    }
    out[m] = acc;
  }
  return out;
}

}  // namespace

Spectrum dft(std::span<const cd> u) {
  const int n = static_cast<int>(u.size());
  std::vector<cd> bins = raw_transform(u, -1);
  Spectrum s;
  s.n = n;
  s.coeff.resize(n);
  // Storage index j = 1..N shifts each bin by e^{-2 pi i m / N}.
  for (int i = 0; i < n; ++i) {
    int kp = i - n / 2 + 1;
    int m = ((kp % n) + n) % n;
    double ang = -kTwoPi * m / n;
    s.coeff[i] = bins[m] * cd(std::cos(ang), std::sin(ang)) / double(n);
  }
  return s;
}

Spectrum dft(std::span<const double> u) {
  std::vector<cd> cu(u.begin(), u.end());
  return dft(std::span<const cd>(cu));
}

std::vector<cd> idft(const Spectrum& s) {
  const int n = s.n;
  std::vector<cd> c(n, cd{});
  for (int i = 0; i < n; ++i) {
    int kp = s.kprime_of(i);
    int m = ((kp % n) + n) % n;
    double ang = kTwoPi * m / n;  // fold in the j = 1 offset
    c[m] += s.coeff[i] * cd(std::cos(ang), std::sin(ang));
  }
  return raw_transform(std::span<const cd>(c), +1);
}

}  // namespace dispfd
