#include "dispfd/rk.hpp"

#include <cmath>

namespace dispfd {

std::vector<double> stage_weights(std::span<const double> a) {
  const int m = static_cast<int>(a.size()) - 1;
  if (m < 1 || a[0] != 1.0)
    throw std::invalid_argument("stage_weights: need a_0 = 1 and M >= 1");
  for (int i = 1; i < m; ++i)
    if (a[i] == 0.0)
      throw std::invalid_argument("stage_weights: zero intermediate a_m");
  std::vector<double> w(m);
  w[m - 1] = a[1];  // w_M
  for (int i = 2; i <= m; ++i) w[m - i] = a[i] / a[i - 1];  // w_{M-i+1}
  return w;
}

std::vector<double> polynomial_from_weights(std::span<const double> w) {
  const int m = static_cast<int>(w.size());
  std::vector<double> a(m + 1);
  a[0] = 1.0;
  double prod = 1.0;
  for (int i = 1; i <= m; ++i) {
    prod *= w[m - i];  // a_i = w_M w_{M-1} ... w_{M-i+1}
    a[i] = prod;
  }
  return a;
}

RKScheme RKScheme::from_polynomial(std::vector<double> coeffs) {
  RKScheme rk;
  rk.w = stage_weights(coeffs);
  rk.a = std::move(coeffs);
  rk.stages = static_cast<int>(rk.w.size());
  return rk;
}

RKScheme RKScheme::classical(int stages) {
  std::vector<double> a(stages + 1);
  double fact = 1.0;
  a[0] = 1.0;
  for (int m = 1; m <= stages; ++m) {
    fact *= m;
    a[m] = 1.0 / fact;
  }
  RKScheme rk;
  rk.a = std::move(a);
  rk.stages = stages;
  // Exact w_i = 1/(M+1-i); the generic quotient a_i/a_{i-1} picks up
  // one-ulp errors for the larger factorials.
  rk.w.resize(stages);
  for (int i = 1; i <= stages; ++i) rk.w[i - 1] = 1.0 / (stages + 1 - i);
  return rk;
}

std::complex<double> stability_polynomial(const RKScheme& rk,
                                          std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (int m = static_cast<int>(rk.a.size()) - 1; m >= 0; --m)
    acc = acc * z + rk.a[m];
  return acc;
}

std::complex<double> numerical_frequency(const RKScheme& rk, double z) {
  std::complex<double> p = stability_polynomial(rk, {0.0, -z});
  if (std::abs(p) == 0.0)
    throw std::domain_error("numerical_frequency: P(-iz) = 0");
  return std::complex<double>(0.0, 1.0) * std::log(p);
}

double max_stable_cfl(const RKScheme& rk, const InteriorScheme& s) {
  constexpr int samples = 2048;
  std::vector<double> kstars(samples);
  for (int i = 0; i < samples; ++i) {
    double kappa = (i + 1) * M_PI / samples;
    kstars[i] = kappa_star(s, kappa);
  }
  auto stable = [&](double r) {
    for (double ks : kstars) {
      std::complex<double> p = stability_polynomial(rk, {0.0, -r * ks});
      if (std::abs(p) > 1.0 + 1e-12) return false;
    }
    return true;
  };
  if (!stable(1e-4)) return 0.0;
  double lo = 1e-4, hi = 1e-4;
  while (stable(hi) && hi < 64.0) {
    lo = hi;
    hi *= 2.0;
  }
  if (hi >= 64.0) return hi;
  while (hi - lo > 1e-4) {
    double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace dispfd
