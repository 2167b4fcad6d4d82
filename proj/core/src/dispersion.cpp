#include "dispfd/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dispfd {

namespace {

constexpr double kPi = std::numbers::pi;

double rel_err_at(const InteriorScheme& s, double kappa) {
  return std::abs(kappa_star(s, kappa) - kappa) / kappa;
}

// Relative deviation of kappa*-kappa from its leading term c kappa^{s+1}.
double fit_deviation(const InteriorScheme& s, double c, int order,
                     double kappa) {
  double lead = c * std::pow(kappa, order + 1);
  return std::abs((kappa_star(s, kappa) - kappa - lead) / lead);
}

}  // namespace

DispersionProfile profile(const InteriorScheme& s,
                          std::span<const double> kappa_samples) {
  DispersionProfile p;
  p.scheme = s.name;
  double prev = 0.0;
  for (double kappa : kappa_samples) {
    if (!(kappa > prev) || kappa > kPi + 1e-12)
      throw std::invalid_argument(
          "kappa samples must be strictly increasing in (0, pi]");
    prev = kappa;
    double ks = kappa_star(s, kappa);
    p.kappa.push_back(kappa);
    p.kappa_star.push_back(ks);
    p.abs_err.push_back(std::abs(ks - kappa));
    p.rel_err.push_back(std::abs(ks - kappa) / kappa);
    p.dkstar_dkappa.push_back(kappa_star_derivative(s, kappa));
  }
  return p;
}

std::vector<double> default_kappa_samples() {
  const int n = 2048;
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = kPi * (i + 1) / n;
  return k;
}

LeadingErrorFit leading_error_fit(const InteriorScheme& s, double eps_gamma) {
  if (!(eps_gamma > 0.0 && eps_gamma < 1.0))
    throw std::invalid_argument("eps_gamma must lie in (0, 1)");
  LeadingErrorFit fit;
  fit.order = formal_order(s);
  fit.eps_gamma = eps_gamma;
  const int p = fit.order + 1;

  // g(kappa) = (kappa*-kappa)/kappa^p sampled at kappa = 2^-m. Truncation
  // error shrinks with m while roundoff grows, so pick the Richardson pair
  // whose neighbors agree best.
  std::vector<double> g;
  for (int m = 4; m <= 20; ++m) {
    double kappa = std::ldexp(1.0, -m);
    g.push_back((kappa_star(s, kappa) - kappa) / std::pow(kappa, p));
  }
  std::vector<double> rich(g.size() - 1);
  for (size_t i = 0; i + 1 < g.size(); ++i)
    rich[i] = (4.0 * g[i + 1] - g[i]) / 3.0;
  size_t best = 0;
  double best_gap = std::abs(rich[1] - rich[0]);
  for (size_t i = 0; i + 1 < rich.size(); ++i) {
    double gap = std::abs(rich[i + 1] - rich[i]);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  fit.coefficient = rich[best];
  if (std::abs(fit.coefficient) < 1e-14) {
    fit.degenerate = true;
    return fit;
  }

  // Largest kappa below which the leading term stays within eps_gamma.
  auto holds = [&](double kappa) {
    return fit_deviation(s, fit.coefficient, fit.order, kappa) <= eps_gamma;
  };
  const int n = 2048;
  double lo = 0.0, hi = kPi;
  bool violated = false;
  for (int i = 0; i < n; ++i) {
    double kappa = kPi * (i + 1) / n;
    if (!holds(kappa)) {
      hi = kappa;
      violated = true;
      break;
    }
    lo = kappa;
  }
  if (!violated) {
    fit.gamma = kPi;
    return fit;
  }
  while (hi - lo > 1e-4) {
    double mid = 0.5 * (lo + hi);
    (holds(mid) ? lo : hi) = mid;
  }
  fit.gamma = lo;
  return fit;
}

double resolving_limit(const InteriorScheme& s, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const int n = 10000;
  double lo = 0.0, hi = kPi;
  bool violated = false;
  for (int i = 0; i < n; ++i) {
    double kappa = kPi * (i + 1) / n;
    if (rel_err_at(s, kappa) > eps) {
      if (i == 0) return 0.0;
      hi = kappa;
      violated = true;
      break;
    }
    lo = kappa;
  }
  if (!violated) return kPi;
  while (hi - lo > 1e-4) {
    double mid = 0.5 * (lo + hi);
    (rel_err_at(s, mid) <= eps ? lo : hi) = mid;
  }
  return lo;
}

double phase_error(const InteriorScheme& s, double k, double dx, double c,
                   double T) {
  double kappa = k * dx;
  if (kappa > kPi + 1e-12)
    throw std::domain_error("kappa = k dx exceeds pi (Nyquist violation)");
  if (kappa == 0.0) return 0.0;
  return c * k * T * (kappa_star(s, kappa) - kappa) / kappa;
}

double phase_error_full(const InteriorScheme& s, const RKScheme& rk, double k,
                        double dx, double c, double dt, double T) {
  double kappa = k * dx;
  if (kappa > kPi + 1e-12)
    throw std::domain_error("kappa = k dx exceeds pi (Nyquist violation)");
  if (kappa == 0.0 || dt == 0.0) return phase_error(s, k, dx, c, T);
  double ks = kappa_star(s, kappa);
  double z = c * dt / dx * ks;
  std::complex<double> wdt = numerical_frequency(rk, z);
  return wdt.real() / dt * T - c * k * T;
}

L2Prediction predict_l2_error(const InteriorScheme& s, const Spectrum& spec,
                              double c, double T, double dx) {
  L2Prediction out;
  if (spec.n == 0) return out;
  double amp_max = 0.0;
  for (const auto& v : spec.coeff) amp_max = std::max(amp_max, std::abs(v));
  const double ell = spec.n * dx;
  double sum = 0.0;
  for (int i = 0; i < spec.n; ++i) {
    int kp = spec.kprime_of(i);
    if (kp == 0) continue;
    double kappa = 2.0 * kPi * std::abs(kp) / spec.n;
    double diff = kappa_star(s, kappa) - kappa;
    double amp2 = std::norm(spec.coeff[i]);
    sum += amp2 * diff * diff;
    if (amp_max > 0.0 && std::abs(spec.coeff[i]) > 1e-13 * amp_max) {
      double k = 2.0 * kPi * std::abs(kp) / ell;
      out.max_theta_e =
          std::max(out.max_theta_e, std::abs(c * k * T * diff / kappa));
    }
  }
  out.value = c * T / dx * std::sqrt(ell * sum);
  out.regime_valid = out.max_theta_e <= 0.1;
  return out;
}

double group_velocity_ratio(const InteriorScheme& s, double kappa) {
  if (!(kappa > 0.0) || kappa > kPi + 1e-12)
    throw std::domain_error("kappa must lie in (0, pi]");
  return kappa_star_derivative(s, kappa);
}

}  // namespace dispfd
