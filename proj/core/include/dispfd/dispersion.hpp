// Dispersion analysis: sampled kappa* profiles, leading-order error fits,
// resolving limits, phase-error and L2-error predictors.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "dispfd/fourier.hpp"
#include "dispfd/rk.hpp"
#include "dispfd/scheme.hpp"

namespace dispfd {

struct DispersionProfile {
  std::string scheme;
  std::vector<double> kappa;
  std::vector<double> kappa_star;
  std::vector<double> abs_err;      // |kappa* - kappa|
  std::vector<double> rel_err;      // |kappa* - kappa| / kappa
  std::vector<double> dkstar_dkappa;
};

struct LeadingErrorFit {
  int order = 0;          // s: kappa* - kappa = c_{s+1} kappa^{s+1} + ...
  double coefficient = 0; // c_{s+1}
  double gamma = 0;       // validity radius of the leading term
  double eps_gamma = 0;   // relative tolerance defining gamma
  bool degenerate = false;
};

// Samples must be strictly increasing in (0, pi].
DispersionProfile profile(const InteriorScheme& s,
                          std::span<const double> kappa_samples);

// 2048 uniform samples on (0, pi].
std::vector<double> default_kappa_samples();

// Richardson-extrapolated leading coefficient at kappa = 2^-m, m = 4..20;
// gamma located by scan plus bisection to 1e-4. eps_gamma in (0, 1).
LeadingErrorFit leading_error_fit(const InteriorScheme& s, double eps_gamma);

// Largest Gamma_r with |kappa*-kappa|/kappa <= eps on a 1e4-point uniform
// sample of (0, Gamma_r]; 0 if already violated at the smallest sample.
double resolving_limit(const InteriorScheme& s, double eps);

// theta_e = c k T (kappa* - kappa) / kappa at kappa = k dx; the exact-time
// (r -> 0) phase error. Requires kappa <= pi.
double phase_error(const InteriorScheme& s, double k, double dx, double c,
                   double T);

// Full phase error omega* T - c k T including the temporal contribution of
// the RK stability polynomial at r = c dt / dx. dt = 0 degenerates to
// phase_error.
double phase_error_full(const InteriorScheme& s, const RKScheme& rk, double k,
                        double dx, double c, double dt, double T);

struct L2Prediction {
  double value = 0;
  double max_theta_e = 0;
  bool regime_valid = true;  // false when max participating |theta_e| > 0.1
};

// (cT/dx) sqrt(l sum |U_hat|^2 |kappa*-kappa|^2) over the spectrum of an
// N-point field on a domain of length l = N dx.
L2Prediction predict_l2_error(const InteriorScheme& s, const Spectrum& spec,
                              double c, double T, double dx);

// d(kappa*)/d(kappa): the ratio of numerical to exact group velocity in the
// exact-time limit.
double group_velocity_ratio(const InteriorScheme& s, double kappa);

}  // namespace dispfd
