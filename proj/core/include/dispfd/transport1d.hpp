// 1D periodic transport experiments: constant and variable-coefficient
// advection, the Hopf equation, exact-solution oracles, and error norms.

#pragma once

#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "dispfd/fourier.hpp"
#include "dispfd/rk.hpp"
#include "dispfd/scheme.hpp"

namespace dispfd {

// Uniform periodic grid x_j = j dx, j = 1..N. Index i = 0..N-1 maps to
// j = i + 1.
struct Grid1D {
  int n = 0;
  double ell = 1.0;

  double dx() const { return ell / n; }
  double x(int i) const { return (i + 1) * dx(); }
};

// Signed resolution characteristic: kappa* extended as an odd function.
double kappa_star_signed(const InteriorScheme& s, double kappa);

// Per-mode evolution of U0's spectrum. With rk present the discrete factor
// P(-i c k* dt)^{T/dt} applies (T/dt must be an integer); otherwise the
// semi-discrete factor e^{-i c k* T}.
std::vector<double> modal_solution(const InteriorScheme& s,
                                   const std::optional<RKScheme>& rk,
                                   const Grid1D& g,
                                   std::span<const double> u0, double c,
                                   double T, double dt = 0.0);

struct RunResult {
  std::vector<double> u;
  std::vector<double> times;      // populated when history requested
  std::vector<double> l2_hist;    // error vs. reference at sampled times
  std::vector<double> linf_hist;
  int steps = 0;
  double dt = 0.0;
};

// Optional per-step history callback: (time, field).
using HistoryFn = std::function<void(double, std::span<const double>)>;

// dU/dt = -c D U; dt = r dx / |c|, shrunk so an integer number of steps
// lands exactly on T.
RunResult solve_const_transport(const InteriorScheme& s, const RKScheme& rk,
                                const Grid1D& g, std::span<const double> u0,
                                double c, double T, double r,
                                const HistoryFn& history = nullptr);

// dU/dt = -C D U with C = diag(cfun(x_j)); dt = r dx / max |c(x_j)|.
RunResult solve_varcoef_transport(const InteriorScheme& s, const RKScheme& rk,
                                  const Grid1D& g, std::span<const double> u0,
                                  const std::function<double(double)>& cfun,
                                  double T, double r,
                                  const HistoryFn& history = nullptr);

// Speed profile c(x) = A + B sin^2(2 pi x) and its transport period.
double varcoef_speed(double A, double B, double x);
double varcoef_period(double A, double B);

// u(x, T) for u_t + c(x) u_x = 0 with c as above, by integrating the
// backward characteristic with an adaptive Dormand-Prince step (local
// tolerance 1e-12). Requires A != 0 and 1 + B/A > 0.
double exact_varcoef(double A, double B,
                     const std::function<double(double)>& u0fun, double x,
                     double T);

// idft of i k U_hat: the kappa* = kappa reference derivative.
std::vector<double> pseudospectral_derivative(const Grid1D& g,
                                              std::span<const double> u);

// dU/dt = -D(U^2/2); dt = r dx / max |U0|.
RunResult solve_hopf(const InteriorScheme& s, const RKScheme& rk,
                     const Grid1D& g, std::span<const double> u0, double T,
                     double r, const HistoryFn& history = nullptr);

// Solves x = xi + u0(xi) t by Newton (tolerance 1e-13, at most 100
// iterations) with a bisection fallback; returns u0(xi). Valid before wave
// breaking.
double exact_hopf(const std::function<double(double)>& u0fun, double x,
                  double t);

double l2_error(const Grid1D& g, std::span<const double> ua,
                std::span<const double> ub);
double linf_error(std::span<const double> ua, std::span<const double> ub);

// Initial conditions: wave packet on [0,1], chirp on [0,10], Hopf profile
// on [0,1].
double packet_ic(double x);
double chirp_ic(double x);
double hopf_ic(double x);
inline constexpr double kChirpKmax = 380.0;
inline constexpr double kHopfBreakTime = 2.0 / std::numbers::pi;

std::vector<double> sample_ic(const Grid1D& g,
                              const std::function<double(double)>& f);

}  // namespace dispfd
