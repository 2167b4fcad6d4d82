#include "dispfd/transport1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dispfd {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

void check_finite(std::span<const double> u) {
  for (double v : u)
    if (!std::isfinite(v)) throw std::runtime_error("solution blew up");
}

// Generic RK driver with dt shrunk to land exactly on T.
template <class Rhs>
RunResult run(const RKScheme& rk, std::span<const double> u0, double T,
              double dt_raw, Rhs&& rhs, const HistoryFn& history) {
  RunResult out;
  out.u.assign(u0.begin(), u0.end());
  if (T <= 0.0 || dt_raw <= 0.0) {
    out.dt = dt_raw;
    return out;
  }
  int steps = static_cast<int>(std::ceil(T / dt_raw - 1e-12));
  double dt = T / steps;
  out.steps = steps;
  out.dt = dt;
  std::vector<double> stage, k;
  if (history) history(0.0, out.u);
  for (int n = 0; n < steps; ++n) {
    rk_step(rk, rhs, out.u, dt, stage, k);
    if (n % 100 == 99 || n == steps - 1) check_finite(out.u);
    if (history) history((n + 1) * dt, out.u);
  }
  return out;
}

}  // namespace

double kappa_star_signed(const InteriorScheme& s, double kappa) {
  if (kappa == 0.0) return 0.0;
  double ks = kappa_star(s, std::abs(kappa));
  return kappa < 0.0 ? -ks : ks;
}

std::vector<double> modal_solution(const InteriorScheme& s,
                                   const std::optional<RKScheme>& rk,
                                   const Grid1D& g,
                                   std::span<const double> u0, double c,
                                   double T, double dt) {
  if (static_cast<int>(u0.size()) != g.n)
    throw std::invalid_argument("field size does not match grid");
  Spectrum spec = dft(u0);
  long steps = 0;
  if (rk) {
    if (dt <= 0.0) throw std::invalid_argument("rk form requires dt > 0");
    steps = std::lround(T / dt);
    if (std::abs(steps * dt - T) > 1e-10 * std::max(1.0, T))
      throw std::invalid_argument("T / dt must be an integer");
  }
  for (int i = 0; i < spec.n; ++i) {
    int kp = spec.kprime_of(i);
    double kappa = 2.0 * kPi * kp / g.n;
    double kstar = kappa_star_signed(s, kappa) / g.dx();
    cd factor;
    if (rk) {
      cd amp = stability_polynomial(*rk, cd(0.0, -c * kstar * dt));
      factor = std::pow(amp, static_cast<double>(steps));
    } else {
      factor = std::exp(cd(0.0, -c * kstar * T));
    }
    spec.coeff[i] *= factor;
  }
  auto cu = idft(spec);
  std::vector<double> u(g.n);
  for (int i = 0; i < g.n; ++i) u[i] = cu[i].real();
  return u;
}

RunResult solve_const_transport(const InteriorScheme& s, const RKScheme& rk,
                                const Grid1D& g, std::span<const double> u0,
                                double c, double T, double r,
                                const HistoryFn& history) {
  if (static_cast<int>(u0.size()) != g.n)
    throw std::invalid_argument("field size does not match grid");
  if (c == 0.0) {
    RunResult out;
    out.u.assign(u0.begin(), u0.end());
    return out;
  }
  CompactDerivative deriv(s, g.n, g.dx());
  auto rhs = [&](std::span<const double> u, std::span<double> out) {
    auto up = deriv(u);
    for (int i = 0; i < g.n; ++i) out[i] = -c * up[i];
  };
  return run(rk, u0, T, r * g.dx() / std::abs(c), rhs, history);
}

RunResult solve_varcoef_transport(const InteriorScheme& s, const RKScheme& rk,
                                  const Grid1D& g, std::span<const double> u0,
                                  const std::function<double(double)>& cfun,
                                  double T, double r,
                                  const HistoryFn& history) {
  if (static_cast<int>(u0.size()) != g.n)
    throw std::invalid_argument("field size does not match grid");
  std::vector<double> cvals(g.n);
  double cmax = 0.0;
  for (int i = 0; i < g.n; ++i) {
    cvals[i] = cfun(g.x(i));
    cmax = std::max(cmax, std::abs(cvals[i]));
  }
  if (cmax == 0.0) {
    RunResult out;
    out.u.assign(u0.begin(), u0.end());
    return out;
  }
  CompactDerivative deriv(s, g.n, g.dx());
  auto rhs = [&](std::span<const double> u, std::span<double> out) {
    auto up = deriv(u);
    for (int i = 0; i < g.n; ++i) out[i] = -cvals[i] * up[i];
  };
  return run(rk, u0, T, r * g.dx() / cmax, rhs, history);
}

double varcoef_speed(double A, double B, double x) {
  double sn = std::sin(2.0 * kPi * x);
  return A + B * sn * sn;
}

double varcoef_period(double A, double B) {
  return 1.0 / (std::abs(A) * std::sqrt(1.0 + B / A));
}

double exact_varcoef(double A, double B,
                     const std::function<double(double)>& u0fun, double x,
                     double T) {
  if (A == 0.0 || 1.0 + B / A <= 0.0)
    throw std::invalid_argument("speed must not change sign");
  // Backward characteristic dX/ds = -c(X), s in [0, T], X(0) = x.
  auto f = [&](double X) { return -varcoef_speed(A, B, X); };
  // Dormand-Prince 5(4) with standard step control.
  double X = x;
  double s = 0.0;
  double h = std::min(T, 1e-2);
  int guard = 0;
  while (s < T) {
    if (++guard > 1000000)
      throw std::runtime_error("characteristic integration failed");
    if (s + h > T) h = T - s;
    double k1 = f(X);
    double k2 = f(X + h * (k1 / 5.0));
    double k3 = f(X + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
    double k4 = f(X + h * (44.0 / 45 * k1 - 56.0 / 15 * k2 + 32.0 / 9 * k3));
    double k5 = f(X + h * (19372.0 / 6561 * k1 - 25360.0 / 2187 * k2 +
                           64448.0 / 6561 * k3 - 212.0 / 729 * k4));
    double k6 = f(X + h * (9017.0 / 3168 * k1 - 355.0 / 33 * k2 +
                           46732.0 / 5247 * k3 + 49.0 / 176 * k4 -
                           5103.0 / 18656 * k5));
    double y5 = X + h * (35.0 / 384 * k1 + 500.0 / 1113 * k3 +
                         125.0 / 192 * k4 - 2187.0 / 6784 * k5 +
                         11.0 / 84 * k6);
    double k7 = f(y5);
    double y4 = X + h * (5179.0 / 57600 * k1 + 7571.0 / 16695 * k3 +
                         393.0 / 640 * k4 - 92097.0 / 339200 * k5 +
                         187.0 / 2100 * k6 + 1.0 / 40 * k7);
    double err = std::abs(y5 - y4);
    double tol = 1e-12 * std::max(1.0, std::abs(X));
    if (err <= tol) {
      s += h;
      X = y5;
    }
    double scale = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 2.0;
    h *= std::clamp(scale, 0.2, 5.0);
  }
  // The transport domain is periodic with unit period; fold the foot of the
  // characteristic back into [0, 1) before sampling the initial profile.
  X -= std::floor(X);
  return u0fun(X);
}

std::vector<double> pseudospectral_derivative(const Grid1D& g,
                                              std::span<const double> u) {
  Spectrum spec = dft(u);
  for (int i = 0; i < spec.n; ++i) {
    double k = 2.0 * kPi * spec.kprime_of(i) / g.ell;
    spec.coeff[i] *= cd(0.0, k);
  }
  auto cu = idft(spec);
  std::vector<double> out(g.n);
  for (int i = 0; i < g.n; ++i) out[i] = cu[i].real();
  return out;
}

RunResult solve_hopf(const InteriorScheme& s, const RKScheme& rk,
                     const Grid1D& g, std::span<const double> u0, double T,
                     double r, const HistoryFn& history) {
  if (static_cast<int>(u0.size()) != g.n)
    throw std::invalid_argument("field size does not match grid");
  double umax = 0.0;
  for (double v : u0) umax = std::max(umax, std::abs(v));
  if (umax == 0.0) {
    RunResult out;
    out.u.assign(u0.begin(), u0.end());
    return out;
  }
  CompactDerivative deriv(s, g.n, g.dx());
  std::vector<double> flux(g.n);
  auto rhs = [&](std::span<const double> u, std::span<double> out) {
    for (int i = 0; i < g.n; ++i) flux[i] = 0.5 * u[i] * u[i];
    auto fp = deriv(std::span<const double>(flux));
    for (int i = 0; i < g.n; ++i) out[i] = -fp[i];
  };
  return run(rk, u0, T, r * g.dx() / umax, rhs, history);
}

double exact_hopf(const std::function<double(double)>& u0fun, double x,
                  double t) {
  if (t == 0.0) return u0fun(x);
  auto g = [&](double xi) { return xi + u0fun(xi) * t - x; };
  // g is increasing before breaking; bracket by expansion around x.
  double lo = x - 0.5, hi = x + 0.5;
  for (int i = 0; i < 60 && g(lo) > 0.0; ++i) lo -= 0.5;
  for (int i = 0; i < 60 && g(hi) < 0.0; ++i) hi += 0.5;
  if (g(lo) > 0.0 || g(hi) < 0.0)
    throw std::runtime_error("characteristic foot not bracketed");
  double xi = x;
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    double gv = g(xi);
    if (std::abs(gv) < 1e-13) {
      converged = true;
      break;
    }
    double h = 1e-7;
    double dg = (g(xi + h) - g(xi - h)) / (2.0 * h);
    if (dg == 0.0) break;
    double next = xi - gv / dg;
    if (next < lo || next > hi) break;
    xi = next;
  }
  if (!converged) {
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      double mid = 0.5 * (lo + hi);
      (g(mid) <= 0.0 ? lo : hi) = mid;
    }
    xi = 0.5 * (lo + hi);
    if (std::abs(g(xi)) > 1e-9)
      throw std::runtime_error("no convergence (near wave breaking)");
  }
  return u0fun(xi);
}

double l2_error(const Grid1D& g, std::span<const double> ua,
                std::span<const double> ub) {
  if (ua.size() != ub.size() || static_cast<int>(ua.size()) != g.n)
    throw std::invalid_argument("grid mismatch");
  double sum = 0.0;
  for (size_t i = 0; i < ua.size(); ++i) {
    double d = ua[i] - ub[i];
    sum += d * d;
  }
  return std::sqrt(sum * g.dx());
}

double linf_error(std::span<const double> ua, std::span<const double> ub) {
  if (ua.size() != ub.size()) throw std::invalid_argument("grid mismatch");
  double m = 0.0;
  for (size_t i = 0; i < ua.size(); ++i)
    m = std::max(m, std::abs(ua[i] - ub[i]));
  return m;
}

double packet_ic(double x) {
  return std::cos(30.0 * kPi * x) * std::exp(-80.0 * (x - 0.5) * (x - 0.5));
}

double chirp_ic(double x) {
  double k = 30.0 * kPi * std::exp(-0.75 * (x - 5.0) * (x - 5.0));
  return std::cos(k * x);
}

double hopf_ic(double x) { return 0.75 + 0.25 * std::sin(2.0 * kPi * x); }

std::vector<double> sample_ic(const Grid1D& g,
                              const std::function<double(double)>& f) {
  std::vector<double> u(g.n);
  for (int i = 0; i < g.n; ++i) u[i] = f(g.x(i));
  return u;
}

}  // namespace dispfd
