#include "dispfd/transport2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dispfd/transport1d.hpp"

namespace dispfd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoOverSqrtPi = 2.0 / 1.7724538509055160272981674833411452;

}  // namespace

Field2D deriv_x(const CompactDerivative& d, const Field2D& u) {
  const int n = u.n;
  if (d.size() != n) throw std::invalid_argument("derivative size mismatch");
  Field2D out = Field2D::zero(n);
  std::vector<double> row(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) row[j] = u.at(i, j);
    auto rp = d(std::span<const double>(row));
    for (int j = 0; j < n; ++j) out.at(i, j) = rp[j];
  }
  return out;
}

Field2D deriv_y(const CompactDerivative& d, const Field2D& u) {
  const int n = u.n;
  if (d.size() != n) throw std::invalid_argument("derivative size mismatch");
  Field2D out = Field2D::zero(n);
  std::vector<double> col(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[i] = u.at(i, j);
    auto cp = d(std::span<const double>(col));
    for (int i = 0; i < n; ++i) out.at(i, j) = cp[i];
  }
  return out;
}

double phase_error_2d(const InteriorScheme& s, double kx, double ky,
                      double cx, double cy, double dx, double T) {
  if (std::abs(kx) * dx > kPi + 1e-12 || std::abs(ky) * dx > kPi + 1e-12)
    throw std::domain_error("wavenumber exceeds the Nyquist limit");
  double kxs = kappa_star_signed(s, kx * dx) / dx;
  double kys = kappa_star_signed(s, ky * dx) / dx;
  return (cx * (kxs - kx) + cy * (kys - ky)) * T;
}

RunResult2D solve_rotation(const InteriorScheme& s, const RKScheme& rk,
                           const Grid2D& g, const Field2D& u0, double T,
                           double r, const HistoryFn2D& history) {
  const int n = g.n;
  if (u0.n != n) throw std::invalid_argument("field size does not match grid");
  std::vector<double> cx(n), cy(n);
  double cmax = 0.0;
  for (int i = 0; i < n; ++i) {
    cx[i] = 2.0 * kPi * g.y(i);   // speed in x varies with the row
    cy[i] = -2.0 * kPi * g.x(i);  // speed in y varies with the column
    cmax = std::max({cmax, std::abs(cx[i]), std::abs(cy[i])});
  }
  CompactDerivative deriv(s, n, g.dx());

  RunResult2D out;
  out.u = u0;
  if (T <= 0.0) return out;
  int steps = static_cast<int>(std::ceil(T * cmax / (r * g.dx()) - 1e-12));
  double dt = T / steps;
  out.steps = steps;
  out.dt = dt;

  Field2D work{n, {}};
  auto rhs = [&](std::span<const double> u, std::span<double> res) {
    work.v.assign(u.begin(), u.end());
    Field2D ux = deriv_x(deriv, work);
    Field2D uy = deriv_y(deriv, work);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        res[i * n + j] = -(cx[i] * ux.at(i, j) + cy[j] * uy.at(i, j));
  };

  std::vector<double> stage, k;
  if (history) history(0.0, out.u);
  for (int m = 0; m < steps; ++m) {
    rk_step(rk, rhs, out.u.v, dt, stage, k);
    if (m % 50 == 49 || m == steps - 1)
      for (double v : out.u.v)
        if (!std::isfinite(v)) throw std::runtime_error("solution blew up");
    if (history) history((m + 1) * dt, out.u);
  }
  return out;
}

double zalesak_ic(double x, double y) {
  auto H = [](double z, double delta) {
    return 0.5 * (1.0 + erf(4.0 * z / delta));
  };
  double u1 = H(x * x + (y - 1.0 / 12.0) * (y - 1.0 / 12.0) - 1.0 / 20.0,
                1.0 / 20.0);
  double u2 = H(1.0 / 4.0 - (x * x + y * y), 1.0 / 4.0);
  return (1.0 - u1) * u2;
}

double exact_rotation(const std::function<double(double, double)>& u0fun,
                      double x, double y, double t) {
  // Velocity (2 pi y, -2 pi x) rotates points clockwise; the characteristic
  // foot is the counterclockwise back-rotation.
  double th = 2.0 * kPi * t;
  double xb = std::cos(th) * x - std::sin(th) * y;
  double yb = std::sin(th) * x + std::cos(th) * y;
  return u0fun(xb, yb);
}

double erf(double x) {
  double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  double result;
  if (ax < 3.0) {
    // All-positive series erf(x) = (2/sqrt(pi)) e^{-x^2} sum 2^n x^{2n+1} /
    // (1*3*...*(2n+1)); no cancellation.
    double term = ax;
    double sum = ax;
    for (int n = 1; n < 200; ++n) {
      term *= 2.0 * ax * ax / (2.0 * n + 1.0);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    result = kTwoOverSqrtPi * std::exp(-ax * ax) * sum;
  } else {
    // erfc(x) = e^{-x^2}/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
    // partial numerators a_n = n/2, evaluated by modified Lentz.
    double c = 1e300;
    double d = 1.0 / ax;
    double h = d;
    for (int n = 1; n < 300; ++n) {
      double an = 0.5 * n;
      d = ax + an * d;
      if (std::abs(d) < 1e-300) d = 1e-300;
      d = 1.0 / d;
      c = ax + an / c;
      if (std::abs(c) < 1e-300) c = 1e-300;
      double delta = c * d;
      h *= delta;
      if (std::abs(delta - 1.0) < 1e-17) break;
    }
    double erfc = std::exp(-ax * ax) / std::sqrt(kPi) * h;
    result = 1.0 - erfc;
  }
  return x < 0.0 ? -result : result;
}

double l2_error_2d(const Grid2D& g, const Field2D& a, const Field2D& b) {
  if (a.n != b.n || a.n != g.n) throw std::invalid_argument("grid mismatch");
  double sum = 0.0;
  for (size_t i = 0; i < a.v.size(); ++i) {
    double d = a.v[i] - b.v[i];
    sum += d * d;
  }
  return std::sqrt(sum * g.dx() * g.dx());
}

double linf_error_2d(const Field2D& a, const Field2D& b) {
  if (a.n != b.n) throw std::invalid_argument("grid mismatch");
  double m = 0.0;
  for (size_t i = 0; i < a.v.size(); ++i)
    m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

Field2D sample_ic_2d(const Grid2D& g,
                     const std::function<double(double, double)>& f) {
  Field2D u = Field2D::zero(g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) u.at(i, j) = f(g.x(j), g.y(i));
  return u;
}

}  // namespace dispfd
