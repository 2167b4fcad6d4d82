// 2D periodic transport on square tensor grids: directional compact
// derivatives, the rotating-disk benchmark, and the 2D phase error.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dispfd/rk.hpp"
#include "dispfd/scheme.hpp"

namespace dispfd {

// Square periodic grid, dx = dy = ell / n. x and y run over
// origin + (m+1) dx, m = 0..n-1.
struct Grid2D {
  int n = 0;
  double ell = 1.0;
  double origin = 0.0;

  double dx() const { return ell / n; }
  double x(int j) const { return origin + (j + 1) * dx(); }
  double y(int i) const { return origin + (i + 1) * dx(); }
};

// Row-major n x n values; entry (i, j) = u(x_j, y_i): the row index varies
// y, the column index varies x.
struct Field2D {
  int n = 0;
  std::vector<double> v;

  static Field2D zero(int n) { return {n, std::vector<double>(n * n, 0.0)}; }
  double& at(int i, int j) { return v[i * n + j]; }
  double at(int i, int j) const { return v[i * n + j]; }
};

// Compact derivative along every row (x) or column (y), one shared
// factorization.
Field2D deriv_x(const CompactDerivative& d, const Field2D& u);
Field2D deriv_y(const CompactDerivative& d, const Field2D& u);

// theta_e = (c_x (k_x* - k_x) + c_y (k_y* - k_y)) T, the exact-time limit.
double phase_error_2d(const InteriorScheme& s, double kx, double ky,
                      double cx, double cy, double dx, double T);

struct RunResult2D {
  Field2D u;
  int steps = 0;
  double dt = 0.0;
};

// Per-step history callback: (time, field).
using HistoryFn2D = std::function<void(double, const Field2D&)>;

// Solid rotation dU/dt = -(c_x deriv_x + c_y deriv_y) U with c_x = 2 pi y,
// c_y = -2 pi x on [-1/2, 1/2]^2; dt = r dx / max(|c_x|, |c_y|), shrunk to
// land exactly on T.
RunResult2D solve_rotation(const InteriorScheme& s, const RKScheme& rk,
                           const Grid2D& g, const Field2D& u0, double T,
                           double r, const HistoryFn2D& history = nullptr);

// Smoothed disk-with-hump profile on [-1/2, 1/2]^2.
double zalesak_ic(double x, double y);

// u0 evaluated at the point back-rotated by the angle 2 pi t.
double exact_rotation(const std::function<double(double, double)>& u0fun,
                      double x, double y, double t);

// Error function to absolute accuracy 1e-12.
double erf(double x);

double l2_error_2d(const Grid2D& g, const Field2D& a, const Field2D& b);
double linf_error_2d(const Field2D& a, const Field2D& b);

Field2D sample_ic_2d(const Grid2D& g,
                     const std::function<double(double, double)>& f);

}  // namespace dispfd
