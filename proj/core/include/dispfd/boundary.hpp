// Non-periodic outflow machinery: one-sided closure rows for the last
// three points, direct-coupled and buffer-zone composite operators, the
// outflow IBVP driver, and the per-point numerical-wavenumber diagnostic.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dispfd/rk.hpp"
#include "dispfd/scheme.hpp"
#include "dispfd/transport1d.hpp"

namespace dispfd {

// Closure rows for the last three points x_{N-2}, x_{N-1}, x_N of a grid
// x_j = j dx, j = 1..N, with U_j = U'_j = 0 assumed for j <= 0.
struct BoundaryRows {
  struct Row {
    int point_offset;  // row's point is j = N + point_offset
    // Implicit couplings (offset from the row's point, coefficient on U').
    std::vector<std::pair<int, double>> implicit;
    // expl[q] multiplies U_{N-q} / dx, q = 0..6.
    std::array<double, 7> expl;
  };
  std::array<Row, 3> rows;  // point offsets -2, -1, 0

  // Maximal-formal-order closure rows (exact fractions).
  static BoundaryRows maximal_order();
};

// Composite operator coupling a classical interior stencil directly to the
// closure rows; rows with out-of-domain points use the j <= 0 zeroing.
class DirectComposite {
 public:
  DirectComposite(const InteriorScheme& interior, const BoundaryRows& rows,
                  int n, double dx);

  int size() const { return n_; }
  double dx() const { return dx_; }
  const InteriorScheme& interior() const { return interior_; }

  template <class T>
  std::vector<T> derivative(std::span<const T> u) const;

  // Response to the plane wave e^{ikx} when the wave extends undisturbed past
  // the inflow edge: out-of-domain references take the analytic wave values
  // and the modal derivative i k* e^{ikx}. Isolates the effect of the
  // outflow closure rows; used by the wavenumber diagnostic.
  std::vector<std::complex<double>> plane_wave_response(double k) const;

 private:
  InteriorScheme interior_;
  int n_;
  double dx_;
  BandedMatrix lhs_;
  BandedMatrix rhs_;
};

// Buffer-zone composite for an augmented interior scheme: an m-point buffer
// at the right edge is closed with mirrored rows on its left, classical
// interior rows inside, and the closure rows on its right; the last five
// buffer derivatives then serve as the ansatz for the reduced interior
// system. Requires m >= 9 and n >= m + 12.
class BufferedComposite {
 public:
  BufferedComposite(const InteriorScheme& interior,
                    const InteriorScheme& buffer_interior,
                    const BoundaryRows& rows, int n, double dx, int m = 10);

  int size() const { return n_; }
  double dx() const { return dx_; }
  int buffer_width() const { return m_; }
  const InteriorScheme& interior() const { return interior_; }

  template <class T>
  std::vector<T> derivative(std::span<const T> u) const;

 private:
  InteriorScheme interior_;
  int n_;
  double dx_;
  int m_;
  // Dense LU (partial pivoting) of the buffer's implicit matrix.
  std::vector<double> buf_lu_;
  std::vector<int> buf_piv_;
  std::vector<double> buf_rhs_;  // m x m explicit matrix, row-major
  BandedMatrix reduced_;         // (n-5) x (n-5) implicit system
};

struct IbvpResult {
  std::vector<double> u;
  std::vector<double> times;
  std::vector<double> l2_hist;
  std::vector<double> linf_hist;
  int steps = 0;
  double dt = 0.0;
};

// u_t + c u_x = 0 on x_j = j dx, j = 1..N, inflow u(0, t) = 0, outflow on
// the right; exact comparison u0(x - ct) extended by zero. Aborts when the
// error exceeds 1e3 times the initial norm.
template <class Op>
IbvpResult solve_outflow_ibvp(const Op& op, const RKScheme& rk, double c,
                              const std::function<double(double)>& u0fun,
                              double T, double r, int history_stride = 1);

struct DeltaKProfile {
  double k = 0.0;
  double kstar = 0.0;  // periodic reference kappa*(k dx) / dx
  std::vector<double> x;
  std::vector<std::complex<double>> kj;  // -i (D e^{ikx})_j / e^{ikx_j}
  std::vector<std::complex<double>> dk;  // kj - kstar
};

DeltaKProfile delta_k(const DirectComposite& op, double k);
DeltaKProfile delta_k(const BufferedComposite& op, double k);
// Cyclic control case: dk vanishes to rounding.
DeltaKProfile delta_k(const InteriorScheme& s, double k, int n, double dx);

// Gaussian-modulated packet centered at x = 1/3 with carrier wavenumber k0.
double outflow_packet_ic(double x, double k0 = 255.0);

template <class Op>
IbvpResult solve_outflow_ibvp(const Op& op, const RKScheme& rk, double c,
                              const std::function<double(double)>& u0fun,
                              double T, double r, int history_stride) {
  if (!(c > 0.0)) throw std::invalid_argument("outflow requires c > 0");
  const int n = op.size();
  const double dx = op.dx();
  Grid1D g{n, n * dx};

  IbvpResult out;
  out.u.resize(n);
  for (int i = 0; i < n; ++i) out.u[i] = u0fun(g.x(i));
  if (T <= 0.0) return out;
  int steps = static_cast<int>(std::ceil(T * c / (r * dx) - 1e-12));
  double dt = T / steps;
  out.steps = steps;
  out.dt = dt;

  double norm0 = 0.0;
  for (double v : out.u) norm0 += v * v;
  norm0 = std::sqrt(norm0 * dx);

  auto rhs = [&](std::span<const double> u, std::span<double> res) {
    auto up = op.derivative(u);
    for (int i = 0; i < n; ++i) res[i] = -c * up[i];
  };
  auto record = [&](double t) {
    std::vector<double> exact(n);
    for (int i = 0; i < n; ++i) {
      double xi = g.x(i) - c * t;
      exact[i] = xi > 0.0 ? u0fun(xi) : 0.0;
    }
    double e2 = l2_error(g, out.u, exact);
    out.times.push_back(t);
    out.l2_hist.push_back(e2);
    out.linf_hist.push_back(linf_error(out.u, exact));
    if (!std::isfinite(e2) || e2 > 1e3 * std::max(norm0, 1e-300))
      throw std::runtime_error("outflow run unstable at t = " +
                               std::to_string(t));
  };

  std::vector<double> stage, k;
  record(0.0);
  for (int m = 0; m < steps; ++m) {
    rk_step(rk, rhs, out.u, dt, stage, k);
    if (m % history_stride == history_stride - 1 || m == steps - 1)
      record((m + 1) * dt);
  }
  return out;
}

}  // namespace dispfd
