#include <cmath>
#include <numbers>
#include <vector>

#include "dispfd/transport1d.hpp"
#include "dispfd/transport2d.hpp"
#include "doctest.h"

using namespace dispfd;
using std::numbers::pi;

TEST_SUITE("transport2d") {
  TEST_CASE("grid and field layout") {
    Grid2D g{4, 1.0, -0.5};
    CHECK(g.dx() == 0.25);
    CHECK(g.x(0) == doctest::Approx(-0.25));
    CHECK(g.y(3) == doctest::Approx(0.5));
    auto f = Field2D::zero(4);
    f.at(1, 2) = 7.0;
    CHECK(f.v[1 * 4 + 2] == 7.0);
  }

  TEST_CASE("directional derivatives act along the right axis") {
    Grid2D g{32, 1.0, 0.0};
    CompactDerivative d(unopt10th(), g.n, g.dx());
    Field2D u{g.n, std::vector<double>(g.n * g.n)};
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        u.at(i, j) = std::sin(2 * pi * g.x(j)) * std::cos(4 * pi * g.y(i));
    auto ux = deriv_x(d, u);
    auto uy = deriv_y(d, u);
    double ex = 0, ey = 0;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        ex = std::max(ex, std::abs(ux.at(i, j) -
                                   2 * pi * std::cos(2 * pi * g.x(j)) *
                                       std::cos(4 * pi * g.y(i))));
        ey = std::max(ey, std::abs(uy.at(i, j) +
                                   4 * pi * std::sin(2 * pi * g.x(j)) *
                                       std::sin(4 * pi * g.y(i))));
      }
    CHECK(ex < 1e-7);
    CHECK(ey < 1e-6);
  }

  TEST_CASE("x and y derivatives commute") {
    Grid2D g{24, 1.0, 0.0};
    CompactDerivative d(kll2nd(), g.n, g.dx());
    Field2D u{g.n, std::vector<double>(g.n * g.n)};
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        u.at(i, j) = std::exp(std::sin(2 * pi * g.x(j)) +
                              std::cos(2 * pi * g.y(i)));
    auto a = deriv_y(d, deriv_x(d, u));
    auto b = deriv_x(d, deriv_y(d, u));
    double err = 0;
    for (size_t m = 0; m < a.v.size(); ++m)
      err = std::max(err, std::abs(a.v[m] - b.v[m]));
    CHECK(err < 1e-10);
  }

  TEST_CASE("2d phase error splits directionally") {
    double dx = 1.0 / 50;
    double kx = 2 * pi * 5, ky = 2 * pi * 3, cx = 0.7, cy = -0.4, T = 0.6;
    double want =
        (cx * (kappa_star_signed(cd4(), kx * dx) / dx - kx) +
         cy * (kappa_star_signed(cd4(), ky * dx) / dx - ky)) * T;
    CHECK(phase_error_2d(cd4(), kx, ky, cx, cy, dx, T) ==
          doctest::Approx(want).epsilon(1e-12));
  }

  TEST_CASE("error function reference values") {
    CHECK(dispfd::erf(0.0) == 0.0);
    // Values cross-checked against the standard library implementation.
    for (double x = -6.0; x <= 6.0; x += 0.173)
      CHECK(std::abs(dispfd::erf(x) - std::erf(x)) < 1e-12);
    CHECK(dispfd::erf(1.0) == doctest::Approx(0.8427007929497149).epsilon(1e-13));
    CHECK(dispfd::erf(-2.0) == doctest::Approx(-0.9953222650189527).epsilon(1e-13));
    CHECK(dispfd::erf(8.0) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("disk profile structure") {
    // Center of the smoothed bump: 1. Outside it: 0.
    CHECK(zalesak_ic(0.0, 1.0 / 12.0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(zalesak_ic(0.45, 0.45) < 1e-6);
    CHECK(zalesak_ic(-0.3, -0.3) < 1e-3);
    // Rotational sampling stays within [0, 1] up to smoothing.
    for (double x = -0.5; x <= 0.5; x += 0.09)
      for (double y = -0.5; y <= 0.5; y += 0.09) {
        double v = zalesak_ic(x, y);
        CHECK(v > -1e-9);
        CHECK(v < 1.0 + 1e-9);
      }
  }

  TEST_CASE("exact rotation returns after a full turn") {
    auto u0 = [](double x, double y) { return x + 2 * y + x * y; };
    for (double x : {-0.2, 0.3})
      for (double y : {-0.4, 0.1}) {
        CHECK(exact_rotation(u0, x, y, 1.0) ==
              doctest::Approx(u0(x, y)).epsilon(1e-12));
        // Quarter turn: the flow is clockwise, so the value at (x, y) came
        // from the point a quarter turn counterclockwise.
        CHECK(exact_rotation(u0, x, y, 0.25) ==
              doctest::Approx(u0(-y, x)).epsilon(1e-12));
      }
  }

  TEST_CASE("short rotation run follows the characteristics") {
    Grid2D g{64, 1.0, -0.5};
    // Narrow enough that the periodic wrap the solver sees and the
    // free-space characteristic oracle agree to roundoff at the edges.
    auto smooth = [](double x, double y) {
      return std::exp(-150.0 * (x * x + (y - 0.15) * (y - 0.15)));
    };
    auto u0 = sample_ic_2d(g, smooth);
    auto res = solve_rotation(unopt10th(), RKScheme::rk8(), g, u0, 0.05, 0.2);
    Field2D exact{g.n, std::vector<double>(g.n * g.n)};
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        exact.at(i, j) = exact_rotation(smooth, g.x(j), g.y(i), 0.05);
    CHECK(l2_error_2d(g, res.u, exact) < 1e-4);
    CHECK(res.steps * res.dt == doctest::Approx(0.05).epsilon(1e-13));
  }

  TEST_CASE("2d error norms") {
    Grid2D g{2, 1.0, 0.0};
    Field2D a{2, {0, 0, 0, 0}}, b{2, {1, 0, 0, 2}};
    CHECK(linf_error_2d(a, b) == 2.0);
    CHECK(l2_error_2d(g, a, b) ==
          doctest::Approx(std::sqrt(5.0 * 0.25)).epsilon(1e-13));
  }
}
