#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dispfd/scheme.hpp"
#include "dispfd/transport1d.hpp"
#include "doctest.h"

using namespace dispfd;
using std::numbers::pi;

TEST_SUITE("scheme") {
  TEST_CASE("catalog coefficients") {
    auto cat = SchemeCatalog::builtin();
    CHECK(cat.names().size() == 5);
    const auto& u = cat.get("UNOPT10TH");
    CHECK(u.a == 17.0 / 12.0);
    CHECK(u.alpha == 0.5);
    CHECK(u.b == 101.0 / 150.0);
    CHECK(u.beta == 1.0 / 20.0);
    CHECK(u.c == 1.0 / 100.0);
    CHECK_FALSE(u.augmented());
    const auto& k = cat.get("KLL2ND");
    CHECK(k.a == 1.271681048997683);
    CHECK(k.d == 0.01957068852632900805);
    CHECK(k.augmented());
    CHECK(k.gamma_opt.value() == 2.0);
    const auto& c4 = cat.get("CD4");
    CHECK(c4.a == 4.0 / 3.0);
    CHECK(c4.b == -1.0 / 3.0);
    CHECK(c4.alpha == 0.0);
    CHECK(cat.get("OPT2ND1P5").gamma_opt.value() == 1.5);
    CHECK(cat.get("OPT2ND1P8").gamma_opt.value() == 1.8);
    CHECK_THROWS((void)cat.get("NOPE"));
  }

  TEST_CASE("kappa_star frozen values") {
    CHECK(kappa_star(unopt10th(), 1.0) ==
          doctest::Approx(0.9999978692397186).epsilon(1e-14));
    CHECK(kappa_star(unopt10th(), 2.0) ==
          doctest::Approx(1.9912673013078077).epsilon(1e-14));
    CHECK(kappa_star(kll2nd(), 1.5) ==
          doctest::Approx(1.5000007169831568).epsilon(1e-14));
    CHECK(kappa_star(cd4(), pi / 2) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    // CD4 closed form holds everywhere.
    for (double k = 0.1; k < pi; k += 0.37) {
      double want = (4.0 / 3.0) * std::sin(k) - (1.0 / 6.0) * std::sin(2 * k);
      CHECK(kappa_star(cd4(), k) == doctest::Approx(want).epsilon(1e-14));
    }
  }

  TEST_CASE("kappa_star_signed is odd") {
    for (const auto& s : {unopt10th(), kll2nd(), cd4()})
      for (double k : {0.3, 1.1, 2.5})
        CHECK(kappa_star_signed(s, -k) ==
              doctest::Approx(-kappa_star_signed(s, k)).epsilon(1e-14));
  }

  TEST_CASE("kappa_star_derivative matches central differences") {
    for (const auto& s : {unopt10th(), kll2nd(), opt2nd1p8()}) {
      for (double k : {0.2, 1.0, 2.0}) {
        double h = 1e-6;
        double fd = (kappa_star(s, k + h) - kappa_star(s, k - h)) / (2 * h);
        CHECK(kappa_star_derivative(s, k) ==
              doctest::Approx(fd).epsilon(1e-7));
      }
    }
  }

  TEST_CASE("order residual pattern identifies each scheme") {
    auto r10 = order_residuals(unopt10th());
    for (double r : r10) CHECK(std::abs(r) < 1e-12);
    CHECK(formal_order(unopt10th()) == 10);

    auto r4 = order_residuals(cd4());
    CHECK(std::abs(r4[0]) < 1e-14);
    CHECK(std::abs(r4[1]) < 1e-14);
    CHECK(std::abs(r4[2]) > 1e-3);
    CHECK(formal_order(cd4()) == 4);

    auto r2 = order_residuals(opt2nd1p5());
    CHECK(std::abs(r2[0]) < 1e-12);
    CHECK(std::abs(r2[1]) > 1e-5);
    CHECK(formal_order(opt2nd1p5()) == 2);
    CHECK(formal_order(opt2nd1p8()) == 2);

    CHECK(consistency_residual(kll2nd()) < 1e-12);
    CHECK(formal_order(kll2nd()) == 2);
  }

  TEST_CASE("pole reported when the implicit denominator vanishes") {
    InteriorScheme s;  // alpha = -1/2 has a pole at kappa = 0... use cos
    s.name = "pole";
    s.alpha = 0.5;
    s.a = 1.5;
    CHECK_THROWS_AS((void)kappa_star(s, pi), PoleError);
  }

  TEST_CASE("cyclic operators satisfy the plane-wave eigenrelation") {
    for (int n : {32, 64, 128}) {
      Grid1D g{n, 1.0};
      double dx = g.dx();
      for (const auto& s : {unopt10th(), kll2nd(), cd4()}) {
        CompactDerivative deriv(s, n, dx);
        for (int kp : {1, 3, n / 4}) {
          double k = 2 * pi * kp;
          std::vector<std::complex<double>> u(n);
          for (int i = 0; i < n; ++i)
            u[i] = std::exp(std::complex<double>(0.0, k * g.x(i)));
          auto up = deriv(std::span<const std::complex<double>>(u));
          double kstar = kappa_star(s, k * dx) / dx;
          double err = 0;
          for (int i = 0; i < n; ++i) {
            auto want = std::complex<double>(0.0, kstar) * u[i];
            err = std::max(err, std::abs(up[i] - want));
          }
          CHECK(err < 1e-9 * kstar);
        }
      }
    }
  }

  TEST_CASE("derivative is exact on constants") {
    Grid1D g{40, 1.0};
    CompactDerivative deriv(kll2nd(), g.n, g.dx());
    std::vector<double> u(g.n, 3.25);
    auto up = deriv(std::span<const double>(u));
    for (double v : up) CHECK(std::abs(v) < 1e-11);
  }
}
