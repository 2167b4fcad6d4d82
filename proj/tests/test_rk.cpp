#include <cmath>
#include <complex>
#include <vector>

#include "dispfd/rk.hpp"
#include "doctest.h"

using namespace dispfd;

TEST_SUITE("rk") {
  TEST_CASE("classical polynomial gives harmonic stage weights") {
    auto rk = RKScheme::rk8();
    REQUIRE(rk.stages == 8);
    REQUIRE(rk.w.size() == 8);
    // w_i = 1 / (9 - i), i = 1..8.
    for (int i = 1; i <= 8; ++i)
      CHECK(rk.w[i - 1] == doctest::Approx(1.0 / (9 - i)).epsilon(1e-15));
    for (int m = 0; m <= 8; ++m) {
      CHECK(rk.a[m] == doctest::Approx(1.0 / std::tgamma(m + 1.0))
                           .epsilon(1e-15));
    }
  }

  TEST_CASE("stage weights reconstruct the polynomial") {
    std::vector<double> a{1.0, 1.0, 0.5, 0.16, 0.04};
    auto rk = RKScheme::from_polynomial(a);
    // Horner in the weights: P(z) = 1 + z w_M (1 + z w_{M-1} (...)).
    std::complex<double> z{0.3, -0.2};
    std::complex<double> p = 1.0;
    for (int i = 0; i < rk.stages; ++i) p = 1.0 + z * rk.w[i] * p;
    std::complex<double> want = 0.0;
    for (int m = (int)a.size() - 1; m >= 0; --m) want = want * z + a[m];
    CHECK(std::abs(p - want) < 1e-14);
  }

  TEST_CASE("from_polynomial validates input") {
    CHECK_THROWS((void)RKScheme::from_polynomial({2.0, 1.0}));
    CHECK_THROWS((void)RKScheme::from_polynomial({1.0, 0.0, 0.5}));
  }

  TEST_CASE("one step of the two-storage form applies the polynomial") {
    auto rk = RKScheme::rk8();
    double lambda = -0.7;
    std::vector<double> u{1.0};
    std::vector<double> stage, k;
    auto rhs = [&](std::span<const double> in, std::span<double> out) {
      out[0] = lambda * in[0];
    };
    double dt = 0.31;
    rk_step(rk, rhs, u, dt, stage, k);
    double z = lambda * dt, want = 0.0;
    for (int m = 8; m >= 0; --m) want = want * z + rk.a[m];
    CHECK(u[0] == doctest::Approx(want).epsilon(1e-14));
  }

  TEST_CASE("numerical frequency matches the exact one for small z") {
    auto rk = RKScheme::rk8();
    for (double z : {0.01, 0.05, 0.2}) {
      auto w = numerical_frequency(rk, z);
      CHECK(std::abs(w.real() - z) < 1e-9 * z + 1e-14);
      CHECK(std::abs(w.imag()) < 1e-9);
    }
  }

  TEST_CASE("temporal frequency error scales with the ninth power") {
    auto rk = RKScheme::rk8();
    // log-log slope over z in [0.2, 0.4]: large enough for the z^9 tail to
    // clear double-precision roundoff in the direct evaluation.
    double z1 = 0.2, z2 = 0.4;
    double e1 = std::abs(numerical_frequency(rk, z1).real() - z1);
    double e2 = std::abs(numerical_frequency(rk, z2).real() - z2);
    double slope = std::log(e2 / e1) / std::log(z2 / z1);
    CHECK(slope == doctest::Approx(9.0).epsilon(0.05));
  }

  TEST_CASE("forward Euler stability limit on a dispersive symbol is tiny") {
    auto euler = RKScheme::forward_euler();
    auto rk8 = RKScheme::rk8();
    InteriorScheme cd2;
    cd2.name = "CD2";
    cd2.a = 1.0;
    double r_euler = max_stable_cfl(euler, cd2);
    double r8 = max_stable_cfl(rk8, cd2);
    CHECK(r_euler < 1e-3);  // purely imaginary eigenvalues: unstable
    CHECK(r8 > 1.0);
  }
}
