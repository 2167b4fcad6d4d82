#include <cmath>
#include <numbers>
#include <vector>

#include "dispfd/dispersion.hpp"
#include "dispfd/transport1d.hpp"
#include "doctest.h"

using namespace dispfd;
using std::numbers::pi;

TEST_SUITE("dispersion") {
  TEST_CASE("profile sampling") {
    auto ks = default_kappa_samples();
    REQUIRE(ks.size() == 2048);
    CHECK(ks.back() == doctest::Approx(pi).epsilon(1e-15));
    auto p = profile(cd4(), ks);
    REQUIRE(p.kappa.size() == ks.size());
    for (size_t i = 0; i < ks.size(); ++i) {
      double want = (4.0 / 3.0) * std::sin(ks[i]) -
                    (1.0 / 6.0) * std::sin(2 * ks[i]);
      CHECK(p.kappa_star[i] == doctest::Approx(want).epsilon(1e-13));
      CHECK(p.abs_err[i] ==
            doctest::Approx(std::abs(want - ks[i])).epsilon(1e-12));
    }
    std::vector<double> bad{0.5, 0.4};
    CHECK_THROWS((void)profile(cd4(), bad));
  }

  TEST_CASE("leading error fit recovers known Taylor coefficients") {
    // CD4: kappa* - kappa = -(1/30) kappa^5 + O(kappa^7).
    auto f4 = leading_error_fit(cd4(), 0.1);
    CHECK(f4.order == 4);
    CHECK(f4.coefficient == doctest::Approx(-1.0 / 30.0).epsilon(1e-6));
    CHECK_FALSE(f4.degenerate);
    CHECK(f4.gamma > 0.1);

    // For the tenth-order scheme the true coefficient (~ -1.7e-6 times
    // kappa^11) sits below double-precision roundoff at every sample, so
    // the fit may only report the order and declare itself degenerate.
    auto f10 = leading_error_fit(unopt10th(), 0.1);
    CHECK(f10.order == 10);

    auto f2 = leading_error_fit(opt2nd1p8(), 0.1);
    CHECK(f2.order == 2);
  }

  TEST_CASE("gamma grows as the tolerance loosens") {
    auto tight = leading_error_fit(cd4(), 0.02);
    auto loose = leading_error_fit(cd4(), 0.5);
    CHECK(tight.gamma < loose.gamma);
    CHECK(tight.eps_gamma == 0.02);
  }

  TEST_CASE("resolving limits: frozen oracle values at one percent") {
    CHECK(resolving_limit(cd4(), 0.01) ==
          doctest::Approx(0.7526710550675932).epsilon(1e-3));
    CHECK(resolving_limit(unopt10th(), 0.01) ==
          doctest::Approx(2.1418653603115163).epsilon(1e-3));
    CHECK(resolving_limit(kll2nd(), 0.01) ==
          doctest::Approx(2.546160833166715).epsilon(1e-3));
    // Tighter tolerance shrinks the limit.
    CHECK(resolving_limit(kll2nd(), 1e-4) < resolving_limit(kll2nd(), 0.01));
  }

  TEST_CASE("group velocity ratio of the fourth-order explicit stencil") {
    // d(kappa*)/d(kappa) = (4/3) cos(kappa) - (1/3) cos(2 kappa).
    CHECK(group_velocity_ratio(cd4(), pi) ==
          doctest::Approx(-5.0 / 3.0).epsilon(1e-12));
    CHECK(group_velocity_ratio(cd4(), 1e-4) ==
          doctest::Approx(1.0).epsilon(1e-7));
  }

  TEST_CASE("phase error closed form") {
    double k = 2 * pi * 10, dx = 1.0 / 64, c = 1.3, T = 0.7;
    double kap = k * dx;
    double want = c * k * T * (kappa_star(cd4(), kap) - kap) / kap;
    CHECK(phase_error(cd4(), k, dx, c, T) ==
          doctest::Approx(want).epsilon(1e-13));
  }

  TEST_CASE("full phase error degenerates to the semi-discrete one") {
    auto rk = RKScheme::rk8();
    double k = 2 * pi * 8, dx = 1.0 / 64, c = 1.0, T = 1.0;
    double semi = phase_error(cd4(), k, dx, c, T);
    CHECK(phase_error_full(cd4(), rk, k, dx, c, 0.0, T) ==
          doctest::Approx(semi).epsilon(1e-13));
    // A small dt adds only a tiny temporal contribution.
    double full = phase_error_full(cd4(), rk, k, dx, c, 1e-3 * dx, T);
    CHECK(std::abs(full - semi) < 1e-8 * std::abs(semi) + 1e-12);
  }

  TEST_CASE("l2 predictor is exact for a single resolved plane wave") {
    int n = 128;
    Grid1D g{n, 1.0};
    double c = 1.0, T = 0.25;
    int kp = 4;
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = std::cos(2 * pi * kp * g.x(i));
    auto spec = dft(std::span<const double>(u));
    auto pred = predict_l2_error(kll2nd(), spec, c, T, g.dx());
    // Semi-discrete truth: the mode rotates by the wrong angle.
    double k = 2 * pi * kp, kap = k * g.dx();
    double dphi = c * k * T * (kappa_star(kll2nd(), kap) - kap) / kap;
    std::vector<double> exact(n), num(n);
    for (int i = 0; i < n; ++i) {
      exact[i] = std::cos(k * (g.x(i) - c * T));
      num[i] = std::cos(k * g.x(i) - (c * k * T + dphi));
    }
    double truth = l2_error(g, num, exact);
    CHECK(pred.value == doctest::Approx(truth).epsilon(1e-6));
    CHECK(pred.regime_valid);
  }

  TEST_CASE("predictor flags the large-error regime") {
    int n = 128;
    Grid1D g{n, 1.0};
    std::vector<double> u(n);
    int kp = 20;  // kappa ~ 0.98: badly resolved by CD4
    for (int i = 0; i < n; ++i) u[i] = std::cos(2 * pi * kp * g.x(i));
    auto spec = dft(std::span<const double>(u));
    auto pred = predict_l2_error(cd4(), spec, 1.0, 1.0, g.dx());
    CHECK(pred.max_theta_e > 0.1);
    CHECK_FALSE(pred.regime_valid);
  }
}
