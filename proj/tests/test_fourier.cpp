#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "dispfd/fourier.hpp"
#include "doctest.h"

using namespace dispfd;
using std::numbers::pi;

namespace {
std::vector<double> random_field(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> u(n);
  for (double& v : u) v = d(rng);
  return u;
}
}  // namespace

TEST_SUITE("fourier") {
  TEST_CASE("index layout") {
    Spectrum s;
    s.n = 8;
    s.coeff.resize(8);
    CHECK(s.kprime_min() == -3);
    CHECK(s.kprime_max() == 4);
    CHECK(s.kprime_of(0) == -3);
    CHECK(s.kprime_of(7) == 4);
    CHECK(&s.at(-3) == &s.coeff[0]);
    CHECK(&s.at(4) == &s.coeff[7]);
  }

  TEST_CASE("a single mode lands in its own bin") {
    for (int n : {64, 50}) {  // FFT path and direct path
      for (int kp : {1, -3, n / 2}) {
        std::vector<double> u(n);
        for (int j = 1; j <= n; ++j)
          u[j - 1] = std::cos(2 * pi * kp * j / double(n));
        auto s = dft(std::span<const double>(u));
        // cos splits between +kp and -kp; n/2 keeps full weight.
        double expect = (kp == n / 2 || kp == -n / 2 + 1) ? 1.0 : 0.5;
        CHECK(std::abs(s.at(kp) - std::complex<double>(expect, 0.0)) < 1e-12);
        double rest = 0;
        for (int i = 0; i < n; ++i) {
          int k = s.kprime_of(i);
          if (k == kp || k == -kp) continue;
          rest = std::max(rest, std::abs(s.coeff[i]));
        }
        CHECK(rest < 1e-12);
      }
    }
  }

  TEST_CASE("round trip to 1e-13") {
    for (int n : {8, 50, 64, 127, 256}) {
      auto u = random_field(n, 17 + n);
      auto s = dft(std::span<const double>(u));
      auto back = idft(s);
      double err = 0;
      for (int i = 0; i < n; ++i)
        err = std::max(err, std::abs(back[i] - u[i]));
      CHECK(err < 1e-13);
    }
  }

  TEST_CASE("Parseval with the 1/N normalization") {
    int n = 128;
    auto u = random_field(n, 5);
    auto s = dft(std::span<const double>(u));
    double lhs = 0, rhs = 0;
    for (double v : u) lhs += v * v;
    for (auto& c : s.coeff) rhs += std::norm(c);
    CHECK(lhs / n == doctest::Approx(rhs).epsilon(1e-12));
  }

  TEST_CASE("complex forward agrees with the direct sum") {
    int n = 32;
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<std::complex<double>> u(n);
    for (auto& z : u) z = {d(rng), d(rng)};
    auto s = dft(std::span<const std::complex<double>>(u));
    for (int kp = s.kprime_min(); kp <= s.kprime_max(); ++kp) {
      std::complex<double> want = 0;
      for (int j = 1; j <= n; ++j)
        want += u[j - 1] *
                std::exp(std::complex<double>(0.0, -2 * pi * kp * j / n));
      want /= double(n);
      CHECK(std::abs(s.at(kp) - want) < 1e-12);
    }
  }
}
