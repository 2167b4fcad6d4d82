#include "dispfd/scheme.hpp"

#include <cmath>
#include <stdexcept>

namespace dispfd {

double kappa_star(const InteriorScheme& s, double kappa) {
  double den = 1.0 + 2.0 * s.alpha * std::cos(kappa) +
               2.0 * s.beta * std::cos(2.0 * kappa);
  if (std::abs(den) < 1e-12)
    throw PoleError("kappa_star: implicit denominator vanishes");
  double num = s.a * std::sin(kappa) + (s.b / 2.0) * std::sin(2.0 * kappa) +
               (s.c / 3.0) * std::sin(3.0 * kappa);
  double aug = s.d * std::sin(kappa) + (s.e / 2.0) * std::sin(2.0 * kappa) +
               (s.f / 3.0) * std::sin(3.0 * kappa);
  return num / den + aug;
}

double kappa_star_derivative(const InteriorScheme& s, double kappa) {
  double den = 1.0 + 2.0 * s.alpha * std::cos(kappa) +
               2.0 * s.beta * std::cos(2.0 * kappa);
  if (std::abs(den) < 1e-12)
    throw PoleError("kappa_star_derivative: implicit denominator vanishes");
  double num = s.a * std::sin(kappa) + (s.b / 2.0) * std::sin(2.0 * kappa) +
               (s.c / 3.0) * std::sin(3.0 * kappa);
  double dnum = s.a * std::cos(kappa) + s.b * std::cos(2.0 * kappa) +
                s.c * std::cos(3.0 * kappa);
  double dden = -2.0 * s.alpha * std::sin(kappa) -
                4.0 * s.beta * std::sin(2.0 * kappa);
  double daug = s.d * std::cos(kappa) + s.e * std::cos(2.0 * kappa) +
                s.f * std::cos(3.0 * kappa);
  return (dnum * den - num * dden) / (den * den) + daug;
}

std::array<double, 5> order_residuals(const InteriorScheme& s) {
  std::array<double, 5> r{};
  r[0] = std::abs((s.a + s.b + s.c) - (1.0 + 2.0 * s.alpha + 2.0 * s.beta));
  r[1] = std::abs((s.a + 4.0 * s.b + 9.0 * s.c) -
                  2.0 * 3.0 * (s.alpha + 4.0 * s.beta));
  r[2] = std::abs((s.a + 16.0 * s.b + 81.0 * s.c) -
                  2.0 * 5.0 * (s.alpha + 16.0 * s.beta));
  r[3] = std::abs((s.a + 64.0 * s.b + 729.0 * s.c) -
                  2.0 * 7.0 * (s.alpha + 64.0 * s.beta));
  r[4] = std::abs((s.a + 256.0 * s.b + 6561.0 * s.c) -
                  2.0 * 9.0 * (s.alpha + 256.0 * s.beta));
  return r;
}

double consistency_residual(const InteriorScheme& s) {
  double den = 1.0 + 2.0 * s.alpha + 2.0 * s.beta;
  return std::abs((s.a + s.b + s.c) / den + (s.d + s.e + s.f) - 1.0);
}

int formal_order(const InteriorScheme& s) {
  constexpr double tol = 1e-9;
  if (s.augmented()) return consistency_residual(s) < tol ? 2 : 0;
  auto r = order_residuals(s);
  int m = 0;
  while (m < 5 && r[m] < tol) ++m;
  return 2 * m;
}

Operators1D build_operators(const InteriorScheme& s, int n, double dx) {
  if (n < 8) throw std::invalid_argument("build_operators: need n >= 8");
  CyclicBandedMatrix L(n, 2), R(n, 3), Rt(n, 3);
  for (int i = 0; i < n; ++i) {
    L.at(i, -2) = s.beta;
    L.at(i, -1) = s.alpha;
    L.at(i, 0) = 1.0;
    L.at(i, 1) = s.alpha;
    L.at(i, 2) = s.beta;

    R.at(i, 1) = s.a / (2.0 * dx);
    R.at(i, -1) = -s.a / (2.0 * dx);
    R.at(i, 2) = s.b / (4.0 * dx);
    R.at(i, -2) = -s.b / (4.0 * dx);
    R.at(i, 3) = s.c / (6.0 * dx);
    R.at(i, -3) = -s.c / (6.0 * dx);

    Rt.at(i, 1) = s.d / (2.0 * dx);
    Rt.at(i, -1) = -s.d / (2.0 * dx);
    Rt.at(i, 2) = s.e / (4.0 * dx);
    Rt.at(i, -2) = -s.e / (4.0 * dx);
    Rt.at(i, 3) = s.f / (6.0 * dx);
    Rt.at(i, -3) = -s.f / (6.0 * dx);
  }
  return Operators1D{std::move(L), std::move(R), std::move(Rt)};
}

CompactDerivative::CompactDerivative(const InteriorScheme& s, int n, double dx)
    : scheme_(s), n_(n), dx_(dx), ops_(build_operators(s, n, dx)) {}

template <class T>
std::vector<T> CompactDerivative::operator()(std::span<const T> u) const {
  // U' = L^{-1} R U + R~ U
  std::vector<T> ru = ops_.R.apply(u);
  std::vector<T> up = ops_.L.solve(std::span<const T>(ru));
  if (scheme_.augmented()) {
    std::vector<T> w = ops_.Rt.apply(u);
    for (int i = 0; i < n_; ++i) up[i] += w[i];
  }
  return up;
}

template std::vector<double> CompactDerivative::operator()(
    std::span<const double>) const;
template cvec CompactDerivative::operator()(
    std::span<const std::complex<double>>) const;

InteriorScheme unopt10th() {
  InteriorScheme s;
  s.name = "UNOPT10TH";
  s.a = 17.0 / 12.0;
  s.alpha = 0.5;
  s.b = 101.0 / 150.0;
  s.beta = 1.0 / 20.0;
  s.c = 1.0 / 100.0;
  return s;
}

InteriorScheme opt2nd1p5() {
  InteriorScheme s;
  s.name = "OPT2ND1P5";
  s.a = 1.382433766621239;
  s.alpha = 0.5267276883269482;
  s.b = 0.7782394862770302;
  s.beta = 0.06166491031289359;
  s.c = 0.01611194438141422;
  s.gamma_opt = 1.5;
  return s;
}

InteriorScheme opt2nd1p8() {
  InteriorScheme s;
  s.name = "OPT2ND1P8";
  s.a = 1.361203029457461;
  s.alpha = 0.5412576434842603;
  s.b = 0.8382608566836231;
  s.beta = 0.06893488676613146;
  s.c = 0.02092117435969928;
  s.gamma_opt = 1.8;
  return s;
}

InteriorScheme kll2nd() {
  InteriorScheme s;
  s.name = "KLL2ND";
  s.a = 1.271681048997683;
  s.d = 0.01957068852632900805;
  s.b = 1.0324635517800887;
  s.e = -0.024173863453322705888322;
  s.c = 0.0710624871538077965;
  s.f = 0.001112355198712081607526;
  s.alpha = 0.585636483962933;
  s.beta = 0.09783577170489735;
  s.gamma_opt = 2.0;
  return s;
}

InteriorScheme cd4() {
  InteriorScheme s;
  s.name = "CD4";
  s.a = 4.0 / 3.0;
  s.b = -1.0 / 3.0;
  return s;
}

SchemeCatalog SchemeCatalog::builtin() {
  SchemeCatalog cat;
  cat.add(unopt10th());
  cat.add(opt2nd1p5());
  cat.add(opt2nd1p8());
  cat.add(kll2nd());
  cat.add(cd4());
  return cat;
}

const InteriorScheme& SchemeCatalog::get(const std::string& name) const {
  auto it = schemes_.find(name);
  if (it == schemes_.end())
    throw std::invalid_argument("unknown scheme: " + name);
  return it->second;
}

bool SchemeCatalog::contains(const std::string& name) const {
  return schemes_.count(name) != 0;
}

void SchemeCatalog::add(InteriorScheme s) {
  std::string key = s.name;
  schemes_.insert_or_assign(std::move(key), std::move(s));
}

std::vector<std::string> SchemeCatalog::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : schemes_) out.push_back(k);
  return out;
}

}  // namespace dispfd
