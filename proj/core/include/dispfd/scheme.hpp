// Interior compact derivative schemes: coefficient sets, the resolution
// characteristic kappa -> kappa*, order-constraint residuals, and assembly
// of the cyclic operators L, R, R~ with L U' = R U + L R~ U.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dispfd/banded.hpp"

namespace dispfd {

struct InteriorScheme {
  std::string name;
  double alpha = 0.0;
  double beta = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  // Augmentation coefficients; zero for classical Pade schemes.
  double d = 0.0;
  double e = 0.0;
  double f = 0.0;
  // Integration limit used during optimization, when known.
  std::optional<double> gamma_opt;

  bool augmented() const { return d != 0.0 || e != 0.0 || f != 0.0; }
};

class PoleError : public std::runtime_error {
 public:
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Resolution characteristic kappa* at modified wavenumber kappa (radians).
// Throws PoleError if the implicit denominator magnitude drops below 1e-12.
double kappa_star(const InteriorScheme& s, double kappa);

// Analytic d(kappa*)/d(kappa) (quotient rule on the closed form). Equals the
// numerical-to-exact group velocity ratio in the exact-time limit.
double kappa_star_derivative(const InteriorScheme& s, double kappa);

// Residuals of the five classical order constraints (second through tenth
// order). Defined for classical (d = e = f = 0) schemes.
std::array<double, 5> order_residuals(const InteriorScheme& s);

// |(a+b+c)/(1+2 alpha+2 beta) + (d+e+f) - 1|: the generalized first
// constraint, valid for augmented schemes as well.
double consistency_residual(const InteriorScheme& s);

// Formal order 2m, m = number of leading order_residuals below 1e-9. For
// augmented schemes the consistency residual alone decides order 2 vs 0.
int formal_order(const InteriorScheme& s);

struct Operators1D {
  CyclicBandedMatrix L;
  CyclicBandedMatrix R;
  CyclicBandedMatrix Rt;
};

// Cyclic operators on an n-point periodic grid with spacing dx. Requires
// n >= 8 so stencil footprints never self-overlap.
Operators1D build_operators(const InteriorScheme& s, int n, double dx);

// Periodic compact derivative with a cached factorization of L.
class CompactDerivative {
 public:
  CompactDerivative(const InteriorScheme& s, int n, double dx);

  int size() const { return n_; }
  double dx() const { return dx_; }
  const InteriorScheme& scheme() const { return scheme_; }

  template <class T>
  std::vector<T> operator()(std::span<const T> u) const;

 private:
  InteriorScheme scheme_;
  int n_;
  double dx_;
  Operators1D ops_;
};

// Named schemes. Preloaded values transcribe the published decimals
// verbatim; no re-rounding.
class SchemeCatalog {
 public:
  static SchemeCatalog builtin();

  const InteriorScheme& get(const std::string& name) const;
  bool contains(const std::string& name) const;
  void add(InteriorScheme s);
  std::vector<std::string> names() const;

 private:
  std::map<std::string, InteriorScheme> schemes_;
};

InteriorScheme unopt10th();
InteriorScheme opt2nd1p5();
InteriorScheme opt2nd1p8();
InteriorScheme kll2nd();
InteriorScheme cd4();

}  // namespace dispfd
