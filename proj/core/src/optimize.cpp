#include "dispfd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dispfd {

namespace {

constexpr int kGaussNodes = 64;

struct GaussRule {
  std::array<double, kGaussNodes> x;  // nodes on (-1, 1)
  std::array<double, kGaussNodes> w;
};

// Legendre nodes by Newton iteration on P_n.
GaussRule gauss_rule() {
  GaussRule r;
  const int n = kGaussNodes;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const GaussRule& rule() {
  static const GaussRule r = gauss_rule();
  return r;
}

double* field_of(InteriorScheme& s, const std::string& name) {
  if (name == "alpha") return &s.alpha;
  if (name == "beta") return &s.beta;
  if (name == "b") return &s.b;
  if (name == "c") return &s.c;
  if (name == "d") return &s.d;
  if (name == "e") return &s.e;
  if (name == "f") return &s.f;
  throw std::invalid_argument("unknown free variable: " + name);
}

InteriorScheme apply_vars(const OptimizationSpec& spec,
                          const std::vector<double>& x) {
  InteriorScheme s = spec.init;
  for (size_t i = 0; i < spec.free_vars.size(); ++i)
    *field_of(s, spec.free_vars[i]) = x[i];
  s.a = (1.0 + 2.0 * s.alpha + 2.0 * s.beta) * (1.0 - s.d - s.e - s.f) -
        s.b - s.c;
  return s;
}

std::vector<double> extract_vars(const OptimizationSpec& spec,
                                 const InteriorScheme& s) {
  std::vector<double> x;
  InteriorScheme tmp = s;
  for (const auto& name : spec.free_vars) x.push_back(*field_of(tmp, name));
  return x;
}

double max_abs_coeff_diff(const InteriorScheme& p, const InteriorScheme& q) {
  double m = 0.0;
  for (double d : {p.alpha - q.alpha, p.beta - q.beta, p.a - q.a, p.b - q.b,
                   p.c - q.c, p.d - q.d, p.e - q.e, p.f - q.f})
    m = std::max(m, std::abs(d));
  return m;
}

}  // namespace

double objective(const InteriorScheme& s, const OptimizationSpec& spec) {
  if (!(spec.gamma > 0.0 && spec.gamma < std::numbers::pi))
    throw std::invalid_argument("gamma must lie in (0, pi)");
  const GaussRule& r = rule();
  const double h = spec.gamma / spec.panels;
  double total = 0.0;
  for (int p = 0; p < spec.panels; ++p) {
    double mid = (p + 0.5) * h;
    double acc = 0.0;
    for (int i = 0; i < kGaussNodes; ++i) {
      double kappa = mid + 0.5 * h * r.x[i];
      double err = std::abs(kappa_star(s, kappa) - kappa);
      double v = spec.exponent == 2   ? err * err
                 : spec.exponent == 1 ? err
                                      : err * err * err * err;
      if (spec.weight) v *= spec.weight(kappa);
      acc += r.w[i] * v;
    }
    total += 0.5 * h * acc;
  }
  return total;
}

MinimizeResult minimize(const OptimizationSpec& spec) {
  const size_t dim = spec.free_vars.size();
  if (dim == 0) throw std::invalid_argument("no free variables");
  const long kMaxEvals = 100000;
  long evals = 0;

  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    try {
      return objective(apply_vars(spec, x), spec);
    } catch (const PoleError&) {
      return 1e30;
    }
  };

  struct Vertex {
    std::vector<double> x;
    double f;
  };

  // One Nelder-Mead run from x0; returns best vertex found.
  auto nelder_mead = [&](std::vector<double> x0) {
    std::vector<Vertex> simp;
    simp.push_back({x0, eval(x0)});
    for (size_t i = 0; i < dim; ++i) {
      auto x = x0;
      x[i] += (x[i] != 0.0) ? 0.05 * std::abs(x[i]) : 0.02;
      simp.push_back({x, eval(x)});
    }
    while (evals < kMaxEvals) {
      std::sort(simp.begin(), simp.end(),
                [](const Vertex& u, const Vertex& v) { return u.f < v.f; });
      double diam = 0.0;
      for (size_t i = 1; i <= dim; ++i)
        for (size_t j = 0; j < dim; ++j)
          diam = std::max(diam, std::abs(simp[i].x[j] - simp[0].x[j]));
      if (diam < 1e-10 && simp[dim].f - simp[0].f < 1e-14) break;

      std::vector<double> cen(dim, 0.0);
      for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) cen[j] += simp[i].x[j] / dim;
      auto combo = [&](double t) {
        std::vector<double> x(dim);
        for (size_t j = 0; j < dim; ++j)
          x[j] = cen[j] + t * (cen[j] - simp[dim].x[j]);
        return x;
      };
      auto xr = combo(1.0);
      double fr = eval(xr);
      if (fr < simp[0].f) {
        auto xe = combo(2.0);
        double fe = eval(xe);
        simp[dim] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      } else if (fr < simp[dim - 1].f) {
        simp[dim] = {xr, fr};
      } else {
        auto xc = combo(fr < simp[dim].f ? 0.5 : -0.5);
        double fc = eval(xc);
        if (fc < std::min(fr, simp[dim].f)) {
          simp[dim] = {xc, fc};
        } else {
          for (size_t i = 1; i <= dim; ++i) {
            for (size_t j = 0; j < dim; ++j)
              simp[i].x[j] = 0.5 * (simp[i].x[j] + simp[0].x[j]);
            simp[i].f = eval(simp[i].x);
          }
        }
      }
    }
    std::sort(simp.begin(), simp.end(),
              [](const Vertex& u, const Vertex& v) { return u.f < v.f; });
    return simp[0];
  };

  auto best = nelder_mead(extract_vars(spec, spec.init));
  std::mt19937 rng(20260826);
  std::normal_distribution<double> jitter(0.0, 0.02);
  for (int restart = 0; restart < 5 && evals < kMaxEvals; ++restart) {
    auto x0 = best.x;
    for (double& v : x0) v += jitter(rng);
    auto cand = nelder_mead(x0);
    if (cand.f < best.f) best = cand;
  }

  MinimizeResult out;
  out.scheme = apply_vars(spec, best.x);
  out.objective = best.f;
  out.evaluations = evals;
  out.converged = evals < kMaxEvals;
  return out;
}

OptimizationSpec derivation_spec(const InteriorScheme& target) {
  OptimizationSpec spec;
  if (!target.gamma_opt)
    throw std::invalid_argument(target.name + " has no stored Gamma");
  spec.gamma = *target.gamma_opt;
  spec.free_vars = {"alpha", "beta", "b", "c"};
  if (target.augmented()) {
    spec.free_vars.push_back("d");
    spec.free_vars.push_back("e");
    spec.free_vars.push_back("f");
  }
  spec.init = unopt10th();
  spec.init.name = target.name + "-rederived";
  return spec;
}

DerivationReport verify_derivation(const std::string& name,
                                   const SchemeCatalog& catalog,
                                   const OptimizationSpec& spec,
                                   double objective_tol) {
  DerivationReport r;
  r.name = name;
  r.reference = catalog.get(name);
  auto res = minimize(spec);
  r.derived = res.scheme;
  r.objective_derived = res.objective;
  OptimizationSpec ref_spec = spec;
  r.objective_reference = objective(r.reference, ref_spec);
  r.max_coeff_diff = max_abs_coeff_diff(r.reference, r.derived);
  r.coeff_match = r.max_coeff_diff <= 1e-4;
  r.objective_match = r.objective_derived <= r.objective_reference + objective_tol;
  r.pass = r.coeff_match || r.objective_match;
  return r;
}

}  // namespace dispfd
