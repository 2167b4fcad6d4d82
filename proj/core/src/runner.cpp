#include "dispfd/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <thread>

#include "dispfd/boundary.hpp"
#include "dispfd/coeffio.hpp"
#include "dispfd/csv.hpp"
#include "dispfd/dispersion.hpp"
#include "dispfd/optimize.hpp"
#include "dispfd/transport1d.hpp"
#include "dispfd/transport2d.hpp"

namespace dispfd {

namespace {

constexpr double kPi = std::numbers::pi;
using nlohmann::json;
using cd = std::complex<double>;

double wall_ms(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

json scheme_json(const InteriorScheme& s) {
  json j{{"name", s.name}, {"alpha", s.alpha}, {"beta", s.beta},
         {"a", s.a},       {"b", s.b},         {"c", s.c},
         {"d", s.d},       {"e", s.e},         {"f", s.f}};
  if (s.gamma_opt) j["gamma"] = *s.gamma_opt;
  return j;
}

SchemeCatalog catalog_for(const Config& cfg) {
  auto cat = SchemeCatalog::builtin();
  if (cfg.has("import"))
    for (auto& s : load_coefficients(cfg.get_string("import")))
      cat.add(std::move(s));
  return cat;
}

InteriorScheme scheme_for(const Config& cfg, const SchemeCatalog& cat,
                          const std::string& key = "scheme",
                          const std::string& fallback = "") {
  if (cfg.has(key)) return cat.get(cfg.get_string(key));
  if (cfg.has("coefficients.a")) {
    InteriorScheme s;
    s.name = cfg.get_string("coefficients.name", "inline");
    s.alpha = cfg.get_double("coefficients.alpha");
    s.beta = cfg.get_double("coefficients.beta");
    s.a = cfg.get_double("coefficients.a");
    s.b = cfg.get_double("coefficients.b");
    s.c = cfg.get_double("coefficients.c");
    s.d = cfg.get_double("coefficients.d", 0.0);
    s.e = cfg.get_double("coefficients.e", 0.0);
    s.f = cfg.get_double("coefficients.f", 0.0);
    return s;
  }
  if (!fallback.empty()) return cat.get(fallback);
  throw ConfigError("missing config key '" + key + "'");
}

RKScheme rk_for(const Config& cfg) {
  return RKScheme::classical(cfg.get_int("rk_stages", 8));
}

std::vector<double> ic_for(const Config& cfg, const Grid1D& g) {
  std::string ic = cfg.get_string("ic", "packet");
  if (ic == "packet") return sample_ic(g, packet_ic);
  if (ic == "chirp") return sample_ic(g, chirp_ic);
  if (ic == "hopf") return sample_ic(g, hopf_ic);
  if (ic == "plane") {
    int kp = cfg.get_int("plane_kprime", 1);
    return sample_ic(g, [&](double x) {
      return std::cos(2.0 * kPi * kp * x / g.ell);
    });
  }
  throw ConfigError("unknown ic '" + ic + "'");
}

// Exact constant-speed transport of the trigonometric interpolant.
std::vector<double> translate_exact(const Grid1D& g,
                                    std::span<const double> u0, double c,
                                    double t) {
  Spectrum spec = dft(u0);
  for (int i = 0; i < spec.n; ++i) {
    double k = 2.0 * kPi * spec.kprime_of(i) / g.ell;
    spec.coeff[i] *= std::exp(cd(0.0, -k * c * t));
  }
  auto cu = idft(spec);
  std::vector<double> u(g.n);
  for (int i = 0; i < g.n; ++i) u[i] = cu[i].real();
  return u;
}

void write_spectrum_csv(const std::filesystem::path& path,
                        const Spectrum& spec) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < spec.n; ++i)
    rows.push_back({double(spec.kprime_of(i)), spec.coeff[i].real(),
                    spec.coeff[i].imag(), std::abs(spec.coeff[i])});
  write_csv(path, {"kprime", "re", "im", "abs"}, rows);
}

json run_resolve(const Config& cfg, const RunnerOptions& opt) {
  auto cat = catalog_for(cfg);
  auto s = scheme_for(cfg, cat);
  auto prof = profile(s, default_kappa_samples());
  std::vector<std::vector<double>> rows;
  double max_abs = 0.0;
  for (size_t i = 0; i < prof.kappa.size(); ++i) {
    rows.push_back({prof.kappa[i], prof.kappa_star[i], prof.abs_err[i],
                    prof.rel_err[i], prof.dkstar_dkappa[i]});
    max_abs = std::max(max_abs, prof.abs_err[i]);
  }
  auto csv = opt.out_dir / (s.name + "_profile.csv");
  write_csv(csv, {"kappa", "kappa_star", "abs_err", "rel_err", "dkstar_dkappa"},
            rows);
  return json{{"scheme", scheme_json(s)},
              {"samples", rows.size()},
              {"max_abs_err", max_abs},
              {"outputs", {csv.filename().string()}}};
}

json run_optimize(const Config& cfg, const RunnerOptions& opt) {
  auto cat = catalog_for(cfg);
  OptimizationSpec spec;
  spec.gamma = cfg.get_double("gamma");
  spec.exponent = cfg.get_int("exponent", 2);
  spec.init = scheme_for(cfg, cat, "init", "UNOPT10TH");
  bool augmented = cfg.get_bool("augmented", false);
  spec.free_vars = {"alpha", "beta", "b", "c"};
  if (augmented) {
    spec.free_vars.push_back("d");
    spec.free_vars.push_back("e");
    spec.free_vars.push_back("f");
  }
  auto res = minimize(spec);
  res.scheme.name = cfg.get_string("name", "optimized");
  res.scheme.gamma_opt = spec.gamma;
  auto coeff = opt.out_dir / (res.scheme.name + ".coeff");
  save_coefficients(coeff, {res.scheme});
  json report{{"scheme", scheme_json(res.scheme)},
              {"objective", res.objective},
              {"evaluations", res.evaluations},
              {"converged", res.converged},
              {"outputs", {coeff.filename().string()}}};
  if (cfg.has("compare_to")) {
    auto ref = cat.get(cfg.get_string("compare_to"));
    report["reference_objective"] = objective(ref, spec);
  }
  return report;
}

json run_solve1d(const Config& cfg, const RunnerOptions& opt,
                 bool write_outputs) {
  auto cat = catalog_for(cfg);
  auto s = scheme_for(cfg, cat);
  Grid1D g{cfg.get_int("n"), cfg.get_double("ell", 1.0)};
  double c = cfg.get_double("c", 1.0);
  double T = cfg.get_double("T", 1.0);
  double r = cfg.get_double("r", 0.1);
  auto rk = rk_for(cfg);
  auto u0 = ic_for(cfg, g);
  int stride = cfg.get_int("history_stride", 10);

  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::vector<double>> hist;
  int count = 0;
  auto history = [&](double t, std::span<const double> u) {
    if (count++ % stride != 0 && t != T) return;
    auto exact = translate_exact(g, u0, c, t);
    hist.push_back({t, l2_error(g, u, exact), linf_error(u, exact)});
  };
  auto res = solve_const_transport(s, rk, g, u0, c, T, r,
                                   write_outputs ? HistoryFn(history)
                                                 : HistoryFn(nullptr));
  auto exact = translate_exact(g, u0, c, T);
  double e2 = l2_error(g, res.u, exact);
  double einf = linf_error(res.u, exact);

  json report{{"scheme", scheme_json(s)},
              {"n", g.n},
              {"dx", g.dx()},
              {"steps", res.steps},
              {"l2_error", e2},
              {"linf_error", einf},
              {"wall_ms", wall_ms(t0)}};
  if (write_outputs) {
    auto hist_csv = opt.out_dir / "history.csv";
    write_csv(hist_csv, {"time", "l2_error", "linf_error"}, hist);
    auto spec_csv = opt.out_dir / "spectrum.csv";
    write_spectrum_csv(spec_csv, dft(std::span<const double>(res.u)));
    report["outputs"] = {hist_csv.filename().string(),
                         spec_csv.filename().string()};
  }
  return report;
}

json run_varcoef(const Config& cfg, const RunnerOptions& opt) {
  auto cat = catalog_for(cfg);
  auto s = scheme_for(cfg, cat);
  double A = cfg.get_double("A", 0.2);
  double B = cfg.get_double("B", 1.0);
  Grid1D g{cfg.get_int("n"), cfg.get_double("ell", 1.0)};
  double T = cfg.has("T") ? cfg.get_double("T") : varcoef_period(A, B);
  double r = cfg.get_double("r", 0.1);
  auto rk = rk_for(cfg);
  auto u0 = sample_ic(g, packet_ic);

  auto t0 = std::chrono::steady_clock::now();
  auto cfun = [&](double x) { return varcoef_speed(A, B, x); };
  auto res = solve_varcoef_transport(s, rk, g, u0, cfun, T, r);
  auto u0fun = [&](double x) {
    double xm = x - std::floor(x / g.ell) * g.ell;
    return packet_ic(xm);
  };
  std::vector<double> exact(g.n);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < g.n; ++i) {
    exact[i] = exact_varcoef(A, B, u0fun, g.x(i), T);
    rows.push_back({g.x(i), res.u[i], exact[i]});
  }
  auto field_csv = opt.out_dir / "field.csv";
  write_csv(field_csv, {"x", "u", "exact"}, rows);
  auto spec_csv = opt.out_dir / "spectrum.csv";
  write_spectrum_csv(spec_csv, dft(std::span<const double>(res.u)));
  return json{{"scheme", scheme_json(s)},
              {"n", g.n},
              {"T", T},
              {"steps", res.steps},
              {"l2_error", l2_error(g, res.u, exact)},
              {"linf_error", linf_error(res.u, exact)},
              {"wall_ms", wall_ms(t0)},
              {"outputs",
               {field_csv.filename().string(), spec_csv.filename().string()}}};
}

json run_hopf(const Config& cfg, const RunnerOptions& opt) {
  auto cat = catalog_for(cfg);
  auto s = scheme_for(cfg, cat);
  Grid1D g{cfg.get_int("n"), 1.0};
  double T = cfg.get_double("T", 0.6);
  double r = cfg.get_double("r", 0.1);
  auto rk = rk_for(cfg);
  auto u0 = sample_ic(g, hopf_ic);
  int stride = cfg.get_int("history_stride", 10);

  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::vector<double>> hist;
  int count = 0;
  auto history = [&](double t, std::span<const double> u) {
    if (count++ % stride != 0 && t != T) return;
    std::vector<double> exact(g.n);
    for (int i = 0; i < g.n; ++i) exact[i] = exact_hopf(hopf_ic, g.x(i), t);
    hist.push_back({t, l2_error(g, u, exact), linf_error(u, exact)});
  };
  auto res = solve_hopf(s, rk, g, u0, T, r, history);
  std::vector<double> exact(g.n);
  for (int i = 0; i < g.n; ++i) exact[i] = exact_hopf(hopf_ic, g.x(i), T);
  auto hist_csv = opt.out_dir / "history.csv";
  write_csv(hist_csv, {"time", "l2_error", "linf_error"}, hist);
  return json{{"scheme", scheme_json(s)},
              {"n", g.n},
              {"T", T},
              {"steps", res.steps},
              {"l2_error", l2_error(g, res.u, exact)},
              {"linf_error", linf_error(res.u, exact)},
              {"wall_ms", wall_ms(t0)},
              {"outputs", {hist_csv.filename().string()}}};
}

json run_solve2d(const Config& cfg, const RunnerOptions& opt) {
  auto cat = catalog_for(cfg);
  auto s = scheme_for(cfg, cat);
  Grid2D g{cfg.get_int("n"), 1.0, -0.5};
  double T = cfg.get_double("T", 1.0);
  double r = cfg.get_double("r", 0.1);
  auto rk = rk_for(cfg);
  auto u0 = sample_ic_2d(g, zalesak_ic);

  auto t0 = std::chrono::steady_clock::now();
  auto res = solve_rotation(s, rk, g, u0, T, r);
  Field2D exact = sample_ic_2d(g, [&](double x, double y) {
    return exact_rotation(zalesak_ic, x, y, T);
  });
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      rows.push_back({g.x(j), g.y(i), res.u.at(i, j)});
  auto field_csv = opt.out_dir / "field2d.csv";
  write_csv(field_csv, {"x", "y", "u"}, rows);
  return json{{"scheme", scheme_json(s)},
              {"n", g.n},
              {"T", T},
              {"steps", res.steps},
              {"l2_error", l2_error_2d(g, res.u, exact)},
              {"linf_error", linf_error_2d(res.u, exact)},
              {"wall_ms", wall_ms(t0)},
              {"outputs", {field_csv.filename().string()}}};
}

json run_ibvp(const Config& cfg, const RunnerOptions& opt) {
  auto cat = catalog_for(cfg);
  std::string variant = cfg.get_string("variant", "direct");
  int n = cfg.get_int("n");
  double dx = 1.0 / n;
  double T = cfg.get_double("T", 0.8);
  double r = cfg.get_double("r", 0.1);
  double c = cfg.get_double("c", 1.0);
  double k0 = cfg.get_double("k0", 255.0);
  int stride = cfg.get_int("history_stride", 10);
  auto rk = rk_for(cfg);
  auto u0fun = [&](double x) { return outflow_packet_ic(x, k0); };

  auto t0 = std::chrono::steady_clock::now();
  IbvpResult res;
  InteriorScheme s;
  if (variant == "direct") {
    s = scheme_for(cfg, cat, "scheme", "UNOPT10TH");
    DirectComposite op(s, BoundaryRows::maximal_order(), n, dx);
    res = solve_outflow_ibvp(op, rk, c, u0fun, T, r, stride);
  } else if (variant == "buffered") {
    s = scheme_for(cfg, cat, "scheme", "KLL2ND");
    BufferedComposite op(s, cat.get("UNOPT10TH"), BoundaryRows::maximal_order(),
                         n, dx, cfg.get_int("m", 10));
    res = solve_outflow_ibvp(op, rk, c, u0fun, T, r, stride);
  } else {
    throw ConfigError("unknown variant '" + variant + "'");
  }
  std::vector<std::vector<double>> hist;
  for (size_t i = 0; i < res.times.size(); ++i)
    hist.push_back({res.times[i], res.l2_hist[i], res.linf_hist[i]});
  auto hist_csv = opt.out_dir / "history.csv";
  write_csv(hist_csv, {"time", "l2_error", "linf_error"}, hist);
  return json{{"scheme", scheme_json(s)},
              {"variant", variant},
              {"n", n},
              {"steps", res.steps},
              {"l2_error", res.l2_hist.back()},
              {"linf_error", res.linf_hist.back()},
              {"wall_ms", wall_ms(t0)},
              {"outputs", {hist_csv.filename().string()}}};
}

json run_deltak(const Config& cfg, const RunnerOptions& opt) {
  auto cat = catalog_for(cfg);
  std::string variant = cfg.get_string("variant", "direct");
  int n = cfg.get_int("n");
  double dx = 1.0 / n;
  double k = 2.0 * kPi * cfg.get_double("kprime", 50.0);
  DeltaKProfile prof;
  InteriorScheme s;
  if (variant == "direct") {
    s = scheme_for(cfg, cat, "scheme", "UNOPT10TH");
    DirectComposite op(s, BoundaryRows::maximal_order(), n, dx);
    prof = delta_k(op, k);
  } else if (variant == "buffered") {
    s = scheme_for(cfg, cat, "scheme", "KLL2ND");
    BufferedComposite op(s, cat.get("UNOPT10TH"), BoundaryRows::maximal_order(),
                         n, dx, cfg.get_int("m", 10));
    prof = delta_k(op, k);
  } else if (variant == "periodic") {
    s = scheme_for(cfg, cat, "scheme", "UNOPT10TH");
    prof = delta_k(s, k, n, dx);
  } else {
    throw ConfigError("unknown variant '" + variant + "'");
  }
  std::vector<std::vector<double>> rows;
  double max_rel_inner = 0.0;
  for (int i = 0; i < n; ++i) {
    rows.push_back({prof.x[i], prof.kj[i].real(), prof.kj[i].imag(),
                    prof.dk[i].real(), prof.dk[i].imag()});
    if (prof.x[i] <= 0.85)
      max_rel_inner = std::max(max_rel_inner,
                               std::abs(prof.dk[i]) / std::abs(prof.kstar));
  }
  auto csv = opt.out_dir / "deltak.csv";
  write_csv(csv, {"x", "re_kj", "im_kj", "re_dk", "im_dk"}, rows);
  return json{{"scheme", scheme_json(s)},
              {"variant", variant},
              {"n", n},
              {"k", k},
              {"kstar", prof.kstar},
              {"max_rel_dk_inner", max_rel_inner},
              {"outputs", {csv.filename().string()}}};
}

json run_sweep(const Config& cfg, const RunnerOptions& opt) {
  auto n_list = cfg.get_list("n_list");
  double primary_k = cfg.get_double("primary_k", 30.0 * kPi);
  std::vector<json> rows(n_list.size());
  std::vector<std::exception_ptr> errors(n_list.size());

  // Bounded worker pool over independent mesh points.
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n_list.size()) return;
      try {
        Config sub = cfg;
        sub.set("n", format_number(n_list[i]));
        auto t0 = std::chrono::steady_clock::now();
        json r = run_solve1d(sub, opt, false);
        r["kappa"] = primary_k * r["dx"].get<double>();
        r["wall_ms"] = wall_ms(t0);
        rows[i] = std::move(r);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int jobs = std::max(1, opt.jobs);
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<std::vector<double>> csv_rows;
  for (const auto& r : rows)
    csv_rows.push_back({r["dx"].get<double>(), r["kappa"].get<double>(),
                        r["l2_error"].get<double>(),
                        r["linf_error"].get<double>(),
                        double(r["steps"].get<int>()),
                        r["wall_ms"].get<double>()});
  auto csv = opt.out_dir / "sweep.csv";
  write_csv(csv, {"dx", "kappa", "l2_error", "linf_error", "steps", "wall_ms"},
            csv_rows);
  return json{{"rows", rows}, {"outputs", {csv.filename().string()}}};
}

}  // namespace

json run_experiment(const Config& cfg, const RunnerOptions& opt) {
  std::filesystem::create_directories(opt.out_dir);
  std::string kind = cfg.get_string("kind");
  json report;
  if (kind == "resolve") {
    report = run_resolve(cfg, opt);
  } else if (kind == "optimize") {
    report = run_optimize(cfg, opt);
  } else if (kind == "solve1d") {
    report = run_solve1d(cfg, opt, true);
  } else if (kind == "varcoef") {
    report = run_varcoef(cfg, opt);
  } else if (kind == "hopf") {
    report = run_hopf(cfg, opt);
  } else if (kind == "solve2d") {
    report = run_solve2d(cfg, opt);
  } else if (kind == "ibvp") {
    report = run_ibvp(cfg, opt);
  } else if (kind == "deltak") {
    report = run_deltak(cfg, opt);
  } else if (kind == "sweep") {
    report = run_sweep(cfg, opt);
  } else {
    throw ConfigError("unknown experiment kind '" + kind + "'");
  }
  report["kind"] = kind;
  report["config"] = json(cfg.entries());
  std::ofstream out(opt.out_dir / "report.json", std::ios::binary);
  out << report.dump(2) << '\n';
  return report;
}

}  // namespace dispfd
