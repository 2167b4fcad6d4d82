// Batch front door: config-driven experiment runs, catalog inspection, and
// coefficient import.

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dispfd/coeffio.hpp"
#include "dispfd/config.hpp"
#include "dispfd/csv.hpp"
#include "dispfd/runner.hpp"
#include "dispfd/scheme.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

std::filesystem::path output_root(const std::string& out_flag) {
  if (!out_flag.empty()) return out_flag;
  if (const char* env = std::getenv("DISPFD_OUT")) return env;
  return ".";
}

int run_kind(const std::string& kind, const std::string& config_path,
             const std::string& out_flag, int jobs) {
  try {
    dispfd::Config cfg = dispfd::Config::load(config_path);
    if (!kind.empty()) cfg.set("kind", kind);
    dispfd::RunnerOptions opt;
    opt.out_dir = output_root(out_flag);
    opt.jobs = jobs;
    auto report = dispfd::run_experiment(cfg, opt);
    std::cout << report.dump(2) << '\n';
    return 0;
  } catch (const dispfd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << '\n';
    return kExitRuntime;
  }
}

void print_scheme(const dispfd::InteriorScheme& s) {
  nlohmann::json j{{"name", s.name},
                   {"alpha", dispfd::format_number(s.alpha)},
                   {"beta", dispfd::format_number(s.beta)},
                   {"a", dispfd::format_number(s.a)},
                   {"b", dispfd::format_number(s.b)},
                   {"c", dispfd::format_number(s.c)},
                   {"d", dispfd::format_number(s.d)},
                   {"e", dispfd::format_number(s.e)},
                   {"f", dispfd::format_number(s.f)}};
  if (s.gamma_opt) j["gamma"] = dispfd::format_number(*s.gamma_opt);
  std::cout << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compact scheme design and verification toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_flag;
  int jobs = 1;

  auto add_run_sub = [&](const std::string& name, const std::string& desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "config file (text or JSON)")
        ->required();
    sub->add_option("--out", out_flag, "output directory");
    sub->add_option("--jobs", jobs, "worker threads for sweeps");
    return sub;
  };

  auto* run = add_run_sub("run", "run the experiment named in the config");
  for (const char* kind : {"resolve", "optimize", "solve1d", "varcoef", "hopf",
                           "solve2d", "ibvp", "deltak", "sweep"})
    add_run_sub(kind, std::string("run a ") + kind + " experiment");

  auto* catalog = app.add_subcommand("catalog", "scheme catalog inspection");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "list built-in schemes");
  std::string show_name;
  auto* show = catalog->add_subcommand("show", "print scheme coefficients");
  show->add_option("name", show_name, "scheme name")->required();
  std::string import_path;
  auto* import_cmd =
      catalog->add_subcommand("import", "validate a coefficient file");
  import_cmd->add_option("file", import_path, "coefficient file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    auto cat = dispfd::SchemeCatalog::builtin();
    if (list->parsed()) {
      for (const auto& name : cat.names()) std::cout << name << '\n';
      return 0;
    }
    if (show->parsed()) {
      print_scheme(cat.get(show_name));
      return 0;
    }
    if (import_cmd->parsed()) {
      for (const auto& s : dispfd::load_coefficients(import_path))
        print_scheme(s);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  for (auto* sub : app.get_subcommands()) {
    std::string name = sub->get_name();
    if (name == "catalog") continue;
    return run_kind(name == "run" ? "" : name, config_path, out_flag, jobs);
  }
  return kExitConfig;
}
