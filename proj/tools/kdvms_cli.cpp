// Command-line front end; talks to the solver only through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kdvms/kdvms.h"

namespace {

using ConfigPtr = std::unique_ptr<kdv_config, decltype(&kdv_config_destroy)>;

constexpr const char* kKeys[] = {
    "scheme",    "eta",      "delta",      "xmin",       "xmax",
    "n",         "tau",      "steps",      "ic",         "amplitude",
    "center",    "amplitude2", "center2",  "ic-file",    "variant",
    "anchor",    "anchored", "tol",        "max-iter",   "divergence-threshold",
    "snapshot-every", "out",
};

int exit_code(kdv_status s) {
  switch (s) {
    case KDV_OK: return 0;
    case KDV_DIVERGENCE:
    case KDV_DEGENERATE: return 2;
    case KDV_CONFIG:
    case KDV_SINGULAR:
    case KDV_ARGUMENT: return 3;
    case KDV_BLOWUP: return 4;
    default: return 1;
  }
}

int report(kdv_status s) {
  if (s != KDV_OK) std::fprintf(stderr, "kdvms: %s\n", kdv_last_error());
  return exit_code(s);
}

struct ConfigOptions {
  std::string file;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", file, "key=value configuration file");
    for (const char* k : kKeys)
      app->add_option(std::string("--") + k, values[k],
                      "overrides '" + std::string(k) + "' from the file");
  }

  // File values first, then flags.
  kdv_status build(CLI::App* app, ConfigPtr& cfg) const {
    kdv_config* raw = nullptr;
    if (auto s = kdv_config_create(&raw); s != KDV_OK) return s;
    cfg.reset(raw);
    if (!file.empty())
      if (auto s = kdv_config_load_file(cfg.get(), file.c_str()); s != KDV_OK)
        return s;
    for (const char* k : kKeys) {
      if (app->count(std::string("--") + k) == 0) continue;
      if (auto s = kdv_config_set(cfg.get(), k, values.at(k).c_str()); s != KDV_OK)
        return s;
    }
    return kdv_config_validate(cfg.get());
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multisymplectic KdV solver laboratory"};
  app.require_subcommand(1);

  ConfigOptions run_opts;
  auto* run = app.add_subcommand("run", "run one scheme and write CSV output");
  run_opts.attach(run);

  ConfigOptions cmp_opts;
  std::string other, cmp_out;
  auto* cmp = app.add_subcommand(
      "compare", "step two schemes from the same data and write per-step distances");
  cmp_opts.attach(cmp);
  cmp->add_option("--other", other, "second scheme")->required();
  cmp->add_option("--compare-out", cmp_out,
                  "comparison CSV (default: <out>/compare.csv, or none)");

  ConfigOptions rank_opts;
  bool anchored = false;
  auto* rank = app.add_subcommand("rank", "numerical rank of the Preissman matrix");
  rank_opts.attach(rank);
  rank->add_flag("--with-anchor", anchored, "append the anchor row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  ConfigPtr cfg(nullptr, &kdv_config_destroy);

  if (*run) {
    if (auto s = run_opts.build(run, cfg); s != KDV_OK) return report(s);
    kdv_run_summary sum{};
    const kdv_status s = kdv_run_experiment(cfg.get(), &sum);
    std::printf("steps=%ld t=%.17g mass_drift=%.3e%s\n", sum.steps_completed,
                sum.final_time, sum.max_relative_mass_drift,
                sum.truncated ? " (truncated)" : "");
    return report(s);
  }

  if (*cmp) {
    if (auto s = cmp_opts.build(cmp, cfg); s != KDV_OK) return report(s);
    if (cmp_out.empty()) {
      char dir[4096];
      if (kdv_config_get(cfg.get(), "out", dir, sizeof dir) == KDV_OK)
        cmp_out = std::string(dir) + "/compare.csv";
    }
    double max_linf = 0.0;
    const kdv_status s = kdv_compare_schemes(
        cfg.get(), other.c_str(), cmp_out.empty() ? nullptr : cmp_out.c_str(),
        &max_linf);
    std::printf("max_linf=%.17g\n", max_linf);
    return report(s);
  }

  if (auto s = rank_opts.build(rank, cfg); s != KDV_OK) return report(s);
  int r = 0, cols = 0;
  const kdv_status s = kdv_rank_of_D(cfg.get(), anchored ? 1 : 0, &r, &cols);
  std::printf("rank=%d columns=%d\n", r, cols);
  return report(s);
}
