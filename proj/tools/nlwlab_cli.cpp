// nlwlab command-line front end. Builds a JSON config from flags (flags
// override config-file values), hands it to the shared library through the
// C API, prints the summary, and maps outcomes to exit codes:
//   0 pass/success, 1 experiment failure, 2 usage or config error.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nlwlab/nlwlab.h"

using json = nlohmann::ordered_json;

namespace {

// Options write into a JSON config only when actually given on the command
// line, so file-config values survive unless a flag overrides them. Defaults
// are listed in the help text and live in the library.
struct FlagSet {
  CLI::App* app;
  json values = json::object();

  static std::string with_default(const std::string& help, const std::string& def) {
    return help + " [default: " + def + "]";
  }
  void opt_int(const std::string& flag, const std::string& key, const std::string& help,
               int def) {
    app->add_option_function<int>(
        flag, [this, key](int v) { put(key, v); }, with_default(help, std::to_string(def)));
  }
  void opt_double(const std::string& flag, const std::string& key, const std::string& help,
                  double def) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", def);
    app->add_option_function<double>(
        flag, [this, key](double v) { put(key, v); }, with_default(help, buf));
  }
  void opt_string(const std::string& flag, const std::string& key, const std::string& help,
                  const std::string& def) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { put(key, v); }, with_default(help, def));
  }
  void opt_vec(const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::vector<double>>(
        flag, [this, key](const std::vector<double>& v) { put(key, json(v)); }, help);
  }
  void opt_flag(const std::string& flag, const std::string& key, const std::string& help) {
    app->add_flag_function(
        flag, [this, key](std::int64_t n) { if (n) put(key, true); }, help);
  }
  void put(const std::string& dotted, json v) {
    json* node = &values;
    std::size_t pos = 0;
    std::string key = dotted;
    while ((pos = key.find('.')) != std::string::npos) {
      std::string head = key.substr(0, pos);
      key = key.substr(pos + 1);
      if (!node->contains(head)) (*node)[head] = json::object();
      node = &(*node)[head];
    }
    (*node)[key] = std::move(v);
  }
};

void merge_into(json& base, const json& over) {
  if (over.is_null()) return;
  if (!over.is_object()) {
    base = over;
    return;
  }
  if (!base.is_object()) base = json::object();
  for (auto it = over.begin(); it != over.end(); ++it) {
    if (base.contains(it.key()) && base[it.key()].is_object() && it.value().is_object())
      merge_into(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
}

int run(const std::string& cmd, const json& config, const std::string& outdir) {
  char* summary = nullptr;
  int exit_code = 0;
  nlw_status st =
      nlw_run(cmd.c_str(), config.dump().c_str(), outdir.empty() ? nullptr : outdir.c_str(),
              &summary, &exit_code);
  if (st != NLW_OK) {
    std::fprintf(stderr, "error: %s\n", nlw_last_error());
    return 2;
  }
  if (summary) {
    std::printf("%s\n", summary);
    nlw_string_free(summary);
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlwlab: radial semilinear wave laboratory"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* cli;
    FlagSet flags;
    std::string config_file;
    std::string outdir;
    std::vector<std::string> sets;
  };
  std::vector<std::pair<std::string, Sub*>> subs;

  auto add_sub = [&](const std::string& name, const std::string& desc) -> Sub* {
    auto* sub = new Sub();
    sub->cli = app.add_subcommand(name, desc);
    sub->flags.app = sub->cli;
    sub->cli->add_option("--config", sub->config_file,
                         "JSON config file (flags override file values)");
    sub->cli->add_option("--out", sub->outdir,
                         "output directory (config echo, reports, plots); default out-<cmd>");
    sub->cli->add_option("--set", sub->sets, "extra config overrides as dotted key=value");
    sub->flags.opt_int("--jobs", "jobs", "worker threads (0 = NLW_LAB_JOBS or cores)", 0);
    subs.push_back({name, sub});
    return sub;
  };

  {
    auto* s = add_sub("exponents", "exponent pack (p_c, s_c, s_o, delta, delta1, lifespan law)");
    s->flags.opt_int("--n", "n", "spatial dimension", 3);
    s->flags.opt_double("--p", "p", "nonlinearity power", 2.0);
    s->flags.opt_double("--s", "s", "data regularity", 1.75);
  }
  {
    auto* s = add_sub("weight-check", "Muckenhoupt A_p estimation for a radial weight");
    s->flags.opt_int("--n", "n", "ambient dimension", 3);
    s->flags.opt_flag("--suite", "suite", "run the full weight battery instead");
    s->flags.opt_string("--kind", "weight.kind", "constant|power|product|morawetz", "morawetz");
    s->flags.opt_double("--a", "weight.a", "r^a exponent (power/product)", -0.5);
    s->flags.opt_double("--b", "weight.b", "<r>^b exponent (product)", 0.0);
    s->flags.opt_double("--delta", "weight.delta", "morawetz weight delta", 0.125);
    s->flags.opt_double("--delta1", "weight.delta1", "morawetz weight delta1", 0.0);
    s->flags.opt_double("--p-index", "p_index", "A_p index (<=1 means A_1)", 1.0);
    s->flags.opt_int("--centers", "plan.centers", "sampled ball centers", 16);
    s->flags.opt_int("--radii", "plan.radii", "sampled ball radii", 16);
    s->flags.opt_int("--refinements", "plan.refinements", "refinement levels", 3);
  }
  {
    auto* s = add_sub("spectral-selftest", "transform/calculus invariant battery");
    s->flags.opt_int("--N", "N", "radial nodes", 1024);
    s->flags.opt_double("--R", "R", "domain radius", 12.0);
  }
  {
    auto* s = add_sub("ineq-trace", "trace estimate ratio ensembles");
    s->flags.opt_int("--n", "n", "spatial dimension", 3);
    s->flags.opt_double("--s", "s", "regularity of the right-hand side", 0.75);
    s->flags.opt_vec("--s-list", "s_list", "several s values");
    s->flags.opt_flag("--besov", "besov", "test the Besov-normed variant");
    s->flags.opt_int("--N", "N", "radial nodes", 1024);
    s->flags.opt_double("--R", "R", "domain radius", 40.0);
    s->flags.opt_int("--size", "ensemble.size", "ensemble members", 200);
    s->flags.opt_int("--seed", "ensemble.seed", "ensemble seed", 1);
    s->flags.opt_string("--family", "ensemble.family",
                        "gaussian-bumps|dyadic-band-limited|wave-packets", "gaussian-bumps");
  }
  {
    auto* s = add_sub("ineq-chain", "weighted fractional chain rule ratios");
    s->flags.opt_int("--n", "n", "spatial dimension", 3);
    s->flags.opt_flag("--study", "study", "run the (s, p, weights) constant study");
    s->flags.opt_string("--weights", "weights", "dual|identity", "dual");
    s->flags.opt_double("--s", "s", "fractional order in (0,1)", 0.5);
    s->flags.opt_double("--p", "p", "nonlinearity power", 2.0);
    s->flags.opt_double("--q", "q", "target Lebesgue exponent", 2.0);
    s->flags.opt_double("--q1", "q1", "first Hoelder factor", 2.0);
    s->flags.opt_double("--q2", "q2", "second Hoelder factor (identity mode)", 4.0);
    s->flags.opt_double("--pack-p", "pack_p", "exponent pack p (dual weights)", 2.0);
    s->flags.opt_double("--pack-s", "pack_s", "exponent pack s (dual weights)", 1.75);
    s->flags.opt_int("--N", "N", "radial nodes", 1024);
    s->flags.opt_double("--R", "R", "domain radius", 40.0);
    s->flags.opt_int("--size", "ensemble.size", "ensemble members", 200);
    s->flags.opt_int("--seed", "ensemble.seed", "ensemble seed", 1);
  }
  {
    auto* s = add_sub("ineq-kss", "KSS/Morawetz T-uniformity study");
    s->flags.opt_int("--n", "n", "spatial dimension", 3);
    s->flags.opt_double("--p", "p", "power fixing the exponent pack", 2.5);
    s->flags.opt_double("--s", "s", "regularity fixing the exponent pack", 1.9);
    s->flags.opt_vec("--T", "T_grid", "horizons");
    s->flags.opt_double("--dr", "dr", "grid spacing", 0.04);
    s->flags.opt_double("--spread-limit", "spread_limit", "per-variant max/min limit", 3.0);
  }
  {
    auto* s = add_sub("ineq-strichartz", "2-D generalized Strichartz ratios");
    s->flags.opt_vec("--q", "q_list", "time exponents (> 2)");
    s->flags.opt_double("--t-big", "t_big", "truncation horizon", 8.0);
    s->flags.opt_double("--dr", "dr", "grid spacing", 0.05);
    s->flags.opt_double("--width", "width", "data bump width", 1.0);
    s->flags.opt_flag("--forced", "forced", "add a compact space-time source");
  }
  {
    auto* s = add_sub("solve", "evolve one Cauchy problem and store the trajectory");
    s->flags.opt_int("--n", "n", "spatial dimension", 3);
    s->flags.opt_double("--p", "p", "nonlinearity power", 2.0);
    s->flags.opt_double("--a", "a", "|u_t|^p coefficient", 1.0);
    s->flags.opt_double("--b", "b", "|grad u|^p coefficient", 0.0);
    s->flags.opt_double("--R", "R", "domain radius", 16.0);
    s->flags.opt_int("--N", "N", "radial nodes", 1024);
    s->flags.opt_double("--cfl", "cfl", "Courant number", 0.5);
    s->flags.opt_double("--t-max", "t_max", "horizon", 10.0);
    s->flags.opt_int("--record-stride", "record_stride", "store every k-th step", 4);
    s->flags.opt_string("--profile", "data.kind", "gaussian|constant", "gaussian");
    s->flags.opt_double("--width", "data.width", "profile width", 1.0);
    s->flags.opt_double("--eps", "data.eps", "amplitude of u_1 = eps * profile", 1.0);
  }
  {
    auto* s = add_sub("lifespan", "bracket the numerical blow-up time");
    s->flags.opt_int("--n", "n", "spatial dimension", 3);
    s->flags.opt_double("--p", "p", "nonlinearity power", 2.0);
    s->flags.opt_double("--a", "a", "|u_t|^p coefficient", 1.0);
    s->flags.opt_double("--b", "b", "|grad u|^p coefficient", 0.0);
    s->flags.opt_string("--profile", "profile.kind", "gaussian|constant", "gaussian");
    s->flags.opt_double("--width", "profile.width", "profile width", 1.0);
    s->flags.opt_double("--eps", "eps", "data amplitude", 1.0);
    s->flags.opt_double("--lambda", "lambda", "constant-profile ODE case: eps = 1/lambda", 0.0);
    s->flags.opt_double("--R", "R", "domain radius", 40.0);
    s->flags.opt_double("--t-max", "t_max", "horizon cap", 30.0);
    s->flags.opt_double("--dr", "dr", "base grid spacing", 0.02);
    s->flags.opt_int("--refinements", "refinements", "(dr, dt) halvings", 2);
  }
  {
    auto* s = add_sub("scaling", "lifespan scaling fit against the regime's law");
    s->flags.opt_int("--n", "n", "spatial dimension", 3);
    s->flags.opt_double("--p", "p", "nonlinearity power", 2.0);
    s->flags.opt_double("--a", "a", "|u_t|^p coefficient", 1.0);
    s->flags.opt_double("--b", "b", "|grad u|^p coefficient", 0.0);
    s->flags.opt_vec("--eps-grid", "eps_grid", "amplitudes (defaults depend on n, p)");
    s->flags.opt_double("--t-max", "t_max", "horizon cap", 0.0);
    s->flags.opt_double("--dr", "dr", "base grid spacing", 0.0);
    s->flags.opt_int("--refinements", "refinements", "(dr, dt) halvings", -1);
    s->flags.opt_double("--r2", "r2_threshold", "minimum R^2 for a pass", 0.95);
    s->flags.opt_double("--slope-tol", "slope_tol_rel", "relative slope tolerance", 0.2);
  }
  {
    auto* s = add_sub("persist-2d", "2-D radial small-data persistence check");
    s->flags.opt_double("--p", "p", "nonlinearity power (> 3)", 4.0);
    s->flags.opt_double("--eps", "eps", "larger amplitude", 0.05);
    s->flags.opt_double("--eps-ratio", "eps_ratio", "second run at eps/ratio", 2.0);
    s->flags.opt_double("--t-max", "t_max", "persistence horizon", 100.0);
    s->flags.opt_double("--dr", "dr", "grid spacing", 0.05);
  }
  {
    auto* s = add_sub("report", "collect report.json files into one summary");
    s->flags.opt_string("--in", "in", "directory to scan", ".");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (auto& [name, sub] : subs) {
    if (!sub->cli->parsed()) continue;
    json config = json::object();
    if (!sub->config_file.empty()) {
      std::ifstream is(sub->config_file);
      if (!is) {
        std::fprintf(stderr, "error: cannot open config file %s\n", sub->config_file.c_str());
        return 2;
      }
      json file = json::parse(is, nullptr, false);
      if (file.is_discarded()) {
        std::fprintf(stderr, "error: malformed JSON in %s\n", sub->config_file.c_str());
        return 2;
      }
      // accept a raw config or a config-echo.json ({"subcommand", "config"})
      if (file.contains("config") && file.contains("subcommand")) file = file["config"];
      merge_into(config, file);
    }
    // flags override file values; only flags that were actually given are set
    merge_into(config, sub->flags.values);
    for (const auto& kv : sub->sets) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "error: --set expects key=value, got %s\n", kv.c_str());
        return 2;
      }
      FlagSet tmp{nullptr, json::object()};
      json val;
      std::string raw = kv.substr(eq + 1);
      json parsed = json::parse(raw, nullptr, false);
      val = parsed.is_discarded() ? json(raw) : parsed;
      tmp.put(kv.substr(0, eq), val);
      merge_into(config, tmp.values);
    }
    if (std::getenv("NLWLAB_DEBUG_CONFIG"))
      std::fprintf(stderr, "effective user config: %s\n", config.dump().c_str());
    std::string outdir = sub->outdir.empty() ? ("out-" + name) : sub->outdir;
    if (sub->outdir == "-") outdir.clear();  // explicit opt-out of file output
    return run(name, config, outdir);
  }
  std::fprintf(stderr, "error: no subcommand given\n");
  return 2;
}
