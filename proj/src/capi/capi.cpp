#include "nlwlab/nlwlab.h"

#include <cstring>
#include <string>

#include "runner.hpp"
#include "selftest.hpp"
#include "solver.hpp"

using namespace nlw;

struct nlw_field {
  RadialField field;
};

struct nlw_trajectory {
  Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

nlw_status fail(nlw_status code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

template <typename Fn>
nlw_status guarded(Fn&& fn) {
  try {
    fn();
    return NLW_OK;
  } catch (const invalid_input& e) {
    return fail(NLW_ERR_INVALID, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(NLW_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(NLW_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(NLW_ERR_RUNTIME, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_json_arg(const char* text, const char* what) {
  if (!text || !*text) return json::object();
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw invalid_input(std::string("malformed JSON in ") + what);
  return j;
}

WeightSpec weight_arg(const char* weight_json, int n) {
  json j = parse_json_arg(weight_json, "weight_json");
  std::string kind = j.value("kind", "morawetz");
  if (kind == "constant") return WeightSpec::constant(n);
  if (kind == "power") return WeightSpec::power(n, j.value("a", -0.5));
  if (kind == "product") return WeightSpec::product_power(n, j.value("a", -0.5), j.value("b", 0.0));
  if (kind == "morawetz")
    return WeightSpec::morawetz_weight(n, j.value("delta", 0.125), j.value("delta1", 0.0));
  throw invalid_input("unknown weight kind: " + kind);
}

}  // namespace

extern "C" {

const char* nlw_version(void) { return "0.1.0"; }

const char* nlw_last_error(void) { return g_last_error.c_str(); }

void nlw_string_free(char* s) { std::free(s); }

nlw_status nlw_field_create(int n, int N, double R, const double* samples, nlw_field** out) {
  if (!samples || !out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] {
    RadialGrid g(n, N, R);
    std::vector<double> s(samples, samples + N);
    *out = new nlw_field{RadialField(g, std::move(s))};
  });
}

nlw_status nlw_field_gaussian(int n, int N, double R, double amp, double center, double width,
                              nlw_field** out) {
  if (!out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] {
    RadialGrid g(n, N, R);
    std::vector<double> s(N);
    for (int i = 0; i < N; ++i) {
      double r = g.node(i);
      double a = (r - center) / width, b = (r + center) / width;
      s[i] = amp * (std::exp(-0.5 * a * a) + (center > 0 ? std::exp(-0.5 * b * b) : 0.0));
    }
    *out = new nlw_field{RadialField(g, std::move(s))};
  });
}

void nlw_field_free(nlw_field* f) { delete f; }

nlw_status nlw_field_info(const nlw_field* f, int* n, int* N, double* R) {
  if (!f) return fail(NLW_ERR_INVALID, "null field");
  if (n) *n = f->field.grid().dim();
  if (N) *N = f->field.grid().size();
  if (R) *R = f->field.grid().radius();
  return NLW_OK;
}

nlw_status nlw_field_values(const nlw_field* f, double* out) {
  if (!f || !out) return fail(NLW_ERR_INVALID, "null pointer argument");
  std::memcpy(out, f->field.samples().data(), sizeof(double) * f->field.size());
  return NLW_OK;
}

nlw_status nlw_field_save(const nlw_field* f, const char* path) {
  if (!f || !path) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] { f->field.save_binary(path); });
}

nlw_status nlw_field_load(const char* path, nlw_field** out) {
  if (!path || !out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] { *out = new nlw_field{RadialField::load_binary(path)}; });
}

nlw_status nlw_field_save_csv(const nlw_field* f, const char* path) {
  if (!f || !path) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] { f->field.save_csv(path); });
}

nlw_status nlw_fractional_derivative(const nlw_field* f, double s, nlw_field** out) {
  if (!f || !out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] { *out = new nlw_field{fractional_derivative(f->field, s)}; });
}

nlw_status nlw_sobolev_norm(const nlw_field* f, double s, int homogeneous, double* out) {
  if (!f || !out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] { *out = sobolev_norm(f->field, s, homogeneous != 0); });
}

nlw_status nlw_besov_half_norm(const nlw_field* f, double* out) {
  if (!f || !out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] { *out = besov_norm_half(f->field); });
}

nlw_status nlw_lp_block(const nlw_field* f, int j, nlw_field** out) {
  if (!f || !out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] { *out = new nlw_field{lp_block(f->field, j).field}; });
}

nlw_status nlw_exponents(int n, double p, double s, char** json_out) {
  if (!json_out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] { *json_out = dup_string(to_json(critical_exponents(n, p, s)).dump(2)); });
}

nlw_status nlw_weight_eval(const char* weight_json, int n, double r, double* out) {
  if (!out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] { *out = weight_arg(weight_json, n).eval(r); });
}

nlw_status nlw_weight_a1(const char* weight_json, int n, char** json_out) {
  if (!json_out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] {
    *json_out = dup_string(to_json(estimate_a1_constant(weight_arg(weight_json, n))).dump(2));
  });
}

nlw_status nlw_weight_ap(const char* weight_json, int n, double p, char** json_out) {
  if (!json_out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] {
    *json_out = dup_string(to_json(estimate_ap_constant(weight_arg(weight_json, n), p)).dump(2));
  });
}

nlw_status nlw_evolve(const nlw_field* u0, const nlw_field* u1, double a, double b, double p,
                      double t_max, double cfl, const char* options_json, nlw_trajectory** out) {
  if (!u0 || !u1 || !out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] {
    json opts = parse_json_arg(options_json, "options_json");
    SolverConfig cfg;
    cfg.R = u0->field.grid().radius();
    cfg.N = u0->field.grid().size();
    cfg.t_max = t_max;
    cfg.cfl = cfl;
    cfg.record_stride = opts.value("record_stride", 4);
    cfg.blowup_threshold = opts.value("blowup_threshold", 1e6);
    SourceSpec src;
    if (opts.contains("source")) {
      const auto& sj = opts.at("source");
      src.amp = sj.value("amp", 0.0);
      src.t0 = sj.value("t0", 1.0);
      src.sigma_t = sj.value("sigma_t", 0.5);
      src.r0 = sj.value("r0", 1.0);
      src.sigma_r = sj.value("sigma_r", 0.5);
    }
    CauchyData d(u0->field, u1->field);
    *out = new nlw_trajectory{evolve(d, NonlinearitySpec{a, b, p}, cfg, src)};
  });
}

void nlw_trajectory_free(nlw_trajectory* t) { delete t; }

nlw_status nlw_trajectory_summary(const nlw_trajectory* t, char** json_out) {
  if (!t || !json_out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] { *json_out = dup_string(trajectory_summary(t->traj).dump(2)); });
}

nlw_status nlw_trajectory_size(const nlw_trajectory* t, int* count) {
  if (!t || !count) return fail(NLW_ERR_INVALID, "null pointer argument");
  *count = static_cast<int>(t->traj.times.size());
  return NLW_OK;
}

nlw_status nlw_trajectory_field(const nlw_trajectory* t, int index, int which, nlw_field** out) {
  if (!t || !out) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] {
    if (index < 0 || index >= static_cast<int>(t->traj.times.size()))
      throw invalid_input("trajectory index out of range");
    const RadialField* src = nullptr;
    switch (which) {
      case 0: src = &t->traj.u[index]; break;
      case 1: src = &t->traj.ut[index]; break;
      case 2: src = &t->traj.forcing[index]; break;
      default: throw invalid_input("which must be 0 (u), 1 (u_t) or 2 (forcing)");
    }
    *out = new nlw_field{*src};
  });
}

nlw_status nlw_trajectory_save(const nlw_trajectory* t, const char* dir) {
  if (!t || !dir) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] { t->traj.save(dir); });
}

nlw_status nlw_propagate(const nlw_field* u0, const nlw_field* u1, double t, nlw_field** out_u,
                         nlw_field** out_ut) {
  if (!u0 || !u1 || !out_u || !out_ut) return fail(NLW_ERR_INVALID, "null pointer argument");
  return guarded([&] {
    auto res = linear_propagator(CauchyData(u0->field, u1->field), t);
    *out_u = new nlw_field{std::move(res.u0)};
    *out_ut = new nlw_field{std::move(res.u1)};
  });
}

nlw_status nlw_run(const char* subcommand, const char* config_json, const char* outdir,
                   char** summary_json_out, int* exit_code) {
  if (!subcommand) return fail(NLW_ERR_INVALID, "null subcommand");
  return guarded([&] {
    json cfg = parse_json_arg(config_json, "config_json");
    auto outcome = run_subcommand(subcommand, cfg, outdir ? outdir : "");
    if (summary_json_out) *summary_json_out = dup_string(outcome.summary.dump(2));
    if (exit_code) *exit_code = outcome.exit_code;
  });
}

}  // extern "C"
