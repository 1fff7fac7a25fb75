#include "runner.hpp"

#include <filesystem>
#include <fstream>

#include "selftest.hpp"

namespace nlw {

namespace {

void merge_into(json& base, const json& user) {
  if (!user.is_object()) {
    base = user;
    return;
  }
  for (auto it = user.begin(); it != user.end(); ++it) {
    if (base.contains(it.key()) && base[it.key()].is_object() && it.value().is_object())
      merge_into(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
}

EnsembleSpec ensemble_from(const json& j) {
  EnsembleSpec es;
  es.seed = j.value("seed", 1ULL);
  es.size = j.value("size", 200);
  es.family = family_from_name(j.value("family", "gaussian-bumps"));
  es.amp_lo = j.value("amp_lo", 0.5);
  es.amp_hi = j.value("amp_hi", 2.0);
  es.width_lo = j.value("width_lo", 0.1);
  es.width_hi = j.value("width_hi", 2.0);
  es.center_lo = j.value("center_lo", 0.0);
  es.center_hi = j.value("center_hi", 0.5);
  return es;
}

json ensemble_defaults() {
  return json{{"seed", 1},        {"size", 200},      {"family", "gaussian-bumps"},
              {"amp_lo", 0.5},    {"amp_hi", 2.0},    {"width_lo", 0.1},
              {"width_hi", 2.0},  {"center_lo", 0.0}, {"center_hi", 0.5}};
}

WeightSpec weight_from(const json& j, int n) {
  std::string kind = j.value("kind", "morawetz");
  if (kind == "constant") return WeightSpec::constant(n);
  if (kind == "power") return WeightSpec::power(n, j.value("a", -0.5));
  if (kind == "product") return WeightSpec::product_power(n, j.value("a", -0.5), j.value("b", 0.0));
  if (kind == "morawetz")
    return WeightSpec::morawetz_weight(n, j.value("delta", 0.125), j.value("delta1", 0.0));
  throw invalid_input("unknown weight kind: " + kind);
}

ProfileSpec profile_from(const json& j) {
  ProfileSpec p;
  p.kind = j.value("kind", "gaussian");
  p.width = j.value("width", 1.0);
  p.amp = j.value("amp", 1.0);
  return p;
}

json selftest_json(const SelfTestReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back(
        {{"name", c.name}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  return json{{"checks", checks}, {"pass", rep.pass}};
}

// default eps grids for the lifespan-law regimes measured at desk scale; the
// critical window is narrow by design (T grows like exp(c/eps) with c ~ 19
// for the unit gaussian profile)
json scaling_defaults(int n, double p) {
  if (n == 3 && std::fabs(p - 2.0) < 1e-9)
    return json{{"eps_grid", {4.2, 3.3, 2.6, 2.1, 1.75, 1.5, 1.4}},
                {"t_max", 450.0},
                {"dr", 0.1},
                {"refinements", 1}};
  if (n == 3 && std::fabs(p - 1.5) < 1e-9)
    return json{{"eps_grid", {1.5, 1.2, 1.0, 0.8, 0.65, 0.5}},
                {"t_max", 60.0},
                {"dr", 0.08},
                {"refinements", 2}};
  if (n == 2 && std::fabs(p - 2.0) < 1e-9)
    return json{{"eps_grid", {0.75, 0.6, 0.5, 0.42, 0.34, 0.25}},
                {"t_max", 260.0},
                {"dr", 0.1},
                {"refinements", 3}};
  return json{{"eps_grid", json::array()}, {"t_max", 100.0}, {"dr", 0.08}, {"refinements", 2}};
}

struct Ctx {
  json cfg;
  std::string outdir;
  void write(const std::string& name, const std::string& content) const {
    if (!outdir.empty()) write_text(outdir + "/" + name, content);
  }
};

json run_exponents(const Ctx& c) {
  auto e = critical_exponents(c.cfg.at("n").get<int>(), c.cfg.at("p").get<double>(),
                              c.cfg.at("s").get<double>());
  json out = to_json(e);
  c.write("report.json", out.dump(2) + "\n");
  return out;
}

json run_weight_check(const Ctx& c) {
  int n = c.cfg.at("n").get<int>();
  int jobs = c.cfg.value("jobs", 0);
  if (c.cfg.value("suite", false)) {
    auto rep = weight_selftest(jobs);
    json out = selftest_json(rep);
    c.write("report.json", out.dump(2) + "\n");
    return out;
  }
  auto w = weight_from(c.cfg.at("weight"), n);
  SamplingPlan plan;
  const auto& pj = c.cfg.at("plan");
  plan.center_count = pj.value("centers", 16);
  plan.radius_count = pj.value("radii", 16);
  plan.refinements = pj.value("refinements", 3);
  plan.quadrature_panels = pj.value("panels", 64);
  double p = c.cfg.value("p_index", 1.0);
  auto rep = p <= 1.0 ? estimate_a1_constant(w, plan, jobs) : estimate_ap_constant(w, p, plan, jobs);
  json out = to_json(rep);
  out["weight"] = w.describe();
  c.write("report.json", out.dump(2) + "\n");
  return out;
}

json run_spectral_selftest(const Ctx& c) {
  auto rep = spectral_selftest(c.cfg.value("N", 1024), c.cfg.value("R", 12.0));
  json out = selftest_json(rep);
  c.write("report.json", out.dump(2) + "\n");
  return out;
}

json run_ineq_trace(const Ctx& c) {
  GridSpec gs{c.cfg.value("n", 3), c.cfg.value("N", 1024), c.cfg.value("R", 40.0)};
  auto es = ensemble_from(c.cfg.at("ensemble"));
  json out;
  json reports = json::array();
  bool all = true;
  std::vector<double> s_list;
  if (c.cfg.contains("s_list"))
    s_list = c.cfg.at("s_list").get<std::vector<double>>();
  else
    s_list = {c.cfg.value("s", 0.75)};
  SvgSeries scatter;
  scatter.label = "max ratio";
  for (double s : s_list) {
    auto rep = test_trace(gs, s, es, c.cfg.value("jobs", 0));
    if (c.cfg.value("besov", false)) rep = test_besov_trace(gs, es, c.cfg.value("jobs", 0));
    reports.push_back(to_json(rep));
    all = all && rep.pass;
    scatter.x.push_back(s);
    scatter.y.push_back(rep.max_ratio);
    if (s == s_list.front()) c.write("summary.csv", csv_of(rep));
  }
  out["reports"] = reports;
  out["pass"] = all;
  c.write("report.json", out.dump(2) + "\n");
  c.write("ratio_vs_s.svg", svg_plot("trace ratios", "s", "max ratio", {scatter}));
  return out;
}

json run_ineq_chain(const Ctx& c) {
  int jobs = c.cfg.value("jobs", 0);
  if (c.cfg.value("study", false)) {
    ChainStudyConfig sc;
    sc.n = c.cfg.value("n", 3);
    sc.grid = GridSpec{sc.n, c.cfg.value("N", 1024), c.cfg.value("R", 40.0)};
    sc.ensemble = ensemble_from(c.cfg.at("ensemble"));
    sc.jobs = jobs;
    auto rep = chain_rule_constant_study(sc);
    json out = to_json(rep);
    c.write("report.json", out.dump(2) + "\n");
    c.write("summary.csv", csv_of(rep));
    // heatmap of max ratios over (s rows) x (p, weight-kind columns)
    std::vector<std::string> rows_s, cols;
    std::vector<std::vector<double>> cells;
    for (const auto& row : rep.rows) {
      char rs[32], csl[64];
      std::snprintf(rs, sizeof rs, "s=%g", row.s);
      std::snprintf(csl, sizeof csl, "p=%g %s", row.p,
                    row.weights == "identity" ? "id" : "morawetz");
      std::string rlab = rs, clab = csl;
      if (std::find(rows_s.begin(), rows_s.end(), rlab) == rows_s.end()) rows_s.push_back(rlab);
      if (std::find(cols.begin(), cols.end(), clab) == cols.end()) cols.push_back(clab);
    }
    cells.assign(rows_s.size(), std::vector<double>(cols.size(),
                                                    std::numeric_limits<double>::quiet_NaN()));
    for (const auto& row : rep.rows) {
      char rs[32], csl[64];
      std::snprintf(rs, sizeof rs, "s=%g", row.s);
      std::snprintf(csl, sizeof csl, "p=%g %s", row.p,
                    row.weights == "identity" ? "id" : "morawetz");
      auto ri = std::find(rows_s.begin(), rows_s.end(), std::string(rs)) - rows_s.begin();
      auto ci = std::find(cols.begin(), cols.end(), std::string(csl)) - cols.begin();
      if (!row.report.refused) cells[ri][ci] = row.report.max_ratio;
    }
    c.write("chain_heatmap.svg", svg_heatmap("chain-rule max ratios", cols, rows_s, cells));
    return out;
  }
  int n = c.cfg.value("n", 3);
  GridSpec gs{n, c.cfg.value("N", 1024), c.cfg.value("R", 40.0)};
  std::string wsel = c.cfg.value("weights", "dual");
  double q2 = 0.0;
  ChainRuleCase cs(WeightSpec::constant(n), WeightSpec::constant(n));
  if (wsel == "dual") {
    auto pack = critical_exponents(n, c.cfg.value("pack_p", 2.0), c.cfg.value("pack_s", 1.75));
    auto w = WeightSpec::morawetz_weight(n, pack.delta, pack.delta1);
    cs = ChainRuleCase(w.pow(0.5), w.pow(-1.0));
    q2 = std::numeric_limits<double>::infinity();
  } else if (wsel == "identity") {
    q2 = c.cfg.value("q2", 4.0);
  } else {
    throw invalid_input("ineq-chain: weights must be 'dual' or 'identity'");
  }
  cs.s = c.cfg.value("s", 0.5);
  cs.p = c.cfg.value("p", 2.0);
  cs.q = c.cfg.value("q", 2.0);
  cs.q1 = c.cfg.value("q1", wsel == "dual" ? 2.0 : 4.0);
  cs.q2 = q2;
  auto rep = test_chain_rule(cs, gs, ensemble_from(c.cfg.at("ensemble")), jobs);
  json out = to_json(rep);
  c.write("report.json", out.dump(2) + "\n");
  c.write("summary.csv", csv_of(rep));
  SvgSeries pts;
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    pts.x.push_back(double(i));
    pts.y.push_back(rep.samples[i].ratio);
  }
  c.write("ratio_scatter.svg",
          svg_plot("chain-rule ratios", "sample", "lhs/rhs", {pts}));
  return out;
}

json run_ineq_kss(const Ctx& c) {
  KssUniformityConfig kc;
  kc.n = c.cfg.value("n", 3);
  kc.p = c.cfg.value("p", 2.5);
  kc.s = c.cfg.value("s", 1.9);
  if (c.cfg.contains("T_grid")) kc.T_grid = c.cfg.at("T_grid").get<std::vector<double>>();
  kc.dr = c.cfg.value("dr", 0.04);
  kc.spread_limit = c.cfg.value("spread_limit", 3.0);
  kc.jobs = c.cfg.value("jobs", 0);
  auto rep = kss_uniformity(kc);
  json out = to_json(rep);
  c.write("report.json", out.dump(2) + "\n");
  c.write("summary.csv", csv_of(rep));
  std::vector<SvgSeries> series;
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (std::size_t i = 0; i < rep.reports.size(); ++i) {
    SvgSeries s;
    s.label = rep.reports[i].id;
    s.color = colors[i % 4];
    for (const auto& smp : rep.reports[i].samples) {
      auto pos = smp.label.find("T=");
      s.x.push_back(std::stod(smp.label.substr(pos + 2)));
      s.y.push_back(smp.ratio);
    }
    series.push_back(std::move(s));
  }
  c.write("kss_ratio_vs_T.svg", svg_plot("KSS ratios", "T", "lhs/rhs", series, true, false));
  return out;
}

json run_ineq_strichartz(const Ctx& c) {
  std::vector<double> q_list = {2.5, 3.0, 4.0, 6.0};
  if (c.cfg.contains("q_list")) q_list = c.cfg.at("q_list").get<std::vector<double>>();
  double t_big = c.cfg.value("t_big", 8.0);
  double dr = c.cfg.value("dr", 0.05);

  SolverConfig sc;
  sc.t_max = t_big;
  sc.R = (t_big + 6.0) / 0.85;
  sc.N = static_cast<int>(std::ceil(sc.R / dr));
  sc.record_stride = 4;

  auto make = [&](int N) {
    RadialGrid g(2, N, sc.R);
    std::vector<double> s(N);
    for (int i = 0; i < N; ++i) {
      double r = g.node(i);
      s[i] = std::exp(-r * r / (c.cfg.value("width", 1.0) * c.cfg.value("width", 1.0)));
    }
    CauchyData d(RadialField::zero(g), RadialField(g, std::move(s)));
    SolverConfig scc = sc;
    scc.N = N;
    SourceSpec src;
    if (c.cfg.value("forced", false)) src = SourceSpec{0.5, 0.5, 0.2, 1.5, 0.6};
    return evolve(d, {0.0, 0.0, 2.0}, scc, src);
  };
  std::vector<Trajectory> coarse = {make(sc.N)};
  std::vector<Trajectory> fine = {make(2 * sc.N)};

  json out;
  json reports = json::array();
  bool all = true;
  SvgSeries pts;
  pts.label = "max ratio";
  for (double q : q_list) {
    auto rep = test_strichartz_2d(q, coarse, &fine);
    reports.push_back(to_json(rep));
    all = all && rep.pass;
    pts.x.push_back(q);
    pts.y.push_back(rep.max_ratio);
  }
  out["reports"] = reports;
  out["pass"] = all;
  c.write("report.json", out.dump(2) + "\n");
  c.write("ratio_vs_q.svg", svg_plot("generalized Strichartz ratios", "q", "max ratio", {pts}));
  return out;
}

json run_solve(const Ctx& c) {
  int n = c.cfg.value("n", 3);
  SolverConfig sc;
  sc.R = c.cfg.value("R", 16.0);
  sc.N = c.cfg.value("N", 1024);
  sc.cfl = c.cfg.value("cfl", 0.5);
  sc.t_max = c.cfg.value("t_max", 10.0);
  sc.record_stride = c.cfg.value("record_stride", 4);
  sc.blowup_threshold = c.cfg.value("blowup_threshold", 1e6);
  RadialGrid g(n, sc.N, sc.R);
  const auto& dj = c.cfg.at("data");
  auto profile = profile_from(dj).realize(g);
  double eps = dj.value("eps", 1.0);
  std::vector<double> u1(g.size());
  for (int i = 0; i < g.size(); ++i) u1[i] = eps * profile[i];
  std::vector<double> u0(g.size(), 0.0);
  double u0_amp = dj.value("u0_amp", 0.0);
  for (int i = 0; i < g.size(); ++i) u0[i] = u0_amp * profile[i];
  CauchyData d(RadialField(g, std::move(u0)), RadialField(g, std::move(u1)));
  NonlinearitySpec nl{c.cfg.value("a", 1.0), c.cfg.value("b", 0.0), c.cfg.value("p", 2.0)};
  SourceSpec src;
  if (c.cfg.contains("source")) {
    const auto& sj = c.cfg.at("source");
    src.amp = sj.value("amp", 0.0);
    src.t0 = sj.value("t0", 1.0);
    src.sigma_t = sj.value("sigma_t", 0.5);
    src.r0 = sj.value("r0", 1.0);
    src.sigma_r = sj.value("sigma_r", 0.5);
  }
  auto traj = evolve(d, nl, sc, src);
  json out = trajectory_summary(traj);
  if (!c.outdir.empty()) traj.save(c.outdir + "/trajectory");
  c.write("report.json", out.dump(2) + "\n");
  return out;
}

json run_lifespan(const Ctx& c) {
  int n = c.cfg.value("n", 3);
  NonlinearitySpec nl{c.cfg.value("a", 1.0), c.cfg.value("b", 0.0), c.cfg.value("p", 2.0)};
  auto pj = c.cfg.at("profile");
  ProfileSpec prof = profile_from(pj);
  double eps = c.cfg.value("eps", 1.0);
  LifespanConfig lc;
  if (prof.kind == "constant" && c.cfg.contains("lambda")) {
    double lam = c.cfg.at("lambda").get<double>();
    eps = 1.0 / lam;
    lc.base.R = lam + 2.5;
    lc.base.t_max = 2.5 * lam;
  } else {
    lc.base.R = c.cfg.value("R", 40.0);
    lc.base.t_max = c.cfg.value("t_max", 30.0);
  }
  double dr = c.cfg.value("dr", 0.02);
  lc.base.N = static_cast<int>(std::ceil(lc.base.R / dr));
  lc.base.record_stride = 64;
  lc.refinements = c.cfg.value("refinements", 2);
  RadialGrid g(n, lc.base.N, lc.base.R);
  auto res = estimate_lifespan(prof.realize(g), eps, nl, lc);
  json out = to_json(res);
  c.write("report.json", out.dump(2) + "\n");
  return out;
}

json run_scaling(const Ctx& c) {
  LifespanScalingConfig sc;
  sc.n = c.cfg.value("n", 3);
  sc.p = c.cfg.value("p", 2.0);
  sc.a = c.cfg.value("a", 1.0);
  sc.b = c.cfg.value("b", 0.0);
  json defs = scaling_defaults(sc.n, sc.p);
  json eff = defs;
  merge_into(eff, c.cfg);
  sc.eps_grid = eff.at("eps_grid").get<std::vector<double>>();
  if (sc.eps_grid.empty())
    throw invalid_input("scaling: no default eps grid for this (n, p); provide eps_grid");
  sc.t_max = eff.at("t_max").get<double>();
  sc.dr = eff.at("dr").get<double>();
  sc.refinements = eff.at("refinements").get<int>();
  sc.profile = profile_from(c.cfg.value("profile", json::object()));
  sc.r2_threshold = c.cfg.value("r2_threshold", 0.95);
  sc.slope_tol_rel = c.cfg.value("slope_tol_rel", 0.2);
  sc.jobs = c.cfg.value("jobs", 0);
  auto fit = lifespan_scaling(sc);
  json out = to_json(fit);
  c.write("report.json", out.dump(2) + "\n");
  c.write("summary.csv", csv_of(fit));
  // T vs eps, log axes
  SvgSeries pts;
  pts.label = "T(eps)";
  for (const auto& p : fit.points)
    if (!p.censored) {
      pts.x.push_back(p.eps);
      pts.y.push_back(p.T_used);
    }
  c.write("T_vs_eps.svg", svg_plot("lifespan vs eps", "eps", "T", {pts}, true, true));
  // fit plot in the regression coordinates
  SvgSeries data, line;
  data.label = "data";
  line.label = "fit";
  line.line = true;
  line.color = "#d62728";
  for (const auto& p : fit.points) {
    if (p.censored) continue;
    double x = fit.is_log ? std::pow(p.eps, -(sc.p - 1.0)) : std::log(p.eps);
    data.x.push_back(x);
    data.y.push_back(std::log(p.T_used));
  }
  if (!data.x.empty()) {
    double lo = *std::min_element(data.x.begin(), data.x.end());
    double hi = *std::max_element(data.x.begin(), data.x.end());
    line.x = {lo, hi};
    line.y = {fit.fit.slope * lo + fit.fit.intercept, fit.fit.slope * hi + fit.fit.intercept};
  }
  c.write("scaling_fit.svg",
          svg_plot("lifespan law fit", fit.abscissa, "ln T", {data, line}));
  return out;
}

json run_persist_2d(const Ctx& c) {
  Persistence2dConfig pc;
  pc.p = c.cfg.value("p", 4.0);
  pc.eps = c.cfg.value("eps", 0.05);
  pc.eps_ratio = c.cfg.value("eps_ratio", 2.0);
  pc.t_max = c.cfg.value("t_max", 100.0);
  pc.dr = c.cfg.value("dr", 0.05);
  pc.linearity_tol = c.cfg.value("linearity_tol", 0.25);
  pc.jobs = c.cfg.value("jobs", 0);
  auto rep = global_persistence_2d(pc);
  json out = to_json(rep);
  c.write("report.json", out.dump(2) + "\n");
  std::string csv = "eps,censored,t_end,lp_linf_norm,sup_hs_norm\n";
  char line[160];
  for (const auto& run : rep.runs) {
    std::snprintf(line, sizeof line, "%.17g,%d,%.17g,%.17g,%.17g\n", run.eps,
                  run.censored ? 1 : 0, run.t_end, run.lp_linf_norm, run.sup_hs_norm);
    csv += line;
  }
  c.write("summary.csv", csv);
  return out;
}

json run_report(const Ctx& c) {
  std::string in = c.cfg.value("in", ".");
  if (!std::filesystem::is_directory(in))
    throw invalid_input("report: input directory not found: " + in);
  json rows = json::array();
  std::string csv = "path,pass\n";
  bool all = true;
  int found = 0;
  std::vector<std::string> paths;
  for (const auto& e : std::filesystem::recursive_directory_iterator(in))
    if (e.is_regular_file() && e.path().filename() == "report.json")
      paths.push_back(e.path().string());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    std::ifstream is(p);
    json j = json::parse(is, nullptr, false);
    if (j.is_discarded()) continue;
    ++found;
    json row;
    row["path"] = p;
    if (j.contains("pass")) {
      row["pass"] = j["pass"];
      if (j["pass"].is_boolean()) all = all && j["pass"].get<bool>();
    }
    rows.push_back(row);
    csv += p + "," + (j.value("pass", true) ? "1" : "0") + "\n";
  }
  json out;
  out["found"] = found;
  out["rows"] = rows;
  if (found > 0) out["pass"] = all;
  c.write("summary.csv", csv);
  return out;
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {
      "exponents",  "weight-check", "spectral-selftest", "ineq-trace",
      "ineq-chain", "ineq-kss",     "ineq-strichartz",   "solve",
      "lifespan",   "scaling",      "persist-2d",        "report"};
  return names;
}

json default_config(const std::string& cmd) {
  if (cmd == "exponents") return json{{"n", 3}, {"p", 2.0}, {"s", 1.75}};
  if (cmd == "weight-check")
    return json{{"n", 3},
                {"suite", false},
                {"p_index", 1.0},
                {"jobs", 0},
                {"weight", {{"kind", "morawetz"}, {"delta", 0.125}, {"delta1", 0.0}}},
                {"plan", {{"centers", 16}, {"radii", 16}, {"refinements", 3}, {"panels", 64}}}};
  if (cmd == "spectral-selftest") return json{{"N", 1024}, {"R", 12.0}};
  if (cmd == "ineq-trace")
    return json{{"n", 3},   {"s", 0.75},  {"besov", false},
                {"N", 1024}, {"R", 40.0}, {"jobs", 0},
                {"ensemble", ensemble_defaults()}};
  if (cmd == "ineq-chain")
    return json{{"n", 3},      {"study", false}, {"weights", "dual"},
                {"s", 0.5},    {"p", 2.0},       {"q", 2.0},
                {"q1", 2.0},   {"pack_p", 2.0},  {"pack_s", 1.75},
                {"N", 1024},   {"R", 40.0},      {"jobs", 0},
                {"ensemble", ensemble_defaults()}};
  if (cmd == "ineq-kss")
    return json{{"n", 3},       {"p", 2.5},
                {"s", 1.9},     {"T_grid", {1.0, 4.0, 16.0, 64.0}},
                {"dr", 0.04},   {"spread_limit", 3.0},
                {"jobs", 0}};
  if (cmd == "ineq-strichartz")
    return json{{"q_list", {2.5, 3.0, 4.0, 6.0}}, {"t_big", 8.0}, {"dr", 0.05},
                {"width", 1.0}, {"forced", false}, {"jobs", 0}};
  if (cmd == "solve")
    return json{{"n", 3},     {"p", 2.0},  {"a", 1.0},   {"b", 0.0},
                {"R", 16.0},  {"N", 1024}, {"cfl", 0.5}, {"t_max", 10.0},
                {"record_stride", 4}, {"blowup_threshold", 1e6},
                {"data", {{"kind", "gaussian"}, {"width", 1.0}, {"amp", 1.0}, {"eps", 1.0}, {"u0_amp", 0.0}}}};
  if (cmd == "lifespan")
    return json{{"n", 3}, {"p", 2.0}, {"a", 1.0}, {"b", 0.0}, {"eps", 1.0},
                {"dr", 0.02}, {"refinements", 2}, {"R", 40.0}, {"t_max", 30.0},
                {"profile", {{"kind", "gaussian"}, {"width", 1.0}, {"amp", 1.0}}}};
  if (cmd == "scaling")
    return json{{"n", 3}, {"p", 2.0}, {"a", 1.0}, {"b", 0.0},
                {"r2_threshold", 0.95}, {"slope_tol_rel", 0.2}, {"jobs", 0},
                {"profile", {{"kind", "gaussian"}, {"width", 1.0}, {"amp", 1.0}}}};
  if (cmd == "persist-2d")
    return json{{"p", 4.0},    {"eps", 0.05}, {"eps_ratio", 2.0},
                {"t_max", 100.0}, {"dr", 0.05}, {"linearity_tol", 0.25}, {"jobs", 0}};
  if (cmd == "report") return json{{"in", "."}};
  throw invalid_input("unknown subcommand: " + cmd);
}

RunOutcome run_subcommand(const std::string& cmd, const json& user, const std::string& outdir) {
  json cfg = default_config(cmd);
  if (!user.is_null()) merge_into(cfg, user);
  Ctx ctx{cfg, outdir};
  if (!outdir.empty()) {
    std::filesystem::create_directories(outdir);
    json echo;
    echo["subcommand"] = cmd;
    echo["config"] = cfg;
    write_text(outdir + "/config-echo.json", echo.dump(2) + "\n");
  }
  json summary;
  if (cmd == "exponents") summary = run_exponents(ctx);
  else if (cmd == "weight-check") summary = run_weight_check(ctx);
  else if (cmd == "spectral-selftest") summary = run_spectral_selftest(ctx);
  else if (cmd == "ineq-trace") summary = run_ineq_trace(ctx);
  else if (cmd == "ineq-chain") summary = run_ineq_chain(ctx);
  else if (cmd == "ineq-kss") summary = run_ineq_kss(ctx);
  else if (cmd == "ineq-strichartz") summary = run_ineq_strichartz(ctx);
  else if (cmd == "solve") summary = run_solve(ctx);
  else if (cmd == "lifespan") summary = run_lifespan(ctx);
  else if (cmd == "scaling") summary = run_scaling(ctx);
  else if (cmd == "persist-2d") summary = run_persist_2d(ctx);
  else if (cmd == "report") summary = run_report(ctx);
  else throw invalid_input("unknown subcommand: " + cmd);

  RunOutcome out;
  out.summary = std::move(summary);
  out.exit_code = 0;
  if (out.summary.contains("pass") && out.summary["pass"].is_boolean() &&
      !out.summary["pass"].get<bool>())
    out.exit_code = 1;
  return out;
}

}  // namespace nlw
