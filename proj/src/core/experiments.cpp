#include "experiments.hpp"

#include <algorithm>
#include <cmath>

namespace nlw {

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw invalid_input("fit_line: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw invalid_input("fit_line: degenerate abscissa");
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0, ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += e * e;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  f.r_squared = ss_tot > 0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  return f;
}

RadialField ProfileSpec::realize(const RadialGrid& g) const {
  std::vector<double> s(g.size());
  if (kind == "constant") {
    for (int i = 0; i < g.size(); ++i) s[i] = amp;
  } else if (kind == "gaussian") {
    for (int i = 0; i < g.size(); ++i) {
      double r = g.node(i);
      s[i] = amp * std::exp(-r * r / (width * width));
    }
  } else {
    throw invalid_input("ProfileSpec: unknown kind " + kind);
  }
  return RadialField(g, std::move(s));
}

ScalingFit lifespan_scaling(const LifespanScalingConfig& cfg) {
  if (cfg.eps_grid.size() < 5) throw invalid_input("lifespan_scaling: need >= 5 eps points");
  double lo = *std::min_element(cfg.eps_grid.begin(), cfg.eps_grid.end());
  double hi = *std::max_element(cfg.eps_grid.begin(), cfg.eps_grid.end());
  if (!(hi >= 3.0 * lo))
    throw invalid_input("lifespan_scaling: eps grid must span at least a factor of 3");

  auto pack = critical_exponents(cfg.n, cfg.p, 1.9);
  ScalingFit out;
  out.n = cfg.n;
  out.p = cfg.p;
  out.regime = pack.regime;
  out.is_log = pack.lifespan_is_log;
  out.predicted_exponent = pack.lifespan_exponent;
  out.abscissa = out.is_log ? "eps^-(p-1)" : "ln eps";
  out.r2_threshold = cfg.r2_threshold;
  out.slope_tol_rel = cfg.slope_tol_rel;

  LifespanConfig lc;
  lc.base.R = cfg.t_max + cfg.domain_margin;
  lc.base.N = static_cast<int>(std::ceil(lc.base.R / cfg.dr));
  lc.base.t_max = cfg.t_max;
  lc.base.record_stride = 64;  // lifespan runs only need termination info
  lc.refinements = cfg.refinements;

  RadialGrid pg(cfg.n, lc.base.N, lc.base.R);
  RadialField profile = cfg.profile.realize(pg);
  NonlinearitySpec nl{cfg.a, cfg.b, cfg.p};

  std::vector<ScalingPoint> pts(cfg.eps_grid.size());
  parallel_for(cfg.eps_grid.size(), cfg.jobs, [&](std::size_t i) {
    auto res = estimate_lifespan(profile, cfg.eps_grid[i], nl, lc);
    pts[i] = {res.eps, res.refinement_times.back(), res.T_extrapolated, res.censored,
              res.converged};
  });
  out.points = pts;

  std::vector<double> xs, ys;
  for (const auto& pt : pts) {
    if (pt.censored) continue;
    double x = out.is_log ? std::pow(pt.eps, -(cfg.p - 1.0)) : std::log(pt.eps);
    xs.push_back(x);
    ys.push_back(std::log(pt.T_used));
  }
  out.uncensored = static_cast<int>(xs.size());
  if (out.uncensored < 5)
    throw computation_error("lifespan_scaling: fewer than 5 uncensored points (" +
                            std::to_string(out.uncensored) + "); raise t_max or adjust eps grid");
  out.fit = fit_line(xs, ys);
  if (out.is_log)
    out.pass = out.fit.r_squared >= cfg.r2_threshold && out.fit.slope > 0.0;
  else
    out.pass = out.fit.r_squared >= cfg.r2_threshold &&
               std::fabs(out.fit.slope - out.predicted_exponent) <=
                   cfg.slope_tol_rel * std::fabs(out.predicted_exponent);
  return out;
}

// ---------------------------------------------------------------------------

KssUniformityReport kss_uniformity(const KssUniformityConfig& cfg) {
  auto pack = critical_exponents(cfg.n, cfg.p, cfg.s);
  double T_hi = *std::max_element(cfg.T_grid.begin(), cfg.T_grid.end());

  SolverConfig sc;
  sc.t_max = T_hi;
  sc.R = (T_hi + 6.0) / 0.85;  // wavefront stays inside the inner 85%
  sc.N = static_cast<int>(std::ceil(sc.R / cfg.dr));
  sc.record_stride = 8;

  KssUniformityReport rep;
  struct FamilyMember {
    std::string name;
    double width;
    SourceSpec src;
    bool forced;
  };
  // forcing must act well before the first horizon so that every T in the
  // grid sees a comparable burn-in
  std::vector<FamilyMember> family = {
      {"free-w0.8", 0.8, {}, false},
      {"free-w1.5", 1.5, {}, false},
      {"forced-early", 0.0, {1.0, 0.4, 0.15, 2.0, 0.8}, true},
      {"forced-wide", 0.0, {0.7, 0.5, 0.2, 4.0, 1.0}, true},
  };

  std::vector<InequalityReport> reports(family.size());
  parallel_for(family.size(), cfg.jobs, [&](std::size_t i) {
    const auto& fm = family[i];
    RadialGrid g(cfg.n, sc.N, sc.R);
    RadialField u1 = RadialField::zero(g);
    if (!fm.forced) {
      std::vector<double> s(sc.N);
      for (int k = 0; k < sc.N; ++k) {
        double r = g.node(k);
        s[k] = std::exp(-r * r / (fm.width * fm.width));
      }
      u1 = RadialField(g, std::move(s));
    }
    CauchyData d(RadialField::zero(g), u1);
    auto traj = evolve(d, {0.0, 0.0, 2.0}, sc, fm.src);
    SolverConfig sc2 = sc;
    sc2.N *= 2;
    RadialGrid g2(cfg.n, sc2.N, sc2.R);
    RadialField u12 = RadialField::zero(g2);
    if (!fm.forced) {
      std::vector<double> s(sc2.N);
      for (int k = 0; k < sc2.N; ++k) {
        double r = g2.node(k);
        s[k] = std::exp(-r * r / (fm.width * fm.width));
      }
      u12 = RadialField(g2, std::move(s));
    }
    CauchyData d2(RadialField::zero(g2), u12);
    auto traj2 = evolve(d2, {0.0, 0.0, 2.0}, sc2, fm.src);
    auto r = test_kss(pack, traj, cfg.T_grid, &traj2);
    r.id = "kss[" + fm.name + "]";
    reports[i] = std::move(r);
  });

  rep.pass = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    rep.pass = rep.pass && r.pass;
    for (const char* variant : {"kss1", "kss2", "kss3"}) {
      double lo = 1e300, hi = 0.0;
      for (const auto& s : r.samples)
        if (s.label.rfind(variant, 0) == 0) {
          lo = std::min(lo, s.ratio);
          hi = std::max(hi, s.ratio);
        }
      if (hi > 0.0) {
        double spread = hi / lo;
        rep.spreads.push_back({family[i].name + "/" + variant, spread});
        rep.worst_spread = std::max(rep.worst_spread, spread);
        rep.pass = rep.pass && spread <= cfg.spread_limit;
      }
    }
    rep.reports.push_back(r);
  }
  return rep;
}

// ---------------------------------------------------------------------------

Persistence2dReport global_persistence_2d(const Persistence2dConfig& cfg) {
  if (!(cfg.p > 3.0))
    throw invalid_input("global_persistence_2d: requires p > 3 (radial critical theory)");
  Persistence2dReport rep;
  rep.p = cfg.p;
  rep.s_c = 2.0 - 1.0 / (cfg.p - 1.0);

  SolverConfig sc;
  sc.t_max = cfg.t_max;
  sc.R = (cfg.t_max + 6.0) / 0.85;
  sc.N = static_cast<int>(std::ceil(sc.R / cfg.dr));
  sc.record_stride = 8;
  NonlinearitySpec nl{1.0, 0.0, cfg.p};

  std::vector<double> eps_values = {cfg.eps, cfg.eps / cfg.eps_ratio};
  std::vector<Persistence2dReport::Run> runs(eps_values.size());
  parallel_for(eps_values.size(), cfg.jobs, [&](std::size_t i) {
    double eps = eps_values[i];
    RadialGrid g(2, sc.N, sc.R);
    std::vector<double> s(sc.N);
    for (int k = 0; k < sc.N; ++k) {
      double r = g.node(k);
      s[k] = eps * std::exp(-r * r);
    }
    CauchyData d(RadialField::zero(g), RadialField(g, std::move(s)));
    auto traj = evolve(d, nl, sc);
    Persistence2dReport::Run run;
    run.eps = eps;
    run.censored = traj.termination == Termination::reached_t_max;
    run.t_end = traj.t_end;
    // |du|_{L^{p-1}_t L^inf_x} and sup_t |du|_{Hdot^{s_c-1}}
    double lp = 0.0, prev_t = 0.0, prev_v = 0.0, suph = 0.0;
    bool first = true;
    for (std::size_t m = 0; m < traj.times.size(); ++m) {
      auto grad = Trajectory::radial_derivative(traj.u[m]);
      double sup = 0.0;
      for (int k = 0; k < grad.size(); ++k)
        sup = std::max(sup, std::hypot(traj.ut[m][k], grad[k]));
      double v = std::pow(sup, cfg.p - 1.0);
      if (!first) lp += 0.5 * (traj.times[m] - prev_t) * (v + prev_v);
      prev_t = traj.times[m];
      prev_v = v;
      first = false;
      double e1 = sobolev_norm(traj.ut[m], rep.s_c - 1.0);
      double e2 = sobolev_norm(traj.u[m], rep.s_c);
      suph = std::max(suph, std::sqrt(e1 * e1 + e2 * e2));
    }
    run.lp_linf_norm = std::pow(lp, 1.0 / (cfg.p - 1.0));
    run.sup_hs_norm = suph;
    runs[i] = run;
  });
  rep.runs = runs;

  rep.eps_ratio = runs[0].eps / runs[1].eps;
  rep.norm_ratio = runs[1].lp_linf_norm > 0 ? runs[0].lp_linf_norm / runs[1].lp_linf_norm : 0.0;
  rep.linear_in_eps =
      std::fabs(rep.norm_ratio - rep.eps_ratio) <= cfg.linearity_tol * rep.eps_ratio;
  rep.blow_up_at_small_eps = !runs[1].censored;
  rep.pass = runs[0].censored && runs[1].censored && rep.linear_in_eps;
  return rep;
}

// ---------------------------------------------------------------------------

ChainStudyReport chain_rule_constant_study(const ChainStudyConfig& cfg) {
  ChainStudyReport rep;
  rep.pass = true;
  for (double p : cfg.p_grid) {
    auto pack = critical_exponents(cfg.n, p, cfg.pack_regularity);
    for (double s : cfg.s_grid) {
      for (int weighted = 0; weighted < 2; ++weighted) {
        ChainStudyRow row;
        row.s = s;
        row.p = p;
        if (!weighted) {
          row.weights = "identity";
          ChainRuleCase cs(WeightSpec::constant(cfg.n), WeightSpec::constant(cfg.n));
          cs.s = s;
          cs.p = p;
          cs.q = 2.0;
          cs.q1 = 4.0;
          cs.q2 = 4.0;
          row.report = test_chain_rule(cs, cfg.grid, cfg.ensemble, cfg.jobs);
        } else {
          char buf[64];
          std::snprintf(buf, sizeof buf, "morawetz(%.4g,%.4g)", pack.delta, pack.delta1);
          row.weights = buf;
          if (!(pack.delta > 0.0 && pack.delta < 0.5)) {
            row.report.id = "chain-rule";
            row.report.refused = true;
            row.report.refusal_reason = "exponent pack outside the admissible range: " +
                                        (pack.warning.empty() ? "delta" : pack.warning);
            row.report.finalize();
          } else {
            auto w = WeightSpec::morawetz_weight(cfg.n, pack.delta, pack.delta1);
            ChainRuleCase cs(w.pow(0.5), w.pow(-1.0));
            cs.s = s;
            cs.p = p;
            cs.q = 2.0;
            cs.q1 = 2.0;
            cs.q2 = std::numeric_limits<double>::infinity();
            row.report = test_chain_rule(cs, cfg.grid, cfg.ensemble, cfg.jobs);
          }
        }
        if (row.report.refused)
          ++rep.refused_rows;
        else
          rep.pass = rep.pass && row.report.pass;
        rep.rows.push_back(std::move(row));
      }
    }
  }
  return rep;
}

}  // namespace nlw
