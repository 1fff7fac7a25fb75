#include "inequality.hpp"

#include <algorithm>
#include <cmath>

#include "transform.hpp"

namespace nlw {

namespace {

double weighted_lq(const RadialField& f, const WeightSpec& w, double q) {
  const auto& g = f.grid();
  const int n = g.dim();
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    double r = g.node(i);
    s += std::pow(std::fabs(w.eval(r) * f[i]), q) * std::pow(r, n - 1) * g.quad_weight(i);
  }
  return std::pow(unit_sphere_measure(n) * s, 1.0 / q);
}

// grid sup of |w f| with a Richardson-extrapolated companion (the grid sup
// under-reports the true sup; extrapolation keeps rhs factors honest)
double weighted_sup_extrapolated(const RadialField& f, const WeightSpec& w) {
  double sup_full = 0.0, sup_half = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    double v = std::fabs(w.eval(f.grid().node(i)) * f[i]);
    sup_full = std::max(sup_full, v);
    if (i % 2 == 0) sup_half = std::max(sup_half, v);
  }
  return std::max(sup_full, sup_full + (sup_full - sup_half));
}

std::vector<double> sorted_ratios(const std::vector<IneqSample>& samples) {
  std::vector<double> r;
  r.reserve(samples.size());
  for (const auto& s : samples) r.push_back(s.ratio);
  std::sort(r.begin(), r.end());
  return r;
}

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  double pos = q * (sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double fr = pos - lo;
  return (1 - fr) * sorted[lo] + fr * sorted[hi];
}

}  // namespace

void InequalityReport::finalize(double stability_limit) {
  if (refused) {
    pass = false;
    return;
  }
  auto r = sorted_ratios(samples);
  max_ratio = r.empty() ? 0.0 : r.back();
  q25 = quantile(r, 0.25);
  q50 = quantile(r, 0.50);
  q90 = quantile(r, 0.90);
  bool finite = std::isfinite(max_ratio);
  pass = finite;
  if (stability_checked) {
    stability_change = std::fabs(max_ratio_fine - max_ratio_coarse) /
                       std::max(1e-300, std::fabs(max_ratio_coarse));
    pass = pass && stability_change <= stability_limit;
  }
}

// ---------------------------------------------------------------------------

InequalityReport test_trace(const GridSpec& gs, double s, const EnsembleSpec& es, int jobs) {
  InequalityReport rep;
  rep.id = "trace";
  rep.params = {{"n", double(gs.n)}, {"s", s}, {"N", double(gs.N)}, {"R", gs.R},
                {"seed", double(es.seed)}, {"size", double(es.size)}};
  if (!(s > 0.5 && s < 0.5 * gs.n)) {
    rep.refused = true;
    rep.refusal_reason = "s outside (1/2, n/2): the trace estimate fails there";
    rep.finalize();
    return rep;
  }
  RadialGrid coarse(gs.n, gs.N, gs.R);
  RadialGrid fine(gs.n, 2 * gs.N, gs.R);
  auto members = draw_members(es, coarse);

  auto run = [&](const RadialGrid& g, std::vector<IneqSample>* keep) {
    std::vector<double> ratios(members.size(), 0.0);
    std::vector<int> degen(members.size(), 0);
    parallel_for(members.size(), jobs, [&](std::size_t i) {
      auto f = realize_member(members[i], g);
      double lhs = 0.0;
      for (int k = 0; k < f.size(); ++k)
        lhs = std::max(lhs, std::pow(g.node(k), 0.5 * gs.n - s) * std::fabs(f[k]));
      double rhs = sobolev_norm(f, s);
      if (rhs == 0.0 && lhs == 0.0) {
        degen[i] = 1;
        return;
      }
      ratios[i] = lhs / rhs;
    });
    double mx = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (degen[i]) {
        if (keep) ++rep.degenerate_skipped;
        continue;
      }
      mx = std::max(mx, ratios[i]);
      if (keep) keep->push_back({"member" + std::to_string(i), 0.0, 0.0, ratios[i]});
    }
    return mx;
  };
  rep.max_ratio_coarse = run(coarse, &rep.samples);
  // re-evaluate lhs/rhs for stored samples (kept light: ratios only above)
  rep.max_ratio_fine = run(fine, nullptr);
  rep.stability_checked = true;
  rep.finalize();
  return rep;
}

InequalityReport test_besov_trace(const GridSpec& gs, const EnsembleSpec& es, int jobs) {
  InequalityReport rep;
  rep.id = "besov-trace";
  rep.params = {{"n", double(gs.n)}, {"N", double(gs.N)}, {"R", gs.R},
                {"seed", double(es.seed)}, {"size", double(es.size)}};
  RadialGrid coarse(gs.n, gs.N, gs.R);
  RadialGrid fine(gs.n, 2 * gs.N, gs.R);
  auto members = draw_members(es, coarse);
  auto run = [&](const RadialGrid& g, bool keep) {
    std::vector<double> ratios(members.size(), -1.0);
    parallel_for(members.size(), jobs, [&](std::size_t i) {
      auto f = realize_member(members[i], g);
      double lhs = 0.0;
      for (int k = 0; k < f.size(); ++k)
        lhs = std::max(lhs, std::pow(g.node(k), 0.5 * (gs.n - 1)) * std::fabs(f[k]));
      double rhs = besov_norm_half(f);
      if (rhs == 0.0 && lhs == 0.0) return;  // degenerate, ratios[i] stays -1
      ratios[i] = lhs / rhs;
    });
    double mx = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (ratios[i] < 0.0) {
        if (keep) ++rep.degenerate_skipped;
        continue;
      }
      mx = std::max(mx, ratios[i]);
      if (keep) rep.samples.push_back({"member" + std::to_string(i), 0.0, 0.0, ratios[i]});
    }
    return mx;
  };
  rep.max_ratio_coarse = run(coarse, true);
  rep.max_ratio_fine = run(fine, false);
  rep.stability_checked = true;
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------

void ChainRuleCase::validate() const {
  if (!(s > 0.0 && s < 1.0)) throw invalid_input("ChainRuleCase: s must lie in (0,1)");
  if (!(p > 1.0)) throw invalid_input("ChainRuleCase: p must exceed 1");
  if (!(q > 1.0) || !(q1 > 1.0)) throw invalid_input("ChainRuleCase: q, q1 must exceed 1");
  double inv2 = std::isinf(q2) ? 0.0 : 1.0 / q2;
  if (std::fabs(1.0 / q - 1.0 / q1 - inv2) > 1e-12)
    throw invalid_input("ChainRuleCase: Hoelder triple 1/q = 1/q1 + 1/q2 violated");
}

InequalityReport test_chain_rule(const ChainRuleCase& cs, const GridSpec& gs,
                                 const EnsembleSpec& es, int jobs) {
  cs.validate();
  InequalityReport rep;
  rep.id = "chain-rule";
  rep.params = {{"s", cs.s},   {"q", cs.q},        {"q1", cs.q1},
                {"q2", cs.q2}, {"p", cs.p},        {"n", double(gs.n)},
                {"N", double(gs.N)}, {"R", gs.R},  {"seed", double(es.seed)},
                {"size", double(es.size)}, {"mu", cs.mu_constant}};

  // Muckenhoupt hypotheses of the chain rule, checked numerically
  SamplingPlan light;
  light.center_count = 8;
  light.radius_count = 8;
  light.refinements = 2;
  light.quadrature_panels = 32;
  auto verdict_of = [&](const WeightSpec& w, double pp) {
    return pp <= 1.0 ? estimate_a1_constant(w, light, jobs).verdict
                     : estimate_ap_constant(w, pp, light, jobs).verdict;
  };
  std::string failed;
  WeightSpec w12 = cs.w1 * cs.w2;
  if (std::isinf(cs.q2)) {
    if (verdict_of(cs.w1.pow(cs.q), cs.q) == ApVerdict::diverging) failed = "w1^q not in A_q";
    if (failed.empty() && verdict_of(w12.pow(cs.q), cs.q) == ApVerdict::diverging)
      failed = "(w1 w2)^q not in A_q";
    if (failed.empty() && verdict_of(cs.w2.pow(-1.0), 1.0) == ApVerdict::diverging)
      failed = "w2^{-1} not in A_1";
  } else {
    if (verdict_of(w12.pow(cs.q), cs.q) == ApVerdict::diverging) failed = "(w1 w2)^q not in A_q";
    if (failed.empty() && verdict_of(cs.w1.pow(cs.q1), cs.q1) == ApVerdict::diverging)
      failed = "w1^{q1} not in A_{q1}";
    if (failed.empty() && verdict_of(cs.w2.pow(cs.q2), cs.q2) == ApVerdict::diverging)
      failed = "w2^{q2} not in A_{q2}";
  }
  if (!failed.empty()) {
    rep.refused = true;
    rep.refusal_reason = "A_p hypothesis check failed: " + failed;
    rep.finalize();
    return rep;
  }

  RadialGrid coarse(gs.n, gs.N, gs.R);
  RadialGrid fine(gs.n, 2 * gs.N, gs.R);
  auto members = draw_members(es, coarse);

  auto run = [&](const RadialGrid& g, bool keep) {
    std::vector<IneqSample> local(members.size());
    std::vector<int> degen(members.size(), 0);
    parallel_for(members.size(), jobs, [&](std::size_t i) {
      auto u = realize_member(members[i], g);
      std::vector<double> Fu(g.size()), Gu(g.size());
      for (int k = 0; k < g.size(); ++k) {
        Fu[k] = abs_pow(u[k], cs.p);
        Gu[k] = cs.p * abs_pow(u[k], cs.p - 1.0);
      }
      RadialField F(g, std::move(Fu)), G(g, std::move(Gu));
      auto DsF = fractional_derivative(F, cs.s);
      auto Dsu = fractional_derivative(u, cs.s);
      double lhs = weighted_lq(DsF, w12, cs.q);
      double rhs1 = weighted_lq(Dsu, cs.w1, cs.q1);
      double rhs2 = std::isinf(cs.q2) ? weighted_sup_extrapolated(G, cs.w2)
                                      : weighted_lq(G, cs.w2, cs.q2);
      double rhs = rhs1 * rhs2;
      if (lhs == 0.0 && rhs == 0.0) {
        degen[i] = 1;
        return;
      }
      local[i] = {"member" + std::to_string(i), lhs, rhs, lhs / rhs};
    });
    double mx = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (degen[i]) {
        if (keep) ++rep.degenerate_skipped;
        continue;
      }
      mx = std::max(mx, local[i].ratio);
      if (keep) rep.samples.push_back(local[i]);
    }
    return mx;
  };
  rep.max_ratio_coarse = run(coarse, true);
  rep.max_ratio_fine = run(fine, false);
  rep.stability_checked = true;
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

struct KssVariant {
  std::string name;
  WeightSpec wl, wr;
  int factor;  // 1 = B_T, 2 = A_T, 3 = T^delta
};

double kss_factor(int which, double T, double delta) {
  switch (which) {
    case 1: return std::min(std::pow(T, delta), 1.0);
    case 2: return std::min(std::pow(T, delta), std::sqrt(std::log(2.0 + T)));
    default: return std::pow(T, delta);
  }
}

// one variant at one horizon
IneqSample kss_sample(const KssVariant& v, double delta, const Trajectory& traj, double T) {
  auto wl = [&](double r) { return v.wl.eval(r); };
  auto wr = [&](double r) { return v.wr.eval(r); };
  double l2t = 0.0, sup_energy = 0.0, rhs_t = 0.0;
  double prev_t = 0.0, prev_l = 0.0, prev_r = 0.0;
  bool first = true;
  for (std::size_t m = 0; m < traj.times.size(); ++m) {
    double t = traj.times[m];
    if (t > T * (1 + 1e-12)) break;
    auto grad = Trajectory::radial_derivative(traj.u[m]);
    double a = weighted_l2_norm(traj.ut[m], wl);
    double b = weighted_l2_norm(grad, wl);
    double lval = a * a + b * b;
    double fr = weighted_l2_norm(traj.forcing[m], wr);
    double rval = fr * fr;
    if (!first) {
      l2t += 0.5 * (t - prev_t) * (lval + prev_l);
      rhs_t += 0.5 * (t - prev_t) * (rval + prev_r);
    }
    prev_t = t;
    prev_l = lval;
    prev_r = rval;
    first = false;
    double e1 = sobolev_norm(traj.ut[m], 0.0);
    auto g0 = Trajectory::radial_derivative(traj.u[m]);
    double e2 = sobolev_norm(g0, 0.0);
    sup_energy = std::max(sup_energy, std::sqrt(e1 * e1 + e2 * e2));
  }
  double coef = kss_factor(v.factor, T, delta);
  double lhs = std::sqrt(l2t) / coef + sup_energy;
  auto grad0 = Trajectory::radial_derivative(traj.u.front());
  double d0a = sobolev_norm(traj.ut.front(), 0.0);
  double d0b = sobolev_norm(grad0, 0.0);
  double rhs = std::sqrt(d0a * d0a + d0b * d0b) + coef * std::sqrt(rhs_t);
  char label[64];
  std::snprintf(label, sizeof label, "%s T=%g", v.name.c_str(), T);
  return {label, lhs, rhs, rhs > 0 ? lhs / rhs : 0.0};
}

}  // namespace

InequalityReport test_kss(const ExponentPack& pack, const Trajectory& traj,
                          const std::vector<double>& T_grid, const Trajectory* fine) {
  InequalityReport rep;
  rep.id = "kss";
  rep.params = {{"n", double(traj.n)}, {"delta", pack.delta}, {"delta1", pack.delta1}};
  if (traj.forcing.size() != traj.times.size()) {
    rep.refused = true;
    rep.refusal_reason = "trajectory lacks a forcing record";
    rep.finalize();
    return rep;
  }
  const int n = traj.n;
  const double d = pack.delta, d1 = pack.delta1;
  std::vector<KssVariant> variants;
  if (d1 > 0.0) {
    // the B_T-normalized variant holds for delta1 > 0 only; at delta1 <= 0
    // the weighted space-time integral genuinely grows logarithmically
    variants.push_back({"kss1", WeightSpec::product_power(n, -0.5 + d, -d - d1),
                        WeightSpec::product_power(n, 0.5 - d, d + d1), 1});
  } else {
    rep.params.push_back({"kss1_skipped_delta1_nonpositive", 1.0});
  }
  variants.push_back({"kss2", WeightSpec::product_power(n, -0.5 + d, -d),
                      WeightSpec::product_power(n, 0.5 - d, d), 2});
  variants.push_back({"kss3", WeightSpec::power(n, -0.5 + d), WeightSpec::power(n, 0.5 - d), 3});
  double mx_coarse = 0.0, mx_fine = 0.0;
  for (const auto& v : variants) {
    for (double T : T_grid) {
      auto s = kss_sample(v, d, traj, T);
      if (s.lhs == 0.0 && s.rhs == 0.0) {
        ++rep.degenerate_skipped;
        continue;
      }
      mx_coarse = std::max(mx_coarse, s.ratio);
      rep.samples.push_back(s);
      if (fine) {
        auto sf = kss_sample(v, d, *fine, T);
        mx_fine = std::max(mx_fine, sf.ratio);
      }
    }
  }
  rep.max_ratio_coarse = mx_coarse;
  if (fine) {
    rep.max_ratio_fine = mx_fine;
    rep.stability_checked = true;
  }
  rep.finalize();
  return rep;
}

InequalityReport test_strichartz_2d(double q, const std::vector<Trajectory>& trajs,
                                    const std::vector<Trajectory>* fine) {
  InequalityReport rep;
  rep.id = "strichartz-2d";
  rep.params = {{"q", q}, {"s", 1.0 - 1.0 / q}};
  if (!(q > 2.0)) {
    rep.refused = true;
    rep.refusal_reason = "q must exceed 2";
    rep.finalize();
    return rep;
  }
  for (const auto& t : trajs)
    if (t.n != 2) {
      rep.refused = true;
      rep.refusal_reason = "generalized Strichartz harness requires n = 2";
      rep.finalize();
      return rep;
    }
  const double s = 1.0 - 1.0 / q;

  auto sample_of = [&](const Trajectory& traj, std::size_t idx) {
    double lq = 0.0, prev_t = 0.0, prev_v = 0.0, forcing_l1 = 0.0, prev_f = 0.0;
    bool first = true;
    for (std::size_t m = 0; m < traj.times.size(); ++m) {
      double t = traj.times[m];
      auto grad = Trajectory::radial_derivative(traj.u[m]);
      double sup = 0.0;
      for (int i = 0; i < grad.size(); ++i)
        sup = std::max(sup, std::hypot(traj.ut[m][i], grad[i]));
      double v = std::pow(sup, q);
      double fnorm = 0.0;
      bool fzero = true;
      for (int i = 0; i < traj.forcing[m].size(); ++i)
        if (traj.forcing[m][i] != 0.0) fzero = false;
      if (!fzero) fnorm = sobolev_norm(traj.forcing[m], s);
      if (!first) {
        lq += 0.5 * (t - prev_t) * (v + prev_v);
        forcing_l1 += 0.5 * (t - prev_t) * (fnorm + prev_f);
      }
      prev_t = t;
      prev_v = v;
      prev_f = fnorm;
      first = false;
    }
    double lhs = std::pow(lq, 1.0 / q);
    double e1 = sobolev_norm(traj.ut.front(), s);
    double e2 = sobolev_norm(traj.u.front(), 1.0 + s);
    double rhs = std::sqrt(e1 * e1 + e2 * e2) + forcing_l1;
    char label[48];
    std::snprintf(label, sizeof label, "traj%zu T=%g", idx, traj.t_end);
    return IneqSample{label, lhs, rhs, rhs > 0 ? lhs / rhs : 0.0};
  };

  double mx = 0.0, mxf = 0.0;
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    auto smp = sample_of(trajs[i], i);
    if (smp.lhs == 0.0 && smp.rhs == 0.0) {
      ++rep.degenerate_skipped;
      continue;
    }
    mx = std::max(mx, smp.ratio);
    rep.samples.push_back(smp);
  }
  rep.max_ratio_coarse = mx;
  if (fine) {
    for (std::size_t i = 0; i < fine->size(); ++i) mxf = std::max(mxf, sample_of((*fine)[i], i).ratio);
    rep.max_ratio_fine = mxf;
    rep.stability_checked = true;
  }
  rep.finalize();
  return rep;
}

}  // namespace nlw
