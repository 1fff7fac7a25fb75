// Acceptance suite: one criterion per runner, one [PASS]/[FAIL] line each.
// Run all with no arguments, or a subset: ./acceptance 3 5 9
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "report_io.hpp"
#include "selftest.hpp"

using namespace nlw;

namespace {

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string&)> run;
};

RadialField gaussian_field(const RadialGrid& g, double width = 1.0, double amp = 1.0) {
  std::vector<double> s(g.size());
  for (int i = 0; i < g.size(); ++i) {
    double r = g.node(i);
    s[i] = amp * std::exp(-r * r / (2 * width * width));
  }
  return RadialField(g, std::move(s));
}

double rel_l2(const RadialField& a, const RadialField& b) {
  double num = 0, den = 0;
  for (int i = 0; i < a.size(); ++i) {
    double m = std::pow(a.grid().node(i), a.grid().dim() - 1) * a.grid().quad_weight(i);
    num += (a[i] - b[i]) * (a[i] - b[i]) * m;
    den += b[i] * b[i] * m;
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

// 1. spectral self-test battery at N = 1024
bool c1_spectral(std::string& detail) {
  auto rep = spectral_selftest(1024, 12.0);
  double worst_margin = 0.0;
  std::string worst;
  for (const auto& c : rep.checks) {
    if (!c.pass) {
      detail = "failed: " + c.name;
      return false;
    }
    double m = c.tolerance > 0 ? c.measured / c.tolerance : 0.0;
    if (m > worst_margin) {
      worst_margin = m;
      worst = c.name;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu checks, tightest: %s at %.2f of tolerance",
                rep.checks.size(), worst.c_str(), worst_margin);
  detail = buf;
  return rep.pass;
}

// 2. weight suite
bool c2_weights(std::string& detail) {
  auto rep = weight_selftest();
  for (const auto& c : rep.checks)
    if (!c.pass) {
      detail = "failed: " + c.name;
      return false;
    }
  detail = std::to_string(rep.checks.size()) + " checks";
  return true;
}

// 3. ODE blow-up oracle: constant data u1 = 1/lambda, (a,b,p) = (1,0,2)
bool c3_ode(std::string& detail) {
  char buf[200];
  for (double lam : {1.0, 2.0}) {
    LifespanConfig lc;
    lc.base.R = lam + 2.5;
    lc.base.N = 1024;
    lc.base.t_max = 2.5 * lam;
    lc.base.record_stride = 16;
    lc.refinements = 2;
    RadialGrid g(3, lc.base.N, lc.base.R);
    RadialField profile(g, std::vector<double>(lc.base.N, 1.0));
    auto res = estimate_lifespan(profile, 1.0 / lam, {1.0, 0.0, 2.0}, lc);
    if (res.censored || std::fabs(res.T_high - lam) / lam > 0.02) {
      std::snprintf(buf, sizeof buf, "lambda=%g: T=%.4f (|T-lambda|/lambda=%.3f > 0.02)", lam,
                    res.T_high, std::fabs(res.T_high - lam) / lam);
      detail = buf;
      return false;
    }
    // interior profile vs -ln(1 - t/lambda) up to 0.9 lambda
    SolverConfig sc = lc.base;
    CauchyData d(RadialField::zero(g), RadialField(g, std::vector<double>(sc.N, 1.0 / lam)));
    auto traj = evolve(d, {1.0, 0.0, 2.0}, sc);
    double worst = 0.0;
    for (std::size_t m = 0; m < traj.times.size(); ++m) {
      double t = traj.times[m];
      if (t > 0.9 * lam) break;
      worst = std::max(worst, std::fabs(traj.u[m][0] + std::log(1.0 - t / lam)));
    }
    if (worst > 1e-3) {
      std::snprintf(buf, sizeof buf, "lambda=%g: interior profile error %.2e > 1e-3", lam, worst);
      detail = buf;
      return false;
    }
    std::snprintf(buf, sizeof buf, "lambda=%g: T err %.2e, profile err %.2e; ", lam,
                  std::fabs(res.T_high - lam) / lam, worst);
    detail += buf;
  }
  return true;
}

// 4. critical lifespan law, n=3 p=2
bool c4_critical(std::string& detail) {
  LifespanScalingConfig cfg;
  cfg.n = 3;
  cfg.p = 2.0;
  cfg.eps_grid = {4.2, 3.3, 2.6, 2.1, 1.75, 1.5, 1.4};
  cfg.t_max = 450.0;
  cfg.dr = 0.1;
  cfg.refinements = 1;
  auto fit = lifespan_scaling(cfg);
  char buf[200];
  std::snprintf(buf, sizeof buf, "R^2=%.4f slope=%.2f over %d uncensored points",
                fit.fit.r_squared, fit.fit.slope, fit.uncensored);
  detail = buf;
  return fit.uncensored >= 5 && fit.fit.r_squared >= 0.95 && fit.fit.slope > 0.0;
}

// 5. subcritical lifespan exponents: n=3 p=1.5 (-1.0 +- 0.15), n=2 p=2 (-2.0 +- 0.3)
bool c5_subcritical(std::string& detail) {
  char buf[200];
  {
    LifespanScalingConfig cfg;
    cfg.n = 3;
    cfg.p = 1.5;
    cfg.eps_grid = {1.5, 1.2, 1.0, 0.8, 0.65, 0.5};
    cfg.t_max = 60.0;
    cfg.dr = 0.08;
    cfg.refinements = 2;
    auto fit = lifespan_scaling(cfg);
    std::snprintf(buf, sizeof buf, "n=3 p=1.5: slope=%.3f (want -1.0 +- 0.15, R^2=%.3f); ",
                  fit.fit.slope, fit.fit.r_squared);
    detail += buf;
    if (std::fabs(fit.fit.slope - (-1.0)) > 0.15) return false;
  }
  {
    LifespanScalingConfig cfg;
    cfg.n = 2;
    cfg.p = 2.0;
    cfg.eps_grid = {0.75, 0.6, 0.5, 0.42, 0.34, 0.25};
    cfg.t_max = 260.0;
    cfg.dr = 0.1;
    cfg.refinements = 3;
    auto fit = lifespan_scaling(cfg);
    std::snprintf(buf, sizeof buf, "n=2 p=2: slope=%.3f (want -2.0 +- 0.3, R^2=%.3f)",
                  fit.fit.slope, fit.fit.r_squared);
    detail += buf;
    if (std::fabs(fit.fit.slope - (-2.0)) > 0.3) return false;
  }
  return true;
}

// 6. KSS T-uniformity across two decades
bool c6_kss(std::string& detail) {
  KssUniformityConfig cfg;
  cfg.T_grid = {1.0, 4.0, 16.0, 64.0};
  cfg.dr = 0.04;
  auto rep = kss_uniformity(cfg);
  char buf[120];
  std::snprintf(buf, sizeof buf, "worst per-variant spread %.2f (limit 3), %zu reports",
                rep.worst_spread, rep.reports.size());
  detail = buf;
  return rep.pass;
}

// 7. weighted chain rule, dual-weight configuration, 200 members
bool c7_chain(std::string& detail) {
  auto pack = critical_exponents(3, 2.0, 1.75);
  auto w = WeightSpec::morawetz_weight(3, pack.delta, pack.delta1);
  ChainRuleCase cs(w.pow(0.5), w.pow(-1.0));
  cs.s = 0.5;
  cs.p = 2.0;
  cs.q = 2.0;
  cs.q1 = 2.0;
  cs.q2 = std::numeric_limits<double>::infinity();
  GridSpec gs{3, 2048, 40.0};
  EnsembleSpec es;
  es.seed = 7;
  es.size = 200;
  auto rep = test_chain_rule(cs, gs, es);
  if (rep.refused) {
    detail = "refused: " + rep.refusal_reason;
    return false;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "max_ratio=%.3f, N->2N change %.1f%%", rep.max_ratio,
                100 * rep.stability_change);
  detail = buf;
  if (!std::isfinite(rep.max_ratio) || rep.stability_change > 0.5) return false;

  // homogeneity: u -> lambda u leaves every ratio fixed to 1e-10
  EnsembleSpec es1 = es, es2 = es;
  es1.size = es2.size = 20;
  es1.amp_lo = es1.amp_hi = 1.0;
  es2.amp_lo = es2.amp_hi = 5.0;
  auto r1 = test_chain_rule(cs, gs, es1);
  auto r2 = test_chain_rule(cs, gs, es2);
  for (std::size_t i = 0; i < r1.samples.size(); ++i)
    if (std::fabs(r1.samples[i].ratio - r2.samples[i].ratio) > 1e-10 * r1.samples[i].ratio) {
      detail += "; homogeneity violated";
      return false;
    }
  detail += "; homogeneity ok";
  return true;
}

// 8. trace estimate: bounded and stable for s in {0.6, 0.75, 1.0}; refusal outside
bool c8_trace(std::string& detail) {
  GridSpec gs{3, 1024, 40.0};
  EnsembleSpec es;
  es.seed = 11;
  es.size = 200;
  char buf[80];
  for (double s : {0.6, 0.75, 1.0}) {
    auto rep = test_trace(gs, s, es);
    if (rep.refused || !rep.pass) {
      std::snprintf(buf, sizeof buf, "s=%.2f failed (change %.2f)", s, rep.stability_change);
      detail = buf;
      return false;
    }
    std::snprintf(buf, sizeof buf, "s=%.2f ratio %.2f; ", s, rep.max_ratio);
    detail += buf;
  }
  auto low = test_trace(gs, 0.45, es);
  auto high = test_trace(gs, 1.55, es);
  if (!low.refused || !high.refused) {
    detail += "harness failed to refuse out-of-range s";
    return false;
  }
  detail += "refusals ok";
  return true;
}

// 9. linear solver quality: energy drift, cone leakage, convergence order
bool c9_linear(std::string& detail) {
  SolverConfig cfg;
  cfg.R = 8.0;
  cfg.N = 1024;
  cfg.t_max = 4.0;
  RadialGrid g(3, cfg.N, cfg.R);
  CauchyData d(gaussian_field(g, 0.35), RadialField::zero(g));
  auto traj = evolve(d, {0.0, 0.0, 2.0}, cfg);
  double e0 = linear_energy(traj.u.front(), traj.ut.front());
  double drift = 0.0;
  for (std::size_t m = 0; m < traj.times.size(); ++m)
    drift = std::max(drift, std::fabs(linear_energy(traj.u[m], traj.ut[m]) - e0) / e0);

  double rho0 = 3.0, leak = 0.0;
  for (std::size_t m = 0; m < traj.times.size(); ++m)
    for (int i = 0; i < g.size(); ++i)
      if (g.node(i) > rho0 + traj.times[m] + 2 * g.dr())
        leak = std::max(leak, std::fabs(traj.u[m][i]));

  double errs[2];
  int idx = 0;
  for (int N : {512, 1024}) {
    SolverConfig c2;
    c2.R = 8.0;
    c2.N = N;
    c2.t_max = 2.0;
    RadialGrid g2(3, N, c2.R);
    CauchyData d2(gaussian_field(g2, 0.7), RadialField::zero(g2));
    auto t2 = evolve(d2, {0.0, 0.0, 2.0}, c2);
    auto exact = linear_propagator(d2, t2.times.back());
    errs[idx++] = rel_l2(t2.u.back(), exact.u0);
  }
  double order_ratio = errs[0] / errs[1];
  char buf[160];
  std::snprintf(buf, sizeof buf, "drift %.2e (<=1e-6), leak %.2e (<=1e-10), error ratio %.2f (>=3.7)",
                drift, leak, order_ratio);
  detail = buf;
  return drift <= 1e-6 && leak <= 1e-10 && order_ratio >= 3.7;
}

// 10. Picard consistency on a small-data slab
bool c10_picard(std::string& detail) {
  RadialGrid g(3, 512, 12.0);
  CauchyData d(RadialField::zero(g), gaussian_field(g, 0.8, 0.05));
  auto res = picard_iterate(d, {1.0, 0.0, 2.0}, 0.5, 4, 64);
  if (res.diverged || res.increment_x0.size() < 3) {
    detail = "iteration diverged on a small-data slab";
    return false;
  }
  double rho1 = res.increment_x0[1] / res.increment_x0[0];
  double rho2 = res.increment_x0[2] / res.increment_x0[1];
  SolverConfig cfg;
  cfg.R = 12.0;
  cfg.N = 512;
  cfg.t_max = 0.5;
  auto traj = evolve(d, {1.0, 0.0, 2.0}, cfg);
  double agree = rel_l2(res.iterates.back().u.back(), traj.u.back());
  double dr2 = (cfg.R / cfg.N) * (cfg.R / cfg.N);
  double bound = std::max(2.0 * (res.increment_x0.back() + 10.0 * dr2), 1e-4);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "contraction rates %.3f, %.3f; |picard - evolve| = %.2e (bound %.2e)", rho1, rho2,
                agree, bound);
  detail = buf;
  return rho1 < 0.5 && rho2 < 0.5 && agree < bound;
}

// 11. 2-D persistence for p = 4 with near-linear amplitude response
bool c11_persist(std::string& detail) {
  Persistence2dConfig cfg;
  cfg.p = 4.0;
  cfg.eps = 0.05;
  cfg.t_max = 100.0;
  cfg.dr = 0.05;
  auto rep = global_persistence_2d(cfg);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "censored=%d/%d, norm ratio %.3f vs eps ratio %.3f (tol 25%%)",
                int(rep.runs[0].censored), int(rep.runs[1].censored), rep.norm_ratio,
                rep.eps_ratio);
  detail = buf;
  return rep.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "spectral self-test", c1_spectral},
      {2, "weight suite", c2_weights},
      {3, "ODE blow-up oracle", c3_ode},
      {4, "critical lifespan law (n=3, p=2)", c4_critical},
      {5, "subcritical lifespan exponents", c5_subcritical},
      {6, "KSS T-uniformity", c6_kss},
      {7, "weighted chain rule stability", c7_chain},
      {8, "trace estimate ratios", c8_trace},
      {9, "linear solver quality", c9_linear},
      {10, "Picard consistency", c10_picard},
      {11, "2-D persistence (p=4)", c11_persist},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (auto& c : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end())
      continue;
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2d: %s  (%s) [%.1fs]\n", ok ? "PASS" : "FAIL", c.id,
                c.name.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
