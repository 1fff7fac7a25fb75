#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "solver.hpp"

using namespace nlw;

namespace {

RadialField gaussian(const RadialGrid& g, double width = 1.0, double center = 0.0,
                     double amp = 1.0) {
  std::vector<double> s(g.size());
  for (int i = 0; i < g.size(); ++i) {
    double r = g.node(i);
    s[i] = amp * (std::exp(-(r - center) * (r - center) / (2 * width * width)) +
                  (center > 0 ? std::exp(-(r + center) * (r + center) / (2 * width * width)) : 0.0));
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

}  // namespace

TEST_CASE("linear propagator: identity at t=0 and energy conservation") {
  RadialGrid g(3, 512, 12.0);
  CauchyData d(gaussian(g, 0.8), gaussian(g, 0.6, 0, 0.5));
  auto at0 = linear_propagator(d, 0.0);
  CHECK(rel_l2(at0.u0, d.u0) < 1e-12);
  CHECK(rel_l2(at0.u1, d.u1) < 1e-12);

  double e0 = 0.0;
  bool first = true;
  for (double t : {0.0, 1.0, 2.5, 4.0, 6.0}) {
    auto dt = linear_propagator(d, t);
    auto grad = Trajectory::radial_derivative(dt.u0);
    double e = sobolev_norm(dt.u1, 0.0);
    double eg = sobolev_norm(dt.u0, 1.0);
    double total = e * e + eg * eg;
    if (first) {
      e0 = total;
      first = false;
    }
    CHECK(std::fabs(total - e0) / e0 < 1e-8);
    (void)grad;
  }
}

TEST_CASE("linear propagator: n=3 d'Alembert oracle on v = r u") {
  RadialGrid g(3, 1024, 16.0);
  CauchyData d(RadialField::zero(g), gaussian(g, 1.0));
  double t = 4.0;
  auto out = linear_propagator(d, t);
  // closed form for u1 = e^{-r^2/2}: v(t,r) = (e^{-(r-t)^2/2} - e^{-(r+t)^2/2})/2
  double worst = 0;
  for (int i = 0; i < g.size(); ++i) {
    double r = g.node(i);
    double v = 0.5 * (std::exp(-(r - t) * (r - t) / 2) - std::exp(-(r + t) * (r + t) / 2));
    worst = std::max(worst, std::fabs(out.u0[i] - v / r));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("duhamel: zero forcing, single-mode oracle, dalembertian residual") {
  RadialGrid g(3, 256, 12.0);
  auto plan = TransformPlan::get(g);
  const auto& fg = plan->freq_grid();
  double dt = 0.01;

  SUBCASE("zero forcing gives zero") {
    std::vector<SpectralField> F(41, SpectralField::zero(fg));
    auto out = duhamel(F, dt, 0.4);
    for (int i = 0; i < g.size(); ++i) {
      CHECK(out.u0[i] == 0.0);
      CHECK(out.u1[i] == 0.0);
    }
  }

  SUBCASE("single spectral mode, non-resonant and resonant") {
    int kmode = 40;
    double rho = fg.node(kmode);
    for (double w0 : {0.5 * rho, rho}) {
      double t = 0.8;
      int M = static_cast<int>(t / dt + 0.5);
      std::vector<SpectralField> F;
      for (int m = 0; m <= M + 2; ++m) {
        auto Z = SpectralField::zero(fg);
        Z[kmode] = std::cos(w0 * m * dt);
        F.push_back(Z);
      }
      auto out = duhamel(F, dt, t);
      auto OUT = plan->forward(out.u0);
      double expected;
      if (w0 == rho)
        expected = t * std::sin(rho * t) / (2 * rho);
      else
        expected = (std::cos(w0 * t) - std::cos(rho * t)) / (rho * rho - w0 * w0);
      CHECK(std::fabs(OUT[kmode] - expected) < 1e-6);
      // other modes stay empty
      for (int k = 0; k < fg.size(); ++k)
        if (k != kmode) CHECK(std::fabs(OUT[k]) < 1e-9);
    }
  }

  SUBCASE("random smooth forcing: Box I[F] = F residual") {
    // F(tau, r) = bump(r) cos(1.3 tau)
    auto bump = gaussian(g, 0.9, 2.0);
    auto B = plan->forward(bump);
    double t = 1.0;
    int M = static_cast<int>(t / dt + 0.5);
    std::vector<SpectralField> F;
    for (int m = 0; m <= M + 4; ++m) {
      auto S = B;
      for (int k = 0; k < fg.size(); ++k) S[k] *= std::cos(1.3 * m * dt);
      F.push_back(S);
    }
    auto um = duhamel(F, dt, t - dt);
    auto u0 = duhamel(F, dt, t);
    auto up = duhamel(F, dt, t + dt);
    // Box u = u_tt - Lap u, with Lap through the spectral multiplier
    auto U0 = plan->forward(u0.u0);
    for (int k = 0; k < fg.size(); ++k) U0[k] *= fg.node(k) * fg.node(k);
    auto lap = plan->inverse(U0);  // = -Lap u
    double worst = 0, scale = 0;
    for (int i = 0; i < g.size(); ++i) {
      double utt = (up.u0[i] - 2 * u0.u0[i] + um.u0[i]) / (dt * dt);
      double box = utt + lap[i];
      double Fi = bump[i] * std::cos(1.3 * t);
      worst = std::max(worst, std::fabs(box - Fi));
      scale = std::max(scale, std::fabs(Fi));
    }
    CHECK(worst / scale < 1e-3);  // second-order time FD dominates
  }
}

TEST_CASE("evolve: linear run matches the spectral propagator") {
  SolverConfig cfg;
  cfg.R = 16.0;
  cfg.N = 2048;
  cfg.t_max = 1.0;
  RadialGrid g(3, cfg.N, cfg.R);
  CauchyData d(gaussian(g, 2.0), RadialField::zero(g));
  auto traj = evolve(d, {0.0, 0.0, 2.0}, cfg);
  REQUIRE(traj.termination == Termination::reached_t_max);
  auto exact = linear_propagator(d, traj.times.back());
  CHECK(rel_l2(traj.u.back(), exact.u0) < 1e-5);
}

TEST_CASE("evolve: linear energy drift and finite propagation speed") {
  SolverConfig cfg;
  cfg.R = 8.0;
  cfg.N = 1024;
  cfg.t_max = 4.0;  // = R/2
  RadialGrid g(3, cfg.N, cfg.R);
  double rho0 = 3.0;  // numerical support radius of the gaussian below
  CauchyData d(gaussian(g, 0.35), RadialField::zero(g));
  auto traj = evolve(d, {0.0, 0.0, 2.0}, cfg);
  double e0 = linear_energy(traj.u.front(), traj.ut.front());
  double drift = 0;
  for (std::size_t m = 0; m < traj.times.size(); ++m)
    drift = std::max(drift,
                     std::fabs(linear_energy(traj.u[m], traj.ut[m]) - e0) / e0);
  CHECK(drift < 1e-6);

  for (std::size_t m = 0; m < traj.times.size(); ++m) {
    double t = traj.times[m];
    double leak = 0;
    for (int i = 0; i < g.size(); ++i)
      if (g.node(i) > rho0 + t + 2 * g.dr()) leak = std::max(leak, std::fabs(traj.u[m][i]));
    CHECK(leak <= 1e-10);
  }
}

TEST_CASE("evolve: convergence order against the spectral propagator") {
  double errs[2];
  int idx = 0;
  for (int N : {512, 1024}) {
    SolverConfig cfg;
    cfg.R = 8.0;
    cfg.N = N;
    cfg.t_max = 2.0;
    RadialGrid g(3, N, cfg.R);
    CauchyData d(gaussian(g, 0.7), RadialField::zero(g));
    auto traj = evolve(d, {0.0, 0.0, 2.0}, cfg);
    auto exact = linear_propagator(d, traj.times.back());
    errs[idx++] = rel_l2(traj.u.back(), exact.u0);
  }
  CHECK(errs[0] / errs[1] >= 3.7);
}

TEST_CASE("evolve: ODE blow-up oracle (constant data)") {
  for (double lam : {1.0, 2.0}) {
    CAPTURE(lam);
    SolverConfig cfg;
    cfg.R = lam + 2.5;
    cfg.N = 1024;
    cfg.t_max = 2.0 * lam;
    RadialGrid g(3, cfg.N, cfg.R);
    std::vector<double> ones(cfg.N, 1.0 / lam);
    CauchyData d(RadialField::zero(g), RadialField(g, std::move(ones)));
    auto traj = evolve(d, {1.0, 0.0, 2.0}, cfg);
    REQUIRE(traj.termination == Termination::blow_up);
    CHECK(std::fabs(traj.t_end - lam) / lam < 0.02);

    // interior profile tracks -ln(1 - t/lam) up to 0.9 lam
    for (std::size_t m = 0; m < traj.times.size(); ++m) {
      double t = traj.times[m];
      if (t > 0.9 * lam) break;
      double expect = -std::log(1.0 - t / lam);
      CHECK(std::fabs(traj.u[m][0] - expect) < 1e-3);
    }
  }
}

TEST_CASE("evolve: small-data n=3 run survives past the focusing time") {
  SolverConfig cfg;
  cfg.R = 16.0;
  cfg.N = 1024;
  cfg.t_max = 10.5;
  RadialGrid g(3, cfg.N, cfg.R);
  CauchyData d(RadialField::zero(g), gaussian(g, 1.0, 0, 0.05));
  auto traj = evolve(d, {1.0, 1.0, 2.0}, cfg);
  CHECK(traj.termination == Termination::reached_t_max);

  // doubled resolution agreement, 1% in L2
  SolverConfig cfg2 = cfg;
  cfg2.N = 2048;
  RadialGrid g2(3, cfg2.N, cfg2.R);
  CauchyData d2(RadialField::zero(g2), gaussian(g2, 1.0, 0, 0.05));
  auto traj2 = evolve(d2, {1.0, 1.0, 2.0}, cfg2);
  double num = 0, den = 0;
  const auto& fa = traj.u.back();
  const auto& fb = traj2.u.back();
  for (int i = 1; i + 1 < g.size(); ++i) {
    double fine = (-fb[2 * i - 1] + 9 * fb[2 * i] + 9 * fb[2 * i + 1] - fb[2 * i + 2]) / 16.0;
    double m = std::pow(g.node(i), 2) * g.quad_weight(i);
    num += (fa[i] - fine) * (fa[i] - fine) * m;
    den += fine * fine * m;
  }
  CHECK(std::sqrt(num / den) < 0.01);

  // sup|du| decreases after the focusing time
  double peak = 0;
  std::size_t peak_idx = 0;
  for (std::size_t m = 0; m < traj.times.size(); ++m) {
    double s = Trajectory::sup_abs(traj.ut[m], traj.clean_radius(traj.times[m]));
    if (s > peak) {
      peak = s;
      peak_idx = m;
    }
  }
  CHECK(peak_idx < traj.times.size() - 1);
  double late = Trajectory::sup_abs(traj.ut.back(), traj.clean_radius(traj.times.back()));
  CHECK(late < peak);
}

TEST_CASE("picard iteration") {
  RadialGrid g(3, 512, 12.0);
  CauchyData d(RadialField::zero(g), gaussian(g, 0.8, 0, 0.05));

  SUBCASE("linear problem: first iterate equals the zeroth") {
    auto res = picard_iterate(d, {0.0, 0.0, 2.0}, 0.5, 1, 32);
    REQUIRE(res.iterates.size() == 2);
    for (std::size_t m = 0; m < res.iterates[0].times.size(); ++m)
      CHECK(rel_l2(res.iterates[1].u[m], res.iterates[0].u[m]) < 1e-12);
  }

  SUBCASE("small data: geometric decay and agreement with evolve") {
    auto res = picard_iterate(d, {1.0, 0.0, 2.0}, 0.5, 4, 64);
    REQUIRE(!res.diverged);
    REQUIRE(res.increment_x0.size() >= 3);
    CHECK(res.increment_x0[1] < 0.3 * res.increment_x0[0]);
    CHECK(res.increment_x0[2] < 0.3 * res.increment_x0[1]);

    SolverConfig cfg;
    cfg.R = 12.0;
    cfg.N = 512;
    cfg.t_max = 0.5;
    auto traj = evolve(d, {1.0, 0.0, 2.0}, cfg);
    double tail = res.increment_x0.back();
    double dr2 = cfg.R / cfg.N;
    dr2 *= dr2;
    double bound = 2.0 * (tail + dr2 * 10.0);
    CHECK(rel_l2(res.iterates.back().u.back(), traj.u.back()) < std::max(bound, 1e-4));
  }

  SUBCASE("large data diverges with the flag set") {
    CauchyData big(RadialField::zero(g), gaussian(g, 0.8, 0, 40.0));
    auto res = picard_iterate(big, {1.0, 0.0, 2.0}, 2.0, 6, 32);
    CHECK(res.diverged);
  }
}

TEST_CASE("x norm") {
  auto pack = critical_exponents(3, 2.0, 1.75);
  SolverConfig cfg;
  cfg.R = 12.0;
  cfg.N = 512;
  cfg.t_max = 3.0;
  RadialGrid g(3, cfg.N, cfg.R);

  SUBCASE("zero trajectory") {
    CauchyData d(RadialField::zero(g), RadialField::zero(g));
    auto traj = evolve(d, {0.0, 0.0, 2.0}, cfg);
    CHECK(x_norm(traj, 0.0, pack, 2.0) == 0.0);
  }

  SUBCASE("free wave: finite and nondecreasing in T") {
    CauchyData d(gaussian(g, 0.8), RadialField::zero(g));
    auto traj = evolve(d, {0.0, 0.0, 2.0}, cfg);
    double prev = 0;
    for (double T : {0.5, 1.0, 2.0, 3.0}) {
      double v = x_norm(traj, 0.5, pack, T);
      CHECK(std::isfinite(v));
      CHECK(v >= prev * (1.0 - 1e-9));
      prev = v;
    }
  }

  SUBCASE("trapezoid vs Simpson time quadrature within 1%") {
    SourceSpec src;
    src.amp = 1.0;
    src.t0 = 1.0;
    src.sigma_t = 0.4;
    src.r0 = 2.0;
    src.sigma_r = 0.5;
    cfg.record_stride = 2;
    CauchyData d(RadialField::zero(g), RadialField::zero(g));
    auto traj = evolve(d, {0.0, 0.0, 2.0}, cfg, src);
    double T = 2.5;
    double impl = x_norm(traj, 0.0, pack, T);

    // independent Simpson assembly over the same stored samples
    WeightSpec w = WeightSpec::morawetz_weight(3, pack.delta, pack.delta1);
    auto wf = [&](double r) { return w.eval(r); };
    std::vector<double> ts, vals;
    double sup = 0;
    for (std::size_t m = 0; m < traj.times.size(); ++m) {
      if (traj.times[m] > T * (1 + 1e-12)) break;
      auto grad = Trajectory::radial_derivative(traj.u[m]);
      double a = weighted_l2_norm(traj.ut[m], wf);
      double b = weighted_l2_norm(grad, wf);
      ts.push_back(traj.times[m]);
      vals.push_back(a * a + b * b);
      double e1 = sobolev_norm(traj.ut[m], 0.0);
      double e2 = sobolev_norm(traj.u[m], 1.0);
      sup = std::max(sup, std::sqrt(e1 * e1 + e2 * e2));
    }
    std::size_t M = vals.size() - 1;
    if (M % 2) M -= 1;  // even panel count for Simpson
    double simpson = 0;
    for (std::size_t i = 0; i + 2 <= M; i += 2) {
      double h1 = ts[i + 1] - ts[i], h2 = ts[i + 2] - ts[i + 1];
      // uniform samples in practice; plain Simpson weights
      simpson += (h1 + h2) / 6.0 * (vals[i] + 4 * vals[i + 1] + vals[i + 2]);
    }
    double oracle = std::sqrt(simpson) / regime_time_factor(pack, T) + sup;
    CHECK(std::fabs(impl - oracle) / oracle < 0.01);
  }
}

TEST_CASE("lifespan estimation") {
  SUBCASE("ODE oracle with constant profile") {
    for (double lam : {1.0, 2.0}) {
      CAPTURE(lam);
      LifespanConfig lc;
      lc.base.R = lam + 2.5;
      lc.base.N = 512;
      lc.base.t_max = 2.5 * lam;
      lc.refinements = 2;
      RadialGrid g(3, lc.base.N, lc.base.R);
      std::vector<double> ones(lc.base.N, 1.0);
      RadialField profile(g, std::move(ones));
      auto res = estimate_lifespan(profile, 1.0 / lam, {1.0, 0.0, 2.0}, lc);
      CHECK_FALSE(res.censored);
      CHECK(res.converged);
      CHECK(std::fabs(res.T_high - lam) / lam < 0.02);
      CHECK(res.threshold_stable);
      // brackets shrink monotonically under refinement
      for (std::size_t l = 1; l < res.refinement_times.size(); ++l)
        CHECK(std::fabs(res.refinement_times[l] - lam) <=
              std::fabs(res.refinement_times[l - 1] - lam) + 1e-6 * lam);
    }
  }

  SUBCASE("lifespan decreases when eps doubles") {
    LifespanConfig lc;
    lc.base.R = 40.0;
    lc.base.N = 512;
    lc.base.t_max = 36.0;
    lc.refinements = 1;
    RadialGrid g(3, lc.base.N, lc.base.R);
    auto profile = gaussian(g, 1.0);
    auto a = estimate_lifespan(profile, 0.9, {1.0, 0.0, 1.5}, lc);
    auto b = estimate_lifespan(profile, 1.8, {1.0, 0.0, 1.5}, lc);
    REQUIRE_FALSE(a.censored);
    REQUIRE_FALSE(b.censored);
    CHECK(b.T_high < a.T_high);
  }

  SUBCASE("supercritical small data is censored") {
    LifespanConfig lc;
    lc.base.R = 24.0;
    lc.base.N = 512;
    lc.base.t_max = 20.0;
    lc.refinements = 0;
    RadialGrid g(3, lc.base.N, lc.base.R);
    auto profile = gaussian(g, 1.0);
    auto res = estimate_lifespan(profile, 0.01, {1.0, 0.0, 2.5}, lc);
    CHECK(res.censored);
    CHECK(res.T_high == lc.base.t_max);
  }
}

TEST_CASE("trajectory save writes manifest and fields") {
  SolverConfig cfg;
  cfg.R = 8.0;
  cfg.N = 128;
  cfg.t_max = 0.5;
  RadialGrid g(3, cfg.N, cfg.R);
  CauchyData d(gaussian(g, 0.7), RadialField::zero(g));
  auto traj = evolve(d, {1.0, 0.0, 2.0}, cfg);
  traj.save("traj_out_test");
  auto back = RadialField::load_binary("traj_out_test/u_0000.bin");
  CHECK(back.grid().size() == 128);
  std::filesystem::remove_all("traj_out_test");
}

TEST_CASE("mid-step overflow without norm growth classifies as instability") {
  SolverConfig cfg;
  cfg.R = 8.0;
  cfg.N = 128;
  cfg.t_max = 1.0;
  RadialGrid g(3, cfg.N, cfg.R);
  SourceSpec src;
  src.amp = 1e300;  // overflows the first RK stage before any norm growth
  src.t0 = 0.0;
  src.sigma_t = 0.5;
  src.r0 = 1.0;
  src.sigma_r = 0.5;
  CauchyData d(RadialField::zero(g), RadialField::zero(g));
  auto traj = evolve(d, {1.0, 0.0, 2.0}, cfg, src);
  CHECK(traj.termination == Termination::instability);
  CHECK(traj.t_end > 0.0);
}
