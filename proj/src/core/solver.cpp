#include "solver.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace nlw {

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::reached_t_max: return "reached_t_max";
    case Termination::blow_up: return "blow_up";
    case Termination::instability: return "instability";
  }
  return "?";
}

RadialField Trajectory::radial_derivative(const RadialField& f) {
  const auto& g = f.grid();
  const int N = g.size();
  const double h = g.dr();
  std::vector<double> d(N);
  for (int i = 0; i < N; ++i) {
    if (i == 0)
      d[i] = (f[1] - f[0]) / (2 * h);  // even ghost across the origin
    else if (i == N - 1)
      d[i] = (f[i] - f[i - 1]) / h;
    else
      d[i] = (f[i + 1] - f[i - 1]) / (2 * h);
  }
  return RadialField(g, std::move(d));
}

double Trajectory::sup_abs(const RadialField& f, double rmax) {
  const auto& g = f.grid();
  int M = std::min<int>(g.size(), static_cast<int>(rmax / g.dr()) - 2);
  if (M < 1) M = 1;
  double s = 0.0;
  for (int i = 0; i < M; ++i) s = std::max(s, std::fabs(f[i]));
  return s;
}

void Trajectory::save(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  char name[64];
  for (std::size_t m = 0; m < times.size(); ++m) {
    std::snprintf(name, sizeof name, "/u_%04zu.bin", m);
    u[m].save_binary(dir + name);
    std::snprintf(name, sizeof name, "/ut_%04zu.bin", m);
    ut[m].save_binary(dir + name);
  }
  std::ofstream os(dir + "/manifest.json");
  os << "{\n  \"n\": " << n << ",\n  \"p\": " << nl.p << ",\n  \"a\": " << nl.a
     << ",\n  \"b\": " << nl.b << ",\n  \"termination\": \"" << termination_name(termination)
     << "\",\n  \"t_end\": " << t_end << ",\n  \"times\": [";
  for (std::size_t m = 0; m < times.size(); ++m) os << (m ? ", " : "") << times[m];
  os << "]\n}\n";
}

double linear_energy(const RadialField& u, const RadialField& ut) {
  const auto& g = u.grid();
  const int N = g.size();
  const double h = g.dr();
  double e = 0.0;
  for (int i = 0; i < N; ++i) e += ut[i] * ut[i] * g.cell_volume(i);
  for (int i = 1; i < N; ++i) {
    double grad = (u[i] - u[i - 1]) / h;
    e += grad * grad * std::pow(i * h, g.dim() - 1) * h;
  }
  return unit_sphere_measure(g.dim()) * e;
}

// ---------------------------------------------------------------------------
// spectral propagators
// ---------------------------------------------------------------------------

CauchyData linear_propagator(const CauchyData& data, double t, double decay_threshold) {
  check_decay(data.u0, decay_threshold);
  check_decay(data.u1, decay_threshold);
  auto plan = TransformPlan::get(data.u0.grid());
  SpectralField U0 = plan->forward(data.u0);
  SpectralField U1 = plan->forward(data.u1);
  const auto& fg = U0.grid();
  std::vector<double> su(fg.size()), sv(fg.size());
  for (int k = 0; k < fg.size(); ++k) {
    double rho = fg.node(k);
    double c = std::cos(t * rho), s = std::sin(t * rho);
    su[k] = c * U0[k] + s / rho * U1[k];
    sv[k] = -rho * s * U0[k] + c * U1[k];
  }
  return CauchyData(plan->inverse(SpectralField(fg, std::move(su))),
                    plan->inverse(SpectralField(fg, std::move(sv))));
}

CauchyData duhamel(const std::vector<SpectralField>& forcing, double dt_sample, double t) {
  if (forcing.empty()) throw invalid_input("duhamel: empty forcing record");
  const auto& fg = forcing.front().grid();
  if (dt_sample * fg.max_node() > 0.5 * kPi * (1 + 1e-12))
    throw invalid_input("duhamel: forcing sampled too coarsely for the resolvable band");
  int steps = static_cast<int>(std::llround(t / dt_sample));
  if (std::fabs(steps * dt_sample - t) > 1e-9 * std::max(1.0, t))
    throw invalid_input("duhamel: t must be a multiple of the forcing sample step");
  if (steps >= static_cast<int>(forcing.size()))
    throw invalid_input("duhamel: forcing record under-resolved (too few samples)");

  // composite Newton-Cotes weights over 0..steps: Simpson for even counts,
  // Simpson + 3/8 tail when odd
  std::vector<double> w(static_cast<std::size_t>(steps) + 1, 0.0);
  auto add_simpson = [&](int lo, int hi) {
    for (int i = lo; i <= hi; ++i) {
      double c = (i == lo || i == hi) ? 1.0 : (((i - lo) % 2) ? 4.0 : 2.0);
      w[i] += c / 3.0;
    }
  };
  if (steps == 0) {
    // zero-length integral
  } else if (steps == 1) {
    w[0] = w[1] = 0.5;  // trapezoid; callers use steps >= 2 in practice
  } else if (steps % 2 == 0) {
    add_simpson(0, steps);
  } else if (steps == 3) {
    w[0] += 3.0 / 8; w[1] += 9.0 / 8; w[2] += 9.0 / 8; w[3] += 3.0 / 8;
  } else {
    add_simpson(0, steps - 3);
    w[steps - 3] += 3.0 / 8; w[steps - 2] += 9.0 / 8; w[steps - 1] += 9.0 / 8; w[steps] += 3.0 / 8;
  }

  std::vector<double> su(fg.size(), 0.0), sv(fg.size(), 0.0);
  for (int m = 0; m <= steps; ++m) {
    double tau = m * dt_sample;
    const auto& F = forcing[m];
    double wm = w[m] * dt_sample;
    if (wm == 0.0) continue;
    for (int k = 0; k < fg.size(); ++k) {
      double rho = fg.node(k);
      su[k] += wm * std::sin((t - tau) * rho) / rho * F[k];
      sv[k] += wm * std::cos((t - tau) * rho) * F[k];
    }
  }
  return CauchyData(inverse_transform(SpectralField(fg, std::move(su))),
                    inverse_transform(SpectralField(fg, std::move(sv))));
}

// ---------------------------------------------------------------------------
// method of lines
// ---------------------------------------------------------------------------

namespace {

// conservative form of the radial Laplacian: face fluxes r^{n-1} u_r divided
// by the exact cell volume of r^{n-1} dr; the r=0 face carries zero flux and
// the outer ghost enforces u(R) = 0
struct RadialLaplacian {
  int n, N;
  double h;
  std::vector<double> facew, vol;
  explicit RadialLaplacian(const RadialGrid& g)
      : n(g.dim()), N(g.size()), h(g.dr()), facew(N + 1), vol(N) {
    for (int i = 0; i <= N; ++i) facew[i] = std::pow(i * h, n - 1);
    for (int i = 0; i < N; ++i) vol[i] = g.cell_volume(i);
  }
  void apply(const std::vector<double>& u, std::vector<double>& out) const {
    for (int i = 0; i < N; ++i) {
      double fl = (i == 0) ? 0.0 : facew[i] * (u[i] - u[i - 1]) / h;
      double fr = (i == N - 1) ? facew[N] * (0.0 - u[N - 1]) / (0.5 * h)
                               : facew[i + 1] * (u[i + 1] - u[i]) / h;
      out[i] = (fr - fl) / vol[i];
    }
  }
};

}  // namespace

Trajectory evolve(const CauchyData& data, const NonlinearitySpec& nl, const SolverConfig& cfg,
                  const SourceSpec& src) {
  nl.validate();
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw invalid_input("evolve: cfl must lie in (0,1]");
  const RadialGrid grid(data.u0.grid().dim(), cfg.N, cfg.R);
  if (!(grid == data.u0.grid()))
    throw invalid_input("evolve: config grid does not match the data grid");
  const int N = cfg.N;
  const double h = grid.dr();
  RadialLaplacian lap(grid);

  std::vector<double> u = data.u0.samples(), v = data.u1.samples();
  std::vector<double> k1u(N), k1v(N), k2u(N), k2v(N), k3u(N), k3v(N), k4u(N), k4v(N);
  std::vector<double> tu(N), tv(N), lu(N), nlbuf(N);

  const double ab = std::fabs(nl.a) + std::fabs(nl.b);
  auto nonlinearity = [&](const std::vector<double>& uu, const std::vector<double>& vv, double t,
                          std::vector<double>& out) {
    for (int i = 0; i < N; ++i) {
      double nlv = 0.0;
      if (nl.a != 0.0) nlv += nl.a * abs_pow(vv[i], nl.p);
      if (nl.b != 0.0) {
        double gr;
        if (i == 0)
          gr = (uu[1] - uu[0]) / (2 * h);
        else if (i == N - 1)
          gr = (uu[i] - uu[i - 1]) / h;
        else
          gr = (uu[i + 1] - uu[i - 1]) / (2 * h);
        nlv += nl.b * abs_pow(gr, nl.p);
      }
      if (src.active()) nlv += src.eval(t, grid.node(i));
      out[i] = nlv;
    }
  };
  auto rhs = [&](const std::vector<double>& uu, const std::vector<double>& vv, double t,
                 std::vector<double>& du, std::vector<double>& dv) {
    lap.apply(uu, dv);
    nonlinearity(uu, vv, t, nlbuf);
    for (int i = 0; i < N; ++i) {
      du[i] = vv[i];
      dv[i] += nlbuf[i];
    }
  };

  Trajectory traj;
  traj.n = grid.dim();
  traj.nl = nl;
  traj.cfg = cfg;
  const double thr_low = cfg.blowup_threshold * 1e-2;

  double rho0 = 0.0;
  for (int i = 0; i < N; ++i)
    if (std::fabs(u[i]) > 1e-12 || std::fabs(v[i]) > 1e-12) rho0 = grid.node(i);
  traj.data_support_radius = rho0;

  auto grad_sup = [&](const std::vector<double>& uu, const std::vector<double>& vv, double t) {
    int M = N;
    if (cfg.causal_sup) {
      double rmax = std::min(cfg.R, 2.0 * cfg.R - rho0 - t);
      M = std::min<int>(N, static_cast<int>(rmax / h) - 2);
      if (M < 1) M = 1;
    }
    double s = 0.0;
    for (int i = 0; i < M; ++i) {
      s = std::max(s, std::fabs(vv[i]));
      double gr = i == 0 ? (uu[1] - uu[0]) / (2 * h)
                         : (i == N - 1 ? (uu[i] - uu[i - 1]) / h : (uu[i + 1] - uu[i - 1]) / (2 * h));
      s = std::max(s, std::fabs(gr));
    }
    return s;
  };

  auto record = [&](double t) {
    RadialField uf(grid, u), vf(grid, v);
    nonlinearity(u, v, t, nlbuf);
    traj.times.push_back(t);
    traj.u.push_back(uf);
    traj.ut.push_back(vf);
    traj.forcing.push_back(RadialField(grid, nlbuf));
  };

  double t = 0.0;
  long step = 0;
  bool fields_valid = true;
  double v_start = std::max(1.0, grad_sup(u, v, 0.0));
  record(0.0);

  for (;;) {
    double V = grad_sup(u, v, t);
    if (V >= cfg.blowup_threshold) {
      traj.termination = Termination::blow_up;
      traj.t_cross_high = t;
      break;
    }
    if (traj.t_cross_low < 0.0 && V >= thr_low) traj.t_cross_low = t;
    if (t >= cfg.t_max) {
      traj.termination = Termination::reached_t_max;
      break;
    }
    // CFL step, capped by the nonlinear growth time-scale so that genuine
    // blow-up can be tracked up to the sup threshold
    double dt = cfg.cfl * h;
    if (nl.active() && V > 1.0)
      dt = std::min(dt, cfg.nonlinear_dt_safety / (ab * std::pow(V, nl.p - 1.0)));
    dt = std::min(dt, cfg.t_max - t + 1e-14);

    rhs(u, v, t, k1u, k1v);
    for (int i = 0; i < N; ++i) { tu[i] = u[i] + 0.5 * dt * k1u[i]; tv[i] = v[i] + 0.5 * dt * k1v[i]; }
    rhs(tu, tv, t + 0.5 * dt, k2u, k2v);
    for (int i = 0; i < N; ++i) { tu[i] = u[i] + 0.5 * dt * k2u[i]; tv[i] = v[i] + 0.5 * dt * k2v[i]; }
    rhs(tu, tv, t + 0.5 * dt, k3u, k3v);
    for (int i = 0; i < N; ++i) { tu[i] = u[i] + dt * k3u[i]; tv[i] = v[i] + dt * k3v[i]; }
    rhs(tu, tv, t + dt, k4u, k4v);
    bool bad = false;
    for (int i = 0; i < N; ++i) {
      u[i] += dt / 6 * (k1u[i] + 2 * k2u[i] + 2 * k3u[i] + k4u[i]);
      v[i] += dt / 6 * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]);
      if (!std::isfinite(u[i]) || !std::isfinite(v[i])) bad = true;
    }
    t += dt;
    ++step;
    if (bad) {
      // a finite-time escape that outruns the step controller still counts as
      // blow-up when the norm had already grown past the secondary threshold
      traj.termination = V >= 100.0 * v_start ? Termination::blow_up : Termination::instability;
      if (traj.termination == Termination::blow_up && traj.t_cross_high < 0.0)
        traj.t_cross_high = t;
      fields_valid = false;
      break;
    }
    if (step % cfg.record_stride == 0) record(t);
  }
  traj.t_end = t;
  if (fields_valid && traj.times.back() != t) record(t);
  return traj;
}

// ---------------------------------------------------------------------------
// Picard iteration
// ---------------------------------------------------------------------------

PicardResult picard_iterate(const CauchyData& data, const NonlinearitySpec& nl, double T_slab,
                            int k, int quad_steps) {
  nl.validate();
  if (!(T_slab > 0.0)) throw invalid_input("picard_iterate: T_slab must be positive");
  if (quad_steps < 4) quad_steps = 4;
  const auto& grid = data.u0.grid();
  // honor the Duhamel density precondition (sample step <= dr/2)
  int min_steps = static_cast<int>(std::ceil(2.0 * T_slab / grid.dr()));
  if (quad_steps < min_steps) quad_steps = min_steps + (min_steps % 2);
  auto plan = TransformPlan::get(grid);
  const double dt = T_slab / quad_steps;

  SolverConfig slab_cfg;
  slab_cfg.R = grid.radius();
  slab_cfg.N = grid.size();
  slab_cfg.t_max = T_slab;

  auto make_traj = [&](std::vector<RadialField> us, std::vector<RadialField> uts,
                       std::vector<RadialField> fs) {
    Trajectory tr;
    tr.n = grid.dim();
    tr.nl = nl;
    tr.cfg = slab_cfg;
    tr.t_end = T_slab;
    tr.termination = Termination::reached_t_max;
    for (int m = 0; m <= quad_steps; ++m) tr.times.push_back(m * dt);
    tr.u = std::move(us);
    tr.ut = std::move(uts);
    tr.forcing = std::move(fs);
    return tr;
  };

  // iterate 0: the free evolution
  std::vector<RadialField> us, uts, fs;
  for (int m = 0; m <= quad_steps; ++m) {
    auto hd = linear_propagator(data, m * dt);
    us.push_back(std::move(hd.u0));
    uts.push_back(std::move(hd.u1));
    fs.push_back(RadialField::zero(grid));
  }
  PicardResult res;
  res.iterates.push_back(make_traj(us, uts, fs));

  const double norm0 = sobolev_norm(data.u1, 0.0) + sobolev_norm(data.u0, 1.0);
  for (int it = 1; it <= k; ++it) {
    const Trajectory& prev = res.iterates.back();
    // N[u] at the quadrature times, on the spectral side
    std::vector<SpectralField> NF;
    std::vector<RadialField> Nphys;
    NF.reserve(quad_steps + 1);
    for (int m = 0; m <= quad_steps; ++m) {
      auto grad = Trajectory::radial_derivative(prev.u[m]);
      std::vector<double> nlv(grid.size());
      for (int i = 0; i < grid.size(); ++i)
        nlv[i] = nl.a * abs_pow(prev.ut[m][i], nl.p) + nl.b * abs_pow(grad[i], nl.p);
      RadialField Nf(grid, std::move(nlv));
      NF.push_back(plan->forward(Nf));
      Nphys.push_back(std::move(Nf));
    }
    std::vector<RadialField> nus, nuts;
    bool finite = true;
    for (int m = 0; m <= quad_steps; ++m) {
      auto hd = linear_propagator(data, m * dt);
      auto ih = duhamel(NF, dt, m * dt);
      for (int i = 0; i < grid.size(); ++i) {
        hd.u0[i] += ih.u0[i];
        hd.u1[i] += ih.u1[i];
        if (!std::isfinite(hd.u0[i])) finite = false;
      }
      nus.push_back(std::move(hd.u0));
      nuts.push_back(std::move(hd.u1));
    }
    auto traj = make_traj(nus, nuts, Nphys);
    // X^0 norm of the increment
    Trajectory diff = traj;
    for (int m = 0; m <= quad_steps; ++m)
      for (int i = 0; i < grid.size(); ++i) {
        diff.u[m][i] -= res.iterates.back().u[m][i];
        diff.ut[m][i] -= res.iterates.back().ut[m][i];
      }
    auto pack = critical_exponents(grid.dim(), nl.p, 1.9);
    double inc = x_norm(diff, 0.0, pack, T_slab);
    res.increment_x0.push_back(inc);
    double growth = sobolev_norm(traj.ut.back(), 0.0) + sobolev_norm(traj.u.back(), 1.0);
    res.iterates.push_back(std::move(traj));
    if (!finite || growth > 1e3 * std::max(norm0, 1e-300)) {
      res.diverged = true;
      break;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// X norm
// ---------------------------------------------------------------------------

double regime_time_factor(const ExponentPack& pack, double T) {
  switch (pack.regime) {
    case Regime::supercritical: return std::min(std::pow(T, pack.delta), 1.0);
    case Regime::critical:
      return std::min(std::pow(T, pack.delta), std::sqrt(std::log(2.0 + T)));
    case Regime::subcritical: return std::pow(T, pack.delta);
  }
  return 1.0;
}

double x_norm(const Trajectory& traj, double nu, const ExponentPack& pack, double T) {
  if (!(nu >= 0.0 && nu < 1.0)) throw invalid_input("x_norm: nu must lie in [0,1)");
  if (traj.times.size() < 2) throw invalid_input("x_norm: trajectory stores too few samples");
  WeightSpec w = WeightSpec::morawetz_weight(traj.n, pack.delta, pack.delta1);
  auto weight = [&](double r) { return w.eval(r); };

  double l2t = 0.0, sup = 0.0, prev_t = 0.0, prev_val = 0.0;
  bool first = true;
  for (std::size_t m = 0; m < traj.times.size(); ++m) {
    double t = traj.times[m];
    if (t > T * (1 + 1e-12)) break;
    RadialField dnu_u = nu == 0.0 ? traj.u[m] : fractional_derivative(traj.u[m], nu, 1.0);
    RadialField dnu_ut = nu == 0.0 ? traj.ut[m] : fractional_derivative(traj.ut[m], nu, 1.0);
    RadialField grad = Trajectory::radial_derivative(dnu_u);
    double a = weighted_l2_norm(dnu_ut, weight);
    double b = weighted_l2_norm(grad, weight);
    double val = a * a + b * b;
    if (!first) l2t += 0.5 * (t - prev_t) * (val + prev_val);
    prev_t = t;
    prev_val = val;
    first = false;

    double e1 = sobolev_norm(traj.ut[m], nu);
    double e2 = sobolev_norm(traj.u[m], nu + 1.0);
    sup = std::max(sup, std::sqrt(e1 * e1 + e2 * e2));
  }
  return std::sqrt(l2t) / regime_time_factor(pack, T) + sup;
}

// ---------------------------------------------------------------------------
// lifespan estimation
// ---------------------------------------------------------------------------

LifespanResult estimate_lifespan(const RadialField& profile, double eps,
                                 const NonlinearitySpec& nl, const LifespanConfig& cfg) {
  LifespanResult res;
  res.eps = eps;
  const int n = profile.grid().dim();
  for (int level = 0; level <= cfg.refinements; ++level) {
    SolverConfig sc = cfg.base;
    sc.N = cfg.base.N << level;
    RadialGrid g(n, sc.N, sc.R);
    std::vector<double> u1(sc.N);
    // profile resampled by linear interpolation from its own grid
    const auto& pg = profile.grid();
    for (int i = 0; i < sc.N; ++i) {
      double r = g.node(i);
      double x = r / pg.dr() - 0.5;
      int j = static_cast<int>(std::floor(x));
      double fr = x - j;
      double val;
      if (j < 0)
        val = profile[0];
      else if (j + 1 >= pg.size())
        val = profile[pg.size() - 1];  // flat extension; 0 for compact profiles
      else
        val = (1 - fr) * profile[j] + fr * profile[j + 1];
      u1[i] = eps * val;
    }
    CauchyData data(RadialField::zero(g), RadialField(g, std::move(u1)));
    auto traj = evolve(data, nl, sc);
    double T;
    bool censored;
    if (traj.termination == Termination::blow_up) {
      T = traj.t_end;
      censored = false;
    } else {
      T = sc.t_max;
      censored = true;
    }
    res.refinement_times.push_back(T);
    res.refinement_N.push_back(sc.N);
    res.censored = censored;
    if (level == cfg.refinements && !censored) {
      res.threshold_stable =
          traj.t_cross_low > 0.0 &&
          std::fabs(traj.t_cross_high - traj.t_cross_low) <= 0.01 * traj.t_cross_high;
    }
    if (censored) break;  // no point refining a censored run
  }
  const auto& hist = res.refinement_times;
  double last = hist.back();
  if (res.censored) {
    res.T_low = res.T_high = last;
    res.converged = true;  // censoring is a stable outcome by construction
    res.T_extrapolated = last;
  } else if (hist.size() >= 2) {
    double prev = hist[hist.size() - 2];
    res.T_low = std::min(prev, last);
    res.T_high = std::max(prev, last);
    res.converged = std::fabs(last - prev) <= cfg.converge_rel * std::fabs(last);
    res.T_extrapolated = last + (last - prev) / 3.0;  // second-order scheme
  } else {
    res.T_low = res.T_high = res.T_extrapolated = last;
    res.converged = false;
  }
  return res;
}

}  // namespace nlw
