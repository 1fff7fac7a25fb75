#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grid.hpp"
#include "transform.hpp"
#include "weights.hpp"

namespace nlw {

struct CauchyData {
  RadialField u0;
  RadialField u1;
  CauchyData(RadialField a, RadialField b) : u0(std::move(a)), u1(std::move(b)) {
    if (!(u0.grid() == u1.grid())) throw invalid_input("CauchyData: grids differ");
    u0.check_finite();
    u1.check_finite();
  }
};

// Box u = a |u_t|^p + b |grad u|^p
struct NonlinearitySpec {
  double a = 1.0;
  double b = 0.0;
  double p = 2.0;
  bool active() const { return a != 0.0 || b != 0.0; }
  void validate() const {
    if (!(p > 1.0)) throw invalid_input("NonlinearitySpec: p must exceed 1");
  }
};

// optional external forcing: amp * exp(-((t-t0)^2/(2 st^2) + (r-r0)^2/(2 sr^2)))
struct SourceSpec {
  double amp = 0.0;
  double t0 = 1.0, sigma_t = 0.5;
  double r0 = 1.0, sigma_r = 0.5;
  bool active() const { return amp != 0.0; }
  double eval(double t, double r) const {
    double dt = (t - t0) / sigma_t, dr = (r - r0) / sigma_r;
    return amp * std::exp(-0.5 * (dt * dt + dr * dr));
  }
};

struct SolverConfig {
  double R = 16.0;
  int N = 1024;
  double cfl = 0.5;
  double blowup_threshold = 1e6;
  double t_max = 10.0;
  int record_stride = 4;
  // time-step safety factor against the nonlinear growth scale
  double nonlinear_dt_safety = 0.2;
  // restrict sup-norm monitoring to the causally clean region r < R - t
  bool causal_sup = true;
};

enum class Termination { reached_t_max, blow_up, instability };

std::string termination_name(Termination t);

struct Trajectory {
  int n = 3;
  NonlinearitySpec nl;
  SolverConfig cfg;
  std::vector<double> times;
  std::vector<RadialField> u;
  std::vector<RadialField> ut;
  std::vector<RadialField> forcing;  // Box u at stored times
  Termination termination = Termination::reached_t_max;
  double t_end = 0.0;
  double data_support_radius = 0.0;  // numerical support of the Cauchy data
  // detected crossing times of the secondary/primary sup thresholds (1e4, 1e6
  // by default); used for the threshold-insensitivity flag
  double t_cross_low = -1.0;
  double t_cross_high = -1.0;

  const RadialGrid& grid() const { return u.front().grid(); }
  // Largest radius unaffected by the Dirichlet wall at time t: a boundary
  // signal needs travel time (R - rho0) + (R - r), so r < 2R - rho0 - t is
  // causally clean. Covers the whole grid when R >= t_max + rho0.
  double clean_radius(double t) const {
    double R = cfg.R;
    return std::min(R, 2.0 * R - data_support_radius - t);
  }
  // |grad u| for radial u is |d_r u|, by second-order central differences
  static RadialField radial_derivative(const RadialField& f);
  // sup over nodes with r < rmax - 2dr
  static double sup_abs(const RadialField& f, double rmax);
  void save(const std::string& dir) const;
};

// discrete wave energy |u_t|^2 + |u_r|^2 of the flux scheme: cell volumes for
// the velocity, face-centered gradients for the spatial part
double linear_energy(const RadialField& u, const RadialField& ut);

// exact-in-time spectral evolution of the free wave
CauchyData linear_propagator(const CauchyData& data, double t, double decay_threshold = 1e-10);

// Duhamel operator for forcing sampled at uniform times 0, dt, ..., m dt:
// returns (u(t), u_t(t)) with vanishing data, t = k dt for some k <= m.
// Simpson quadrature in time on the spectral side.
CauchyData duhamel(const std::vector<SpectralField>& forcing, double dt_sample, double t);

Trajectory evolve(const CauchyData& data, const NonlinearitySpec& nl, const SolverConfig& cfg,
                  const SourceSpec& src = {});

// Picard iterates u^(0) = H[u0,u1], u^(m+1) = H + I[N[u^(m)]] on [0, T_slab],
// all realized spectrally. Returns k+1 trajectories (iterates 0..k).
struct PicardResult {
  std::vector<Trajectory> iterates;
  std::vector<double> increment_x0;  // X^0 norm of consecutive differences
  bool diverged = false;
};
PicardResult picard_iterate(const CauchyData& data, const NonlinearitySpec& nl, double T_slab,
                            int k, int quad_steps = 64);

// discrete X-norm of Section 3-style iteration bookkeeping:
//   A_T^{-1} |w^{1/2} du D^nu u|_{L^2_T L^2} + |du u|_{L^inf_T Hdot^nu}
// with A_T chosen by the regime of `pack`.
double x_norm(const Trajectory& traj, double nu, const ExponentPack& pack, double T);

double regime_time_factor(const ExponentPack& pack, double T);  // the A~_T above

struct LifespanResult {
  double eps = 0.0;
  double T_low = 0.0, T_high = 0.0;
  bool censored = false;
  bool converged = false;
  bool threshold_stable = false;  // T at sup-thresholds 1e4 and 1e6 within 1%
  std::vector<double> refinement_times;  // detected T per refinement level
  std::vector<int> refinement_N;
  // Richardson extrapolation of the last two levels (second-order scheme);
  // equals T_high when only one level ran or the run was censored
  double T_extrapolated = 0.0;
};

struct LifespanConfig {
  SolverConfig base;
  int refinements = 2;  // levels beyond the base resolution (dr halves)
  double converge_rel = 0.01;
};

// data u0 = 0, u1 = eps * profile
LifespanResult estimate_lifespan(const RadialField& profile, double eps,
                                 const NonlinearitySpec& nl, const LifespanConfig& cfg);

}  // namespace nlw
