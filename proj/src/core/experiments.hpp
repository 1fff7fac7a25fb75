#pragma once

#include <string>
#include <vector>

#include "inequality.hpp"
#include "solver.hpp"

namespace nlw {

struct LinearFit {
  double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingPoint {
  double eps = 0.0;
  double T = 0.0;            // finest-level detection
  double T_used = 0.0;       // Richardson-extrapolated value entering the fit
  bool censored = false;
  bool converged = false;
};

struct ScalingFit {
  int n = 3;
  double p = 2.0;
  Regime regime = Regime::critical;
  std::string abscissa;  // "eps^-(p-1)" for the critical fit, "ln eps" otherwise
  std::vector<ScalingPoint> points;
  int uncensored = 0;
  LinearFit fit;
  bool is_log = false;
  double predicted_exponent = 0.0;
  double r2_threshold = 0.95;
  double slope_tol_rel = 0.2;
  bool pass = false;
};

struct ProfileSpec {
  std::string kind = "gaussian";  // gaussian | constant
  double width = 1.0;
  double amp = 1.0;
  RadialField realize(const RadialGrid& g) const;
};

struct LifespanScalingConfig {
  int n = 3;
  double p = 2.0;
  double a = 1.0, b = 0.0;
  std::vector<double> eps_grid;
  ProfileSpec profile;
  double t_max = 150.0;
  double dr = 0.08;     // base resolution; refinements halve it
  int refinements = 2;
  double domain_margin = 5.0;  // R = t_max + margin
  double r2_threshold = 0.95;
  double slope_tol_rel = 0.2;
  int jobs = 0;
};

// runs estimate_lifespan per eps (parallel) and fits the regime's law
ScalingFit lifespan_scaling(const LifespanScalingConfig& cfg);

struct KssUniformityConfig {
  // the default pack is supercritical (delta1 > 0) so that all three
  // estimate variants apply
  int n = 3;
  double p = 2.5;
  double s = 1.9;
  std::vector<double> T_grid = {1.0, 4.0, 16.0, 64.0};
  double dr = 0.04;
  double spread_limit = 3.0;
  int jobs = 0;
};

struct KssUniformityReport {
  std::vector<InequalityReport> reports;  // free and forced family members
  std::vector<std::pair<std::string, double>> spreads;  // per (member, variant)
  double worst_spread = 0.0;
  bool pass = false;
};

KssUniformityReport kss_uniformity(const KssUniformityConfig& cfg);

struct Persistence2dConfig {
  double p = 4.0;
  double eps = 0.05;
  double eps_ratio = 2.0;  // second run at eps/eps_ratio
  double t_max = 100.0;
  double dr = 0.05;
  double linearity_tol = 0.25;
  int jobs = 0;
};

struct Persistence2dReport {
  double p = 4.0, s_c = 0.0;
  struct Run {
    double eps = 0.0;
    bool censored = false;
    double t_end = 0.0;
    double lp_linf_norm = 0.0;    // |du|_{L^{p-1}_t L^inf_x}
    double sup_hs_norm = 0.0;     // |du|_{L^inf_t Hdot^{s_c-1}}
  };
  std::vector<Run> runs;
  double norm_ratio = 0.0, eps_ratio = 0.0;
  bool linear_in_eps = false;
  bool blow_up_at_small_eps = false;  // would contradict the persistence reading
  bool pass = false;
};

Persistence2dReport global_persistence_2d(const Persistence2dConfig& cfg);

struct ChainStudyConfig {
  int n = 3;
  std::vector<double> s_grid = {0.25, 0.5, 0.75};
  std::vector<double> p_grid = {1.5, 2.0, 3.0};
  double pack_regularity = 1.9;  // s used to build the exponent packs
  GridSpec grid{3, 1024, 40.0};
  EnsembleSpec ensemble;
  int jobs = 0;
};

struct ChainStudyRow {
  double s = 0.0, p = 0.0;
  std::string weights;  // "identity" or "morawetz(delta,delta1)"
  InequalityReport report;
};

struct ChainStudyReport {
  std::vector<ChainStudyRow> rows;
  int refused_rows = 0;
  bool pass = false;  // all non-refused rows pass
};

ChainStudyReport chain_rule_constant_study(const ChainStudyConfig& cfg);

}  // namespace nlw
