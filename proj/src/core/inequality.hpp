#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ensemble.hpp"
#include "solver.hpp"
#include "weights.hpp"

namespace nlw {

struct GridSpec {
  int n = 3;
  int N = 1024;
  double R = 40.0;
};

struct IneqSample {
  std::string label;
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
};

// Houses the implicit constants of the estimates: an inequality "holds"
// operationally when the ratio ensemble is finite and its max is stable
// under doubling the resolution.
struct InequalityReport {
  std::string id;
  std::vector<std::pair<std::string, double>> params;
  bool refused = false;
  std::string refusal_reason;
  std::vector<IneqSample> samples;
  int degenerate_skipped = 0;
  double max_ratio = 0.0;
  double q25 = 0.0, q50 = 0.0, q90 = 0.0;
  // resolution pair (N, 2N)
  bool stability_checked = false;
  double max_ratio_coarse = 0.0, max_ratio_fine = 0.0, stability_change = 0.0;
  bool pass = false;

  void finalize(double stability_limit = 0.5);
};

// trace estimate |r^{n/2-s} f|_inf <~ |f|_{Hdot^s}, radial form; refuses
// s outside (1/2, n/2) where the estimate fails
InequalityReport test_trace(const GridSpec& gs, double s, const EnsembleSpec& es, int jobs = 0);

// Besov variant: |r^{(n-1)/2} f|_inf <~ |f|_{Bdot^{1/2}_{2,1}}
InequalityReport test_besov_trace(const GridSpec& gs, const EnsembleSpec& es, int jobs = 0);

// weighted fractional chain rule configuration; F(v) = |v|^p, G = F'
struct ChainRuleCase {
  double s = 0.5;                       // fractional order, in (0,1)
  double q = 2.0, q1 = 4.0, q2 = 4.0;   // Hoelder triple; q2 may be infinity
  WeightSpec w1, w2;
  double p = 2.0;                       // nonlinearity power
  double mu_constant = 1.0;             // |F'(tau v+(1-tau)w)| <= mu (G(v)+G(w))
  ChainRuleCase(WeightSpec a, WeightSpec b) : w1(a), w2(b) {}
  void validate() const;
};

InequalityReport test_chain_rule(const ChainRuleCase& cs, const GridSpec& gs,
                                 const EnsembleSpec& es, int jobs = 0);

// KSS / Morawetz variants on a recorded trajectory; one sample per
// (variant, T). `fine` optionally supplies the doubled-resolution rerun.
InequalityReport test_kss(const ExponentPack& pack, const Trajectory& traj,
                          const std::vector<double>& T_grid, const Trajectory* fine = nullptr);

// 2-D generalized Strichartz: |du|_{L^q_t L^inf_x} vs data + forcing, s = 1 - 1/q
InequalityReport test_strichartz_2d(double q, const std::vector<Trajectory>& trajs,
                                    const std::vector<Trajectory>* fine = nullptr);

}  // namespace nlw
