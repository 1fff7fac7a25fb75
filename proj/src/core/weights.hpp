#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace nlw {

enum class Regime { subcritical, critical, supercritical };

std::string regime_name(Regime r);

// Scalar exponents for given (n, p, s):
//   p_c = 1 + 2/(n-1)
//   s_c = (n+2)/2 - 1/(p-1)
//   s_l = (n+5)/4           (reported only; drives no logic)
//   s_o = max(3/2, s_c)
//   delta  = (p-1)(s - s_c)/2   for p >= p_c,   (p-1)(3/2 - s_c)/2  for p < p_c
//   delta1 = (n-1)/4 min(1, p-p_c) for p > p_c, 0 at p_c, -delta below
// The lifespan law is a power of eps except at p = p_c, where ln T scales
// like eps^{-(p-1)}.
struct ExponentPack {
  int n = 3;
  double p = 2.0;
  double s = 1.75;
  double p_c = 0.0;
  double s_c = 0.0;
  double s_l = 0.0;
  double s_o = 0.0;
  double delta = 0.0;
  double delta1 = 0.0;
  Regime regime = Regime::critical;
  bool lifespan_is_log = false;    // critical regime
  double lifespan_exponent = 0.0;  // power regimes: exponent of eps in T_eps;
                                   // critical: the rate -(p-1) inside ln T
  bool in_theorem_range = true;    // p in (1, 1+2/(n-2)) [n>=3] and s in (s_o, 2)
  std::string warning;
};

ExponentPack critical_exponents(int n, double p, double s);

// Radial weights: constant, power r^a, product r^a <r>^b, and the
// Morawetz-estimate weight r^{-1+2 delta} <r>^{-2 delta - 2 delta1};
// <r> = sqrt(1+r^2).
// All kinds reduce to the product form internally, which is closed under
// powers and products.
class WeightSpec {
 public:
  static WeightSpec constant(int n);
  static WeightSpec power(int n, double a);
  static WeightSpec product_power(int n, double a, double b);
  static WeightSpec morawetz_weight(int n, double delta, double delta1);

  double eval(double r) const;
  double power_exponent() const { return a_; }     // r^a factor
  double bracket_exponent() const { return b_; }   // <r>^b factor
  int dim() const { return n_; }
  std::string describe() const;

  WeightSpec pow(double q) const { return product_power(n_, a_ * q, b_ * q); }
  WeightSpec operator*(const WeightSpec& o) const {
    return product_power(n_, a_ + o.a_, b_ + o.b_);
  }

 private:
  WeightSpec(int n, double a, double b) : n_(n), a_(a), b_(b) {}
  int n_;
  double a_, b_;
};

struct SamplingPlan {
  int center_count = 16;     // log-spaced |x| in [center_lo, center_hi]
  int radius_count = 16;     // log-spaced ball radii in [radius_lo, radius_hi]
  double center_lo = 1e-3, center_hi = 1e3;
  double radius_lo = 1e-3, radius_hi = 1e3;
  int refinements = 3;       // levels; counts double per level (nested grids)
  int quadrature_panels = 64;
};

enum class ApVerdict { bounded, diverging, inconclusive };

std::string verdict_name(ApVerdict v);

struct ApReport {
  double p = 1.0;  // 1 for the A_1 quotient
  double estimate = 0.0;
  long sample_count = 0;
  std::vector<double> refinement_history;
  std::vector<long> refinement_samples;
  ApVerdict verdict = ApVerdict::inconclusive;
};

// sup over sampled balls of (average of w over B) / w(center); ball averages
// reduce to a 1-D quadrature in u = |y| against the spherical-cap measure.
ApReport estimate_a1_constant(const WeightSpec& w, const SamplingPlan& plan = {}, int jobs = 0);

// sup of (avg_B w) (avg_B w^{1-p'})^{p-1}, p in (1, inf)
ApReport estimate_ap_constant(const WeightSpec& w, double p, const SamplingPlan& plan = {},
                              int jobs = 0);

}  // namespace nlw
