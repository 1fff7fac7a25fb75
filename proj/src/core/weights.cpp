#include "weights.hpp"

#include <algorithm>
#include <cmath>

namespace nlw {

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::subcritical: return "subcritical";
    case Regime::critical: return "critical";
    case Regime::supercritical: return "supercritical";
  }
  return "?";
}

ExponentPack critical_exponents(int n, double p, double s) {
  if (n < 2) throw invalid_input("critical_exponents: n must be >= 2");
  if (!(p > 1.0)) throw invalid_input("critical_exponents: p must exceed 1");
  ExponentPack e;
  e.n = n;
  e.p = p;
  e.s = s;
  e.p_c = 1.0 + 2.0 / (n - 1);
  e.s_c = 0.5 * (n + 2) - 1.0 / (p - 1);
  e.s_l = 0.25 * (n + 5);
  e.s_o = std::max(1.5, e.s_c);

  const double tol = 1e-12 * std::max(1.0, e.p_c);
  if (std::fabs(p - e.p_c) <= tol)
    e.regime = Regime::critical;
  else if (p > e.p_c)
    e.regime = Regime::supercritical;
  else
    e.regime = Regime::subcritical;

  if (e.regime == Regime::subcritical) {
    e.delta = 0.5 * (p - 1) * (1.5 - e.s_c);
    e.delta1 = -e.delta;
    e.lifespan_is_log = false;
    e.lifespan_exponent = 2.0 * (p - 1) / ((n - 1) * (p - 1) - 2.0);  // = -1/(3/2 - s_c)
  } else {
    e.delta = 0.5 * (p - 1) * (s - e.s_c);
    e.delta1 = e.regime == Regime::critical ? 0.0 : 0.25 * (n - 1) * std::min(1.0, p - e.p_c);
    if (e.regime == Regime::critical) {
      e.lifespan_is_log = true;
      e.lifespan_exponent = -(p - 1);  // rate inside ln T
    } else {
      e.lifespan_is_log = false;
      e.lifespan_exponent = -1.0 / (s - e.s_c);  // the large-data branch
    }
  }

  e.in_theorem_range = true;
  if (n >= 3 && !(p < 1.0 + 2.0 / (n - 2))) {
    e.in_theorem_range = false;
    e.warning = "p outside (1, 1+2/(n-2))";
  }
  if (!(s > e.s_o && s < 2.0)) {
    e.in_theorem_range = false;
    if (!e.warning.empty()) e.warning += "; ";
    e.warning += "s outside (s_o, 2)";
  }

  if (e.regime != Regime::subcritical && !(e.delta > 0.0 && e.delta < 0.5)) {
    if (!e.warning.empty()) e.warning += "; ";
    e.warning += "delta outside (0, 1/2)";
    e.in_theorem_range = false;
  }
  return e;
}

WeightSpec WeightSpec::constant(int n) { return WeightSpec(n, 0.0, 0.0); }
WeightSpec WeightSpec::power(int n, double a) { return WeightSpec(n, a, 0.0); }
WeightSpec WeightSpec::product_power(int n, double a, double b) { return WeightSpec(n, a, b); }
WeightSpec WeightSpec::morawetz_weight(int n, double delta, double delta1) {
  return WeightSpec(n, -1.0 + 2.0 * delta, -2.0 * delta - 2.0 * delta1);
}

double WeightSpec::eval(double r) const {
  if (!(r > 0.0)) throw invalid_input("WeightSpec::eval: r must be positive");
  double v = 1.0;
  if (a_ != 0.0) v *= std::pow(r, a_);
  if (b_ != 0.0) v *= std::pow(1.0 + r * r, 0.5 * b_);
  return v;
}

std::string WeightSpec::describe() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "r^%g<r>^%g (n=%d)", a_, b_, n_);
  return buf;
}

std::string verdict_name(ApVerdict v) {
  switch (v) {
    case ApVerdict::bounded: return "bounded";
    case ApVerdict::diverging: return "diverging";
    case ApVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// measure of the sphere {|y| = u} inside the ball B_rho(x0 e), divided by u^{n-1}
double cap_fraction(int n, double x0, double rho, double u) {
  double c = (x0 * x0 + u * u - rho * rho) / (2.0 * x0 * u);
  if (c <= -1.0) return n == 2 ? 2.0 * kPi : 4.0 * kPi;  // sphere fully inside
  if (c >= 1.0) return 0.0;
  if (n == 2) return 2.0 * std::acos(c);
  return 2.0 * kPi * (1.0 - c);
}

// integral over B_rho(x) of g(|y|), by 1-D quadrature in u with a
// geometrically graded mesh toward u=0 when the origin is inside the ball
double ball_integral(int n, double x0, double rho, int panels, int level,
                     const std::function<double(double)>& g) {
  double lo = std::max(0.0, x0 - rho);
  double hi = x0 + rho;
  auto integrand = [&](double u) { return g(u) * std::pow(u, n - 1) * cap_fraction(n, x0, rho, u); };
  auto simpson = [&](double a, double b, int m) {
    // composite Simpson with m panels
    double h = (b - a) / (2 * m), s = integrand(a) + integrand(b);
    for (int i = 1; i < 2 * m; ++i) s += integrand(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
  };
  double total = 0.0;
  if (lo == 0.0) {
    // graded panels [hi*q^{j+1}, hi*q^j]; the cutoff shrinks with the level
    double cut = hi * std::pow(10.0, -(4.0 + 2.0 * level));
    int gpanels = 8 * (level + 2);
    double ratio = std::pow(cut / hi, 1.0 / gpanels);
    double b = hi;
    for (int j = 0; j < gpanels; ++j) {
      double a = b * ratio;
      total += simpson(a, b, std::max(2, panels / gpanels));
      b = a;
    }
  } else {
    total = simpson(lo, hi, panels);
  }
  return total;
}

ApReport estimate_quotient(const WeightSpec& w, double p, const SamplingPlan& plan, int jobs) {
  const int n = w.dim();
  const bool a1 = (p <= 1.0);
  const double pprime_pow = a1 ? 0.0 : 1.0 - p / (p - 1.0);  // 1 - p'
  WeightSpec dual = w.pow(pprime_pow);

  ApReport rep;
  rep.p = a1 ? 1.0 : p;
  for (int level = 0; level < plan.refinements; ++level) {
    int cc = plan.center_count * (1 << level) + (level ? 1 : 0);
    int rc = plan.radius_count * (1 << level) + (level ? 1 : 0);
    int panels = plan.quadrature_panels * (1 << level);
    std::vector<double> centers(cc), radii(rc);
    for (int i = 0; i < cc; ++i)
      centers[i] = plan.center_lo * std::pow(plan.center_hi / plan.center_lo,
                                             cc == 1 ? 0.0 : double(i) / (cc - 1));
    for (int i = 0; i < rc; ++i)
      radii[i] = plan.radius_lo * std::pow(plan.radius_hi / plan.radius_lo,
                                           rc == 1 ? 0.0 : double(i) / (rc - 1));
    std::vector<double> per_center(cc, 0.0);
    parallel_for(static_cast<std::size_t>(cc), jobs, [&](std::size_t ic) {
      double x0 = centers[ic];
      double best = 0.0;
      for (double rho : radii) {
        double vol = ball_integral(n, x0, rho, panels, level, [](double) { return 1.0; });
        double avg_w =
            ball_integral(n, x0, rho, panels, level, [&](double u) { return w.eval(u); }) / vol;
        double q;
        if (a1) {
          q = avg_w / w.eval(x0);
        } else {
          double avg_dual =
              ball_integral(n, x0, rho, panels, level, [&](double u) { return dual.eval(u); }) /
              vol;
          q = avg_w * std::pow(avg_dual, p - 1.0);
        }
        if (std::isfinite(q)) best = std::max(best, q);
      }
      per_center[ic] = best;
    });
    double sup = 0.0;
    for (double v : per_center) sup = std::max(sup, v);
    rep.refinement_history.push_back(sup);
    rep.refinement_samples.push_back(static_cast<long>(cc) * rc);
    rep.sample_count += static_cast<long>(cc) * rc;
    rep.estimate = sup;
  }

  const auto& h = rep.refinement_history;
  const std::size_t m = h.size();
  if (m >= 2) {
    bool grew = true;
    for (std::size_t i = m >= 3 ? m - 2 : m - 1; i < m; ++i)
      grew = grew && h[i] > 1.25 * h[i - 1];
    double rel = std::fabs(h[m - 1] - h[m - 2]) / std::max(1e-300, h[m - 1]);
    if (grew)
      rep.verdict = ApVerdict::diverging;
    else if (rel <= 0.10)
      rep.verdict = ApVerdict::bounded;
    else
      rep.verdict = ApVerdict::inconclusive;
  }
  return rep;
}

}  // namespace

ApReport estimate_a1_constant(const WeightSpec& w, const SamplingPlan& plan, int jobs) {
  return estimate_quotient(w, 1.0, plan, jobs);
}

ApReport estimate_ap_constant(const WeightSpec& w, double p, const SamplingPlan& plan, int jobs) {
  if (!(p > 1.0)) throw invalid_input("estimate_ap_constant: p must exceed 1");
  return estimate_quotient(w, p, plan, jobs);
}

}  // namespace nlw
