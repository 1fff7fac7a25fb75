#include <cmath>

#include "doctest.h"
#include "weights.hpp"

using namespace nlw;

TEST_CASE("critical exponents: reference values") {
  SUBCASE("n=3 p=2 s=1.75 (critical)") {
    auto e = critical_exponents(3, 2.0, 1.75);
    CHECK(e.p_c == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e.s_c == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(e.s_o == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(e.delta == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(e.delta1 == 0.0);
    CHECK(e.regime == Regime::critical);
    CHECK(e.lifespan_is_log);
    CHECK(e.lifespan_exponent == doctest::Approx(-1.0));
    CHECK(e.in_theorem_range);
  }
  SUBCASE("n=3 p=2.5 s=1.9 (supercritical)") {
    auto e = critical_exponents(3, 2.5, 1.9);
    CHECK(e.s_c == doctest::Approx(11.0 / 6.0).epsilon(1e-12));
    CHECK(e.delta == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(e.delta1 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(e.regime == Regime::supercritical);
  }
  SUBCASE("n=2 p=2 s=1.6 (subcritical)") {
    auto e = critical_exponents(2, 2.0, 1.6);
    CHECK(e.p_c == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(e.s_c == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.regime == Regime::subcritical);
    CHECK(e.delta == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(e.delta1 == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(e.lifespan_exponent == doctest::Approx(-2.0).epsilon(1e-14));
    // both closed forms of the exponent agree
    CHECK(-1.0 / (1.5 - e.s_c) == doctest::Approx(e.lifespan_exponent).epsilon(1e-14));
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(critical_exponents(1, 2.0, 1.75), invalid_input);
    CHECK_THROWS_AS(critical_exponents(3, 1.0, 1.75), invalid_input);
  }
  SUBCASE("out-of-theorem inputs warn but do not throw") {
    auto e = critical_exponents(3, 4.0, 1.9);  // p >= 1+2/(n-2) = 3
    CHECK_FALSE(e.in_theorem_range);
    CHECK_FALSE(e.warning.empty());
  }
}

TEST_CASE("subcritical lifespan exponent closed forms agree (property)") {
  Rng rng(20240803);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 2 + int(rng.uniform() * 2);  // 2 or 3
    double p_c = 1.0 + 2.0 / (n - 1);
    double p = 1.0 + rng.uniform(0.05, 0.95) * (p_c - 1.0);  // p in (1, p_c)
    auto e = critical_exponents(n, p, 1.9);
    double form1 = -1.0 / (1.5 - e.s_c);
    double form2 = 2.0 * (p - 1) / ((n - 1) * (p - 1) - 2.0);
    CHECK(std::fabs(form1 - form2) <= 1e-12 * std::fabs(form1));
    CHECK(e.lifespan_exponent == doctest::Approx(form2).epsilon(1e-12));
  }
}

TEST_CASE("regime boundary continuity of delta across p_c") {
  int n = 3;
  double s = 1.5 + 1e-9;
  auto lo = critical_exponents(n, 2.0 - 1e-9, s);
  auto hi = critical_exponents(n, 2.0 + 1e-9, s);
  CHECK(std::fabs(lo.delta - hi.delta) < 1e-6);
}

TEST_CASE("A1 admissibility of the morawetz weight (property)") {
  Rng rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 2 + int(rng.uniform() * 2);
    double lo = 1.0 + 2.0 / (n - 1) ? 0.0 : 0.0;
    (void)lo;
    double pmax = n >= 3 ? 1.0 + 2.0 / (n - 2) : 4.0;
    double p = 1.0 + rng.uniform(0.02, 0.98) * (pmax - 1.0);
    auto probe = critical_exponents(n, p, 1.9);
    double s = rng.uniform(std::min(1.999, probe.s_o + 1e-6), 2.0);
    auto e = critical_exponents(n, p, s);
    if (!e.in_theorem_range) continue;
    CHECK(0.0 <= 1.0 - 2 * e.delta);
    CHECK(1.0 - 2 * e.delta <= 1.0 + 2 * e.delta1 + 1e-15);
    CHECK(1.0 + 2 * e.delta1 < n);
    // the identity (1-2delta)/(p-1) stated alongside the definition
    double lhs = (1.0 - 2 * e.delta) / (p - 1.0);
    double rhs = p >= e.p_c ? 0.5 * n - (s - 1.0) : 0.5 * (n - 1);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("weight evaluation") {
  auto w = WeightSpec::morawetz_weight(3, 0.125, 0.0);
  CHECK(w.eval(1.0) == doctest::Approx(std::pow(2.0, -0.125)).epsilon(1e-12));
  CHECK(w.eval(1.0) == doctest::Approx(0.91700404).epsilon(1e-7));
  auto c = WeightSpec::constant(3);
  CHECK(c.eval(0.013) == 1.0);
  CHECK(c.eval(721.0) == 1.0);
  auto p = WeightSpec::power(3, -0.5);
  CHECK(p.eval(4.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(p.eval(0.0), invalid_input);
  CHECK_THROWS_AS(p.eval(-1.0), invalid_input);
}

TEST_CASE("A1 estimation") {
  SamplingPlan plan;
  plan.center_count = 8;
  plan.radius_count = 8;
  plan.refinements = 3;

  SUBCASE("constant weight has estimate 1") {
    auto rep = estimate_a1_constant(WeightSpec::constant(3), plan);
    CHECK(rep.estimate == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.verdict == ApVerdict::bounded);
  }
  SUBCASE("r^{-1/2} in R^3 is A1") {
    auto rep = estimate_a1_constant(WeightSpec::power(3, -0.5), plan);
    CHECK(rep.verdict == ApVerdict::bounded);
    CHECK(rep.estimate > 1.0);
  }
  SUBCASE("r^{-3} in R^3 diverges") {
    auto rep = estimate_a1_constant(WeightSpec::power(3, -3.0), plan);
    CHECK(rep.verdict == ApVerdict::diverging);
  }
  SUBCASE("morawetz weight from an admissible pack is A1") {
    auto e = critical_exponents(3, 2.0, 1.75);
    auto w = WeightSpec::morawetz_weight(3, e.delta, e.delta1);
    auto rep = estimate_a1_constant(w, plan);
    CHECK(rep.verdict == ApVerdict::bounded);
  }
}

TEST_CASE("Ap estimation") {
  SamplingPlan plan;
  plan.center_count = 8;
  plan.radius_count = 8;
  plan.refinements = 3;

  SUBCASE("constant is 1 for any p") {
    for (double p : {1.5, 2.0, 4.0}) {
      auto rep = estimate_ap_constant(WeightSpec::constant(2), p, plan);
      CHECK(rep.estimate == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("A1 morawetz weight lies in A2") {
    auto w = WeightSpec::morawetz_weight(3, 0.125, 0.0);
    auto rep = estimate_ap_constant(w, 2.0, plan);
    CHECK(rep.verdict == ApVerdict::bounded);
  }
  SUBCASE("power weight beyond the Ap range diverges") {
    // |x|^a in A_p iff a in (-n, n(p-1)); take a = n(p-1)*1.1 with p=2, n=2
    auto rep = estimate_ap_constant(WeightSpec::power(2, 2.2), 2.0, plan);
    CHECK(rep.verdict == ApVerdict::diverging);
  }
  SUBCASE("p must exceed 1") {
    CHECK_THROWS_AS(estimate_ap_constant(WeightSpec::constant(2), 1.0, plan), invalid_input);
  }
}

TEST_CASE("monotone sampling: estimate nondecreasing as the plan grows") {
  auto w = WeightSpec::morawetz_weight(3, 0.2, 0.1);
  double prev = 0.0;
  for (int c : {4, 8, 16}) {
    SamplingPlan plan;
    plan.center_count = c;
    plan.radius_count = c;
    plan.refinements = 1;
    plan.quadrature_panels = 128;  // fixed quadrature, growing sup set
    auto rep = estimate_a1_constant(w, plan);
    CHECK(rep.estimate >= prev - 1e-12);
    prev = rep.estimate;
  }
}

TEST_CASE("refinement history bookkeeping") {
  SamplingPlan plan;
  plan.center_count = 6;
  plan.radius_count = 6;
  plan.refinements = 3;
  auto rep = estimate_a1_constant(WeightSpec::power(3, -1.0), plan);
  REQUIRE(rep.refinement_history.size() == 3);
  // sample counts must grow
  CHECK(rep.refinement_samples[0] < rep.refinement_samples[1]);
  CHECK(rep.refinement_samples[1] < rep.refinement_samples[2]);
}
