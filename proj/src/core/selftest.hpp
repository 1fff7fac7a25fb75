#pragma once

#include <string>
#include <vector>

#include "weights.hpp"

namespace nlw {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SelfTestReport {
  std::vector<CheckResult> checks;
  bool pass = true;
  void add(const std::string& name, double measured, double tolerance) {
    bool ok = measured <= tolerance;
    checks.push_back({name, measured, tolerance, ok});
    pass = pass && ok;
  }
  void add_flag(const std::string& name, bool ok) {
    checks.push_back({name, ok ? 0.0 : 1.0, 0.5, ok});
    pass = pass && ok;
  }
};

// the radial_spectral invariant battery: self-duality, Plancherel,
// round trip, multiplier identities, LP reconstruction
SelfTestReport spectral_selftest(int N = 1024, double R = 12.0);

// Muckenhoupt battery: constant weight, admissible morawetz weights, r^{-n}
SelfTestReport weight_selftest(int jobs = 0);

}  // namespace nlw
