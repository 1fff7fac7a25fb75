#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace nlw {

// Thrown on violated preconditions (bad dimensions, out-of-range exponents,
// insufficient decay, ...). The C API maps these to NLW_ERR_INVALID.
class invalid_input : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a computation cannot proceed (quadrature failure, missing
// forcing record, ...). Maps to NLW_ERR_RUNTIME.
class computation_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;

// surface measure of the unit sphere S^{n-1}
inline double unit_sphere_measure(int n) {
  switch (n) {
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
    default: throw invalid_input("unit_sphere_measure: only n=2,3 supported");
  }
}

// |v|^p with the v=0 branch set to 0 (continuous extension for p>1)
inline double abs_pow(double v, double p) {
  double a = std::fabs(v);
  if (a == 0.0) return 0.0;
  return std::exp(p * std::log(a));
}

// splitmix64, used to derive independent member seeds from (seed, index)
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic uniform/normal stream. Hand-rolled so that reports are
// byte-stable across standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x85ebca6bULL) {}

  std::uint64_t next_u64() {
    state_ = splitmix64(state_);
    return state_;
  }
  double uniform() {  // in [0,1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {  // Box-Muller
    double u1 = uniform(), u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  std::uint64_t state_;
};

// Parallel map over [0, count) with index-ordered results. Each task owns its
// slot, so the output is identical regardless of thread count or scheduling.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

int default_jobs();

}  // namespace nlw
