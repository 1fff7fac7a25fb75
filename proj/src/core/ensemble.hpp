#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grid.hpp"

namespace nlw {

enum class Family { gaussian_bumps, dyadic_band_limited, wave_packets };

std::string family_name(Family f);
Family family_from_name(const std::string& s);

// Reproducible test-function family: the same seed and spec always yield the
// same members; every member passes the outer-decay enforcement.
struct EnsembleSpec {
  std::uint64_t seed = 1;
  int size = 200;
  Family family = Family::gaussian_bumps;
  double amp_lo = 0.5, amp_hi = 2.0;
  double width_lo = 0.1, width_hi = 2.0;
  double center_lo = 0.0, center_hi = 0.5;  // fractions of R
  int band_lo = 0, band_hi = 0;             // offsets into the resolvable range
};

// continuum parameters of one member; realizable on any compatible grid
struct MemberParams {
  Family family;
  double amp = 1.0, width = 1.0, center = 0.0, freq = 0.0;
  double band_center = 0.0, band_width = 1.0;  // in rho, for band-limited members
};

std::vector<MemberParams> draw_members(const EnsembleSpec& spec, const RadialGrid& grid,
                                       double decay_threshold = 1e-10);

RadialField realize_member(const MemberParams& m, const RadialGrid& grid);

}  // namespace nlw
