#include "ensemble.hpp"

#include "transform.hpp"

namespace nlw {

std::string family_name(Family f) {
  switch (f) {
    case Family::gaussian_bumps: return "gaussian-bumps";
    case Family::dyadic_band_limited: return "dyadic-band-limited";
    case Family::wave_packets: return "wave-packets";
  }
  return "?";
}

Family family_from_name(const std::string& s) {
  if (s == "gaussian-bumps") return Family::gaussian_bumps;
  if (s == "dyadic-band-limited") return Family::dyadic_band_limited;
  if (s == "wave-packets") return Family::wave_packets;
  throw invalid_input("unknown ensemble family: " + s);
}

RadialField realize_member(const MemberParams& m, const RadialGrid& grid) {
  const int N = grid.size();
  std::vector<double> s(N, 0.0);
  switch (m.family) {
    case Family::gaussian_bumps:
      for (int i = 0; i < N; ++i) {
        double r = grid.node(i);
        double a = (r - m.center) / m.width, b = (r + m.center) / m.width;
        s[i] = m.amp * (std::exp(-0.5 * a * a) + (m.center > 0 ? std::exp(-0.5 * b * b) : 0.0));
      }
      return RadialField(grid, std::move(s));
    case Family::wave_packets:
      for (int i = 0; i < N; ++i) {
        double r = grid.node(i);
        double a = (r - m.center) / m.width, b = (r + m.center) / m.width;
        s[i] = m.amp * (std::exp(-0.5 * a * a) * std::cos(m.freq * (r - m.center)) +
                        std::exp(-0.5 * b * b) * std::cos(m.freq * (r + m.center)));
      }
      return RadialField(grid, std::move(s));
    case Family::dyadic_band_limited: {
      auto plan = TransformPlan::get(grid);
      const auto& fg = plan->freq_grid();
      std::vector<double> F(fg.size());
      for (int k = 0; k < fg.size(); ++k) {
        double x = (fg.node(k) - m.band_center) / m.band_width;
        F[k] = m.amp * (1.0 + 0.3 * m.freq * x) * std::exp(-x * x);
      }
      return plan->inverse(SpectralField(fg, std::move(F)));
    }
  }
  throw invalid_input("realize_member: bad family");
}

std::vector<MemberParams> draw_members(const EnsembleSpec& spec, const RadialGrid& grid,
                                       double decay_threshold) {
  if (spec.size <= 0) throw invalid_input("EnsembleSpec: size must be positive");
  const double R = grid.radius();
  int jmin = 0, jmax = 0;
  if (spec.family == Family::dyadic_band_limited) {
    jmin = lp_band_min(grid) + 1;
    jmax = lp_band_max(grid) - 2;
    if (jmax <= jmin) throw invalid_input("grid too small for band-limited members");
  }
  std::vector<MemberParams> out(spec.size);
  for (int idx = 0; idx < spec.size; ++idx) {
    Rng rng(splitmix64(spec.seed ^ (0x9e3779b9ULL * (idx + 1))));
    MemberParams m;
    m.family = spec.family;
    bool ok = false;
    for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
      m.amp = rng.uniform(spec.amp_lo, spec.amp_hi);
      m.width = rng.uniform(spec.width_lo, spec.width_hi);
      m.center = rng.uniform(spec.center_lo * R, spec.center_hi * R);
      m.freq = rng.uniform(-1.0, 1.0);
      if (spec.family == Family::wave_packets) m.freq = rng.uniform(2.0, 8.0);
      if (spec.family == Family::dyadic_band_limited) {
        int lo = std::max(jmin, jmin + spec.band_lo);
        int hi = std::min(jmax, jmax + spec.band_hi);
        int j = lo + static_cast<int>(rng.uniform() * std::max(1, hi - lo + 1));
        m.band_center = std::pow(2.0, j);
        m.band_width = 0.2 * m.band_center;
        ok = true;  // spectral envelope decays by construction
      } else {
        // keep the tail below the decay threshold on the outer 10%
        ok = m.center + 7.0 * m.width <= 0.88 * R;
      }
      if (ok) {
        auto f = realize_member(m, grid);
        try {
          check_decay(f, decay_threshold);
        } catch (const invalid_input&) {
          ok = false;
        }
      }
    }
    if (!ok)
      throw computation_error("ensemble member " + std::to_string(idx) +
                              " cannot satisfy the decay enforcement on this grid");
    out[idx] = m;
  }
  return out;
}

}  // namespace nlw
