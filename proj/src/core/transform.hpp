#pragma once

#include <functional>
#include <memory>

#include "grid.hpp"

namespace nlw {

// Radial Fourier transform plan for one (n, N, R). Immutable after
// construction and safely shareable across threads.
//
// Normalization is unitary (Gaussian self-dual):
//   n=3: F(rho) = sqrt(2/pi) rho^{-1} int_0^inf r f(r) sin(rho r) dr,
//        realized by a DST-IV on g = r f with staggered dual nodes
//        rho_k = (k+1/2) pi/R; the discrete pair is exactly unitary.
//   n=2: F(rho) = int_0^inf f(r) J0(rho r) r dr on dual nodes rho_k = j_k/R
//        (zeros of J0, K = N/2 modes). The forward quadrature subtracts two
//        Gaussians matched to f(0), f''(0) whose transforms are known in
//        closed form; this cancels the Euler-Maclaurin boundary error of the
//        midpoint rule at r = 0 for every mode at once. The inverse is the
//        truncated Dini series, exact on the retained modes.
class TransformPlan {
 public:
  virtual ~TransformPlan() = default;

  virtual SpectralField forward(const RadialField& f) const = 0;
  virtual RadialField inverse(const SpectralField& F) const = 0;
  const FrequencyGrid& freq_grid() const { return fgrid_; }
  const RadialGrid& grid() const { return grid_; }

  // cached, keyed by (n, N, R)
  static std::shared_ptr<const TransformPlan> get(const RadialGrid& grid);

 protected:
  TransformPlan(RadialGrid g, FrequencyGrid fg) : grid_(g), fgrid_(std::move(fg)) {}
  RadialGrid grid_;
  FrequencyGrid fgrid_;
};

SpectralField forward_transform(const RadialField& f);
RadialField inverse_transform(const SpectralField& F);

// Throws invalid_input unless max |f| over the outer 10% of the grid is
// below `threshold`; the transform imposes an implicit boundary condition,
// so applying nonlocal operators to non-decayed fields corrupts them.
void check_decay(const RadialField& f, double threshold = 1e-10);

// D^s f with D = sqrt(-Laplacian); multiplier rho^s on the Fourier side.
// s = 0 returns f unchanged.
RadialField fractional_derivative(const RadialField& f, double s,
                                  double decay_threshold = 1e-10);

// Sobolev norm over R^n: homogeneous uses rho^s, inhomogeneous <rho>^s.
// s in [-1, 2]; for s < 0 a dominant lowest-octave contribution is rejected
// as a divergent low-frequency integral.
double sobolev_norm(const RadialField& f, double s, bool homogeneous = true);
double sobolev_norm(const SpectralField& F, double s, bool homogeneous = true);

// (omega_{n-1} sum_i w(r_i) |f_i|^2 r_i^{n-1} quad_w_i)^{1/2}
double weighted_l2_norm(const RadialField& f, const std::function<double(double)>& w);

// L^q norm of a radial function over R^n (q in (0, inf); grid sup for q=inf
// is taken by the callers that need it)
double lq_norm(const RadialField& f, double q);

// Littlewood-Paley machinery. Bands j run over the grid-resolvable dyadic
// range 2^j in [2 pi / R, rho_max]; the two edge bands absorb the tails so
// that the band weights sum to 1 exactly for every rho in (0, rho_max].
struct LPBand {
  int j;
  RadialField field;
};

int lp_band_min(const RadialGrid& grid);
int lp_band_max(const RadialGrid& grid);
double lp_band_weight(int j, double rho, int jmin, int jmax);
LPBand lp_block(const RadialField& f, int j);

// sum_j 2^{j/2} |S_j f|_{L^2} over the resolvable range
double besov_norm_half(const RadialField& f);

}  // namespace nlw
