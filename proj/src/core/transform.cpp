#include "transform.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <mutex>
#include <tuple>

#include "bessel.hpp"

namespace nlw {

namespace {

// ---------------------------------------------------------------------------
// DST-IV: S[k] = sum_i x[i] sin(pi (i+1/2)(k+1/2) / N).
// Power-of-two N goes through a length-2N complex FFT; otherwise direct.
// ---------------------------------------------------------------------------

using cd = std::complex<double>;

void fft_inplace(std::vector<cd>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = sign * 2.0 * kPi / static_cast<double>(len);
    cd wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cd w(1.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        cd u = a[i + j], v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<double> dst4(const std::vector<double>& x) {
  const int N = static_cast<int>(x.size());
  std::vector<double> out(N);
  if (is_pow2(N)) {
    std::vector<cd> y(2 * static_cast<std::size_t>(N), cd(0.0));
    for (int i = 0; i < N; ++i) {
      double ang = kPi * i / (2.0 * N);
      y[i] = x[i] * cd(std::cos(ang), std::sin(ang));
    }
    fft_inplace(y, +1);
    for (int k = 0; k < N; ++k) {
      double ang = kPi * (2 * k + 1) / (4.0 * N);
      out[k] = (cd(std::cos(ang), std::sin(ang)) * y[k]).imag();
    }
  } else {
    for (int k = 0; k < N; ++k) {
      double s = 0.0;
      for (int i = 0; i < N; ++i) s += x[i] * std::sin(kPi * (i + 0.5) * (k + 0.5) / N);
      out[k] = s;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// n = 3: sine-transform reduction through g = r f
// ---------------------------------------------------------------------------

class SinePlan final : public TransformPlan {
 public:
  explicit SinePlan(const RadialGrid& g) : TransformPlan(g, make_fgrid(g)) {}

  SpectralField forward(const RadialField& f) const override {
    const int N = grid_.size();
    const double c = std::sqrt(2.0 / kPi) * grid_.dr();
    std::vector<double> g(N);
    for (int i = 0; i < N; ++i) g[i] = grid_.node(i) * f[i];
    auto G = dst4(g);
    std::vector<double> F(N);
    for (int k = 0; k < N; ++k) F[k] = c * G[k] / fgrid_.node(k);
    return SpectralField(fgrid_, std::move(F));
  }

  RadialField inverse(const SpectralField& F) const override {
    const int N = grid_.size();
    const double drho = kPi / grid_.radius();
    const double c = std::sqrt(2.0 / kPi) * drho;
    std::vector<double> G(N);
    for (int k = 0; k < N; ++k) G[k] = fgrid_.node(k) * F[k];
    auto g = dst4(G);
    std::vector<double> f(N);
    for (int i = 0; i < N; ++i) f[i] = c * g[i] / grid_.node(i);
    return RadialField(grid_, std::move(f));
  }

 private:
  static FrequencyGrid make_fgrid(const RadialGrid& g) {
    const int N = g.size();
    const double drho = kPi / g.radius();
    std::vector<double> nodes(N), meas(N);
    for (int k = 0; k < N; ++k) {
      nodes[k] = (k + 0.5) * drho;
      meas[k] = nodes[k] * nodes[k] * drho;
    }
    return FrequencyGrid(3, N, std::move(nodes), std::move(meas));
  }
};

// ---------------------------------------------------------------------------
// n = 2: Dini modes at J0 zeros, K = N/2
// ---------------------------------------------------------------------------

class DiniPlan final : public TransformPlan {
 public:
  explicit DiniPlan(const RadialGrid& g)
      : TransformPlan(g, make_fgrid(g)),
        sigma1_(g.radius() / 16.0),
        sigma2_(g.radius() / 24.0) {
    const int N = grid_.size();
    const int K = fgrid_.size();
    kernel_.resize(static_cast<std::size_t>(K) * N);
    for (int k = 0; k < K; ++k) {
      double rho = fgrid_.node(k);
      double* row = &kernel_[static_cast<std::size_t>(k) * N];
      for (int i = 0; i < N; ++i) row[i] = bessel_j0(rho * grid_.node(i));
    }
    fit0_ = origin_value_stencil(grid_.dr(), 0);
    fit2_ = origin_value_stencil(grid_.dr(), 2);
  }

  SpectralField forward(const RadialField& f) const override {
    const int N = grid_.size();
    const int K = fgrid_.size();
    const double h = grid_.dr();
    double f0 = 0.0, f2 = 0.0;
    for (int m = 0; m < kFitPts; ++m) {
      f0 += fit0_[m] * f[m];
      f2 += fit2_[m] * f[m];
    }
    // a G_{s1} + b G_{s2} matches value and second derivative at the origin
    const double det = 1.0 / (sigma1_ * sigma1_) - 1.0 / (sigma2_ * sigma2_);
    const double a = -(f2 + f0 / (sigma2_ * sigma2_)) / det;
    const double b = f0 - a;
    std::vector<double> rem(N);
    for (int i = 0; i < N; ++i) {
      double r = grid_.node(i);
      rem[i] = (f[i] - a * std::exp(-r * r / (2 * sigma1_ * sigma1_)) -
                b * std::exp(-r * r / (2 * sigma2_ * sigma2_))) *
               r * h;
    }
    std::vector<double> F(K);
    for (int k = 0; k < K; ++k) {
      const double* row = &kernel_[static_cast<std::size_t>(k) * N];
      double s = 0.0;
      for (int i = 0; i < N; ++i) s += rem[i] * row[i];
      double rho = fgrid_.node(k);
      F[k] = s + a * sigma1_ * sigma1_ * std::exp(-rho * rho * sigma1_ * sigma1_ / 2) +
             b * sigma2_ * sigma2_ * std::exp(-rho * rho * sigma2_ * sigma2_ / 2);
    }
    return SpectralField(fgrid_, std::move(F));
  }

  RadialField inverse(const SpectralField& F) const override {
    const int N = grid_.size();
    const int K = fgrid_.size();
    std::vector<double> f(N, 0.0);
    for (int k = 0; k < K; ++k) {
      double c = fgrid_.measure(k) * F[k];
      const double* row = &kernel_[static_cast<std::size_t>(k) * N];
      for (int i = 0; i < N; ++i) f[i] += c * row[i];
    }
    return RadialField(grid_, std::move(f));
  }

 private:
  static constexpr int kFitPts = 6;

  static FrequencyGrid make_fgrid(const RadialGrid& g) {
    const int K = std::max(8, g.size() / 2);
    auto zeros = bessel_j0_zeros(K);
    const double R = g.radius();
    std::vector<double> nodes(K), meas(K);
    for (int k = 0; k < K; ++k) {
      nodes[k] = zeros[k] / R;
      double j1 = bessel_j1(zeros[k]);
      meas[k] = 2.0 / (R * R * j1 * j1);  // Dini Parseval weight, ~ rho_k drho
    }
    return FrequencyGrid(2, K, std::move(nodes), std::move(meas));
  }

  // coefficients a_m with sum a_m p((m+1/2)h) = p^{(q)}(0), exact deg < kFitPts
  static std::vector<double> origin_value_stencil(double h, int q) {
    const int M = kFitPts;
    std::vector<double> A(static_cast<std::size_t>(M) * M), b(M, 0.0), a(M);
    for (int j = 0; j < M; ++j)
      for (int m = 0; m < M; ++m) A[static_cast<std::size_t>(j) * M + m] = std::pow((m + 0.5) * h, j);
    double fact = 1.0;
    for (int i = 2; i <= q; ++i) fact *= i;
    b[q] = fact;
    for (int c = 0; c < M; ++c) {
      int piv = c;
      for (int r = c + 1; r < M; ++r)
        if (std::fabs(A[static_cast<std::size_t>(r) * M + c]) > std::fabs(A[static_cast<std::size_t>(piv) * M + c])) piv = r;
      if (piv != c) {
        for (int cc = 0; cc < M; ++cc) std::swap(A[static_cast<std::size_t>(c) * M + cc], A[static_cast<std::size_t>(piv) * M + cc]);
        std::swap(b[c], b[piv]);
      }
      for (int r = c + 1; r < M; ++r) {
        double fq = A[static_cast<std::size_t>(r) * M + c] / A[static_cast<std::size_t>(c) * M + c];
        for (int cc = c; cc < M; ++cc) A[static_cast<std::size_t>(r) * M + cc] -= fq * A[static_cast<std::size_t>(c) * M + cc];
        b[r] -= fq * b[c];
      }
    }
    for (int r = M - 1; r >= 0; --r) {
      double s = b[r];
      for (int cc = r + 1; cc < M; ++cc) s -= A[static_cast<std::size_t>(r) * M + cc] * a[cc];
      a[r] = s / A[static_cast<std::size_t>(r) * M + r];
    }
    return a;
  }

  double sigma1_, sigma2_;
  std::vector<double> kernel_;
  std::vector<double> fit0_, fit2_;
};

std::shared_ptr<const TransformPlan> make_plan(const RadialGrid& g) {
  switch (g.dim()) {
    case 2: return std::make_shared<DiniPlan>(g);
    case 3: return std::make_shared<SinePlan>(g);
    default: throw invalid_input("transforms are only implemented for n in {2,3}");
  }
}

std::mutex plan_mutex;
std::map<std::tuple<int, int, double>, std::shared_ptr<const TransformPlan>> plan_cache;

}  // namespace

std::shared_ptr<const TransformPlan> TransformPlan::get(const RadialGrid& grid) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_tuple(grid.dim(), grid.size(), grid.radius());
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;
  if (plan_cache.size() > 32) plan_cache.clear();  // desk-scale cap
  auto plan = make_plan(grid);
  plan_cache.emplace(key, plan);
  return plan;
}

SpectralField forward_transform(const RadialField& f) {
  f.check_finite();
  return TransformPlan::get(f.grid())->forward(f);
}

RadialField inverse_transform(const SpectralField& F) {
  const auto& fg = F.grid();
  // reconstruct the matching radial grid from the dual one
  double R = fg.dim() == 3 ? kPi / (fg.node(0) * 2.0) : 0.0;
  if (fg.dim() == 3) {
    int N = fg.size();
    return TransformPlan::get(RadialGrid(3, N, R))->inverse(F);
  }
  // n=2: rho_0 = j_1 / R
  R = bessel_j0_zeros(1)[0] / fg.node(0);
  int N = fg.size() * 2;
  return TransformPlan::get(RadialGrid(2, N, R))->inverse(F);
}

void check_decay(const RadialField& f, double threshold) {
  const int N = f.size();
  const int start = N - std::max(1, N / 10);
  double worst = 0.0;
  for (int i = start; i < N; ++i) worst = std::max(worst, std::fabs(f[i]));
  if (worst >= threshold)
    throw invalid_input("field does not decay at the outer boundary (max " +
                        std::to_string(worst) + " on the outer 10% of the grid)");
}

RadialField fractional_derivative(const RadialField& f, double s, double decay_threshold) {
  if (s < 0.0 || s > 2.0) throw invalid_input("fractional_derivative: s must lie in [0,2]");
  if (s == 0.0) return f;
  check_decay(f, decay_threshold);
  auto plan = TransformPlan::get(f.grid());
  SpectralField F = plan->forward(f);
  for (int k = 0; k < F.size(); ++k) F[k] *= std::pow(F.grid().node(k), s);
  return plan->inverse(F);
}

double sobolev_norm(const SpectralField& F, double s, bool homogeneous) {
  if (s < -1.0 || s > 2.0) throw invalid_input("sobolev_norm: s must lie in [-1,2]");
  const auto& fg = F.grid();
  double total = 0.0, lowest_octave = 0.0;
  const double rho_lo = 2.0 * fg.min_node();
  for (int k = 0; k < F.size(); ++k) {
    double rho = fg.node(k);
    double m = homogeneous ? std::pow(rho, 2.0 * s) : std::pow(1.0 + rho * rho, s);
    double term = m * F[k] * F[k] * fg.measure(k);
    total += term;
    if (rho < rho_lo) lowest_octave += term;
  }
  if (s < 0.0 && homogeneous && total > 0.0 && lowest_octave > 0.5 * total)
    throw computation_error("sobolev_norm: low-frequency integral diverges for s<0");
  return std::sqrt(unit_sphere_measure(fg.dim()) * total);
}

double sobolev_norm(const RadialField& f, double s, bool homogeneous) {
  if (s == 0.0) {
    // identical to the physical-side L^2 norm by construction
    return weighted_l2_norm(f, [](double) { return 1.0; });
  }
  return sobolev_norm(forward_transform(f), s, homogeneous);
}

double weighted_l2_norm(const RadialField& f, const std::function<double(double)>& w) {
  const auto& g = f.grid();
  const int n = g.dim();
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    double r = g.node(i);
    double wi = w(r);
    if (!std::isfinite(wi)) throw invalid_input("weighted_l2_norm: weight non-finite at a node");
    s += wi * f[i] * f[i] * std::pow(r, n - 1) * g.quad_weight(i);
  }
  return std::sqrt(unit_sphere_measure(n) * s);
}

double lq_norm(const RadialField& f, double q) {
  if (!(q > 0.0)) throw invalid_input("lq_norm: q must be positive");
  const auto& g = f.grid();
  const int n = g.dim();
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    double r = g.node(i);
    s += std::pow(std::fabs(f[i]), q) * std::pow(r, n - 1) * g.quad_weight(i);
  }
  return std::pow(unit_sphere_measure(n) * s, 1.0 / q);
}

// ---------------------------------------------------------------------------
// Littlewood-Paley bands: psi(rho) = chi(rho) - chi(2 rho) with chi a smooth
// step, 1 on (-inf,1], 0 on [2,inf). sum_j psi(rho/2^j) = 1 for rho > 0; the
// truncated family absorbs tails into the edge bands.
// ---------------------------------------------------------------------------

namespace {

double smooth_theta(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double smooth_step(double x) {  // 0 for x<=0, 1 for x>=1
  double a = smooth_theta(x);
  double b = smooth_theta(1.0 - x);
  return a / (a + b);
}

double chi(double t) { return 1.0 - smooth_step(t - 1.0); }  // 1 on t<=1, 0 on t>=2

}  // namespace

int lp_band_min(const RadialGrid& grid) {
  return static_cast<int>(std::ceil(std::log2(2.0 * kPi / grid.radius())));
}

int lp_band_max(const RadialGrid& grid) {
  auto plan = TransformPlan::get(grid);
  return static_cast<int>(std::floor(std::log2(plan->freq_grid().max_node())));
}

double lp_band_weight(int j, double rho, int jmin, int jmax) {
  if (rho <= 0.0) return 0.0;
  if (j <= jmin) return chi(rho / std::pow(2.0, jmin));
  if (j >= jmax) return 1.0 - chi(rho / std::pow(2.0, jmax - 1));
  return chi(rho / std::pow(2.0, j)) - chi(rho / std::pow(2.0, j - 1));
}

LPBand lp_block(const RadialField& f, int j) {
  const auto& g = f.grid();
  int jmin = lp_band_min(g), jmax = lp_band_max(g);
  if (j < jmin || j > jmax)
    throw invalid_input("lp_block: band " + std::to_string(j) + " outside resolvable range [" +
                        std::to_string(jmin) + "," + std::to_string(jmax) + "]");
  auto plan = TransformPlan::get(g);
  SpectralField F = plan->forward(f);
  for (int k = 0; k < F.size(); ++k) F[k] *= lp_band_weight(j, F.grid().node(k), jmin, jmax);
  return LPBand{j, plan->inverse(F)};
}

double besov_norm_half(const RadialField& f) {
  const auto& g = f.grid();
  int jmin = lp_band_min(g), jmax = lp_band_max(g);
  auto plan = TransformPlan::get(g);
  SpectralField F = plan->forward(f);
  const auto& fg = F.grid();
  double total = 0.0;
  for (int j = jmin; j <= jmax; ++j) {
    double s = 0.0;
    for (int k = 0; k < F.size(); ++k) {
      double wj = lp_band_weight(j, fg.node(k), jmin, jmax);
      s += wj * wj * F[k] * F[k] * fg.measure(k);
    }
    total += std::pow(2.0, 0.5 * j) * std::sqrt(unit_sphere_measure(fg.dim()) * s);
  }
  return total;
}

}  // namespace nlw
