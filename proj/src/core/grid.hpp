#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace nlw {

// Uniform staggered radial grid: nodes r_i = (i+1/2) dr, i = 0..N-1.
// No node sits at r = 0, so singular weights stay finite at every node.
//
// quad_weight(i) carries the integration rule for smooth integrands
// vanishing near r = R: the midpoint rule plus an origin correction that
// cancels the h^2 and h^4 Euler-Maclaurin boundary terms at r = 0 (the
// staggered midpoint rule is only O(h^2) there when the integrand's odd
// extension has a kink). The correction touches the first six weights.
class RadialGrid {
 public:
  RadialGrid(int n, int N, double R);

  int dim() const { return n_; }
  int size() const { return N_; }
  double radius() const { return R_; }
  double dr() const { return dr_; }
  double node(int i) const { return (i + 0.5) * dr_; }
  double quad_weight(int i) const { return quad_w_[i]; }
  // integral of r^{n-1} over cell i, used as the volume weight of the solver
  double cell_volume(int i) const { return vol_[i]; }

  bool operator==(const RadialGrid& o) const {
    return n_ == o.n_ && N_ == o.N_ && R_ == o.R_;
  }

 private:
  int n_, N_;
  double R_, dr_;
  std::vector<double> quad_w_;
  std::vector<double> vol_;
};

// Samples of a radial function on a RadialGrid.
class RadialField {
 public:
  RadialField(RadialGrid grid, std::vector<double> samples);
  static RadialField zero(const RadialGrid& grid);

  const RadialGrid& grid() const { return grid_; }
  const std::vector<double>& samples() const { return samples_; }
  std::vector<double>& samples() { return samples_; }
  double operator[](int i) const { return samples_[i]; }
  double& operator[](int i) { return samples_[i]; }
  int size() const { return static_cast<int>(samples_.size()); }

  void check_finite() const;

  // flat binary layout: n, N as little-endian int64, R as little-endian
  // 64-bit float, then N 64-bit float samples
  void save_binary(const std::string& path) const;
  static RadialField load_binary(const std::string& path);
  void save_csv(const std::string& path) const;

 private:
  RadialGrid grid_;
  std::vector<double> samples_;
};

// Dual frequency grid. For n=3 the nodes are uniform staggered,
// rho_k = (k+1/2) pi/R with K = N modes; for n=2 they are scaled zeros of
// J0, rho_k = j_k/R with K = N/2 modes. measure(k) is the Plancherel
// weight: |f|_{L^2}^2 (radial part) = sum_k |F_k|^2 measure(k).
class FrequencyGrid {
 public:
  FrequencyGrid(int n, int K, std::vector<double> nodes, std::vector<double> measure);

  int dim() const { return n_; }
  int size() const { return K_; }
  double node(int k) const { return nodes_[k]; }
  double measure(int k) const { return measure_[k]; }
  double max_node() const { return nodes_.back(); }
  double min_node() const { return nodes_.front(); }

  bool operator==(const FrequencyGrid& o) const {
    return n_ == o.n_ && K_ == o.K_ && nodes_ == o.nodes_;
  }

 private:
  int n_, K_;
  std::vector<double> nodes_, measure_;
};

// Samples of the radial Fourier transform on the dual grid.
class SpectralField {
 public:
  SpectralField(FrequencyGrid grid, std::vector<double> samples);
  static SpectralField zero(const FrequencyGrid& grid);

  const FrequencyGrid& grid() const { return grid_; }
  const std::vector<double>& samples() const { return samples_; }
  std::vector<double>& samples() { return samples_; }
  double operator[](int k) const { return samples_[k]; }
  double& operator[](int k) { return samples_[k]; }
  int size() const { return static_cast<int>(samples_.size()); }

 private:
  FrequencyGrid grid_;
  std::vector<double> samples_;
};

}  // namespace nlw
