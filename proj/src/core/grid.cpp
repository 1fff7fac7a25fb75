#include "grid.hpp"

#include <cstring>
#include <fstream>

namespace nlw {

namespace {

// coefficients a_m with sum_m a_m p((m+1/2)h) = p^(q)(0) exact on deg < M
std::vector<double> origin_derivative_stencil(double h, int M, int q) {
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
      double f = A[static_cast<std::size_t>(r) * M + c] / A[static_cast<std::size_t>(c) * M + c];
      for (int cc = c; cc < M; ++cc) A[static_cast<std::size_t>(r) * M + cc] -= f * A[static_cast<std::size_t>(c) * M + cc];
      b[r] -= f * b[c];
    }
  }
  for (int r = M - 1; r >= 0; --r) {
    double s = b[r];
    for (int cc = r + 1; cc < M; ++cc) s -= A[static_cast<std::size_t>(r) * M + cc] * a[cc];
    a[r] = s / A[static_cast<std::size_t>(r) * M + r];
  }
  return a;
}

void put_le_u64(std::ofstream& os, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_le_u64(std::ifstream& is) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char*>(buf), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

std::uint64_t double_bits(double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  return v;
}

double bits_double(std::uint64_t v) {
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

}  // namespace

RadialGrid::RadialGrid(int n, int N, double R) : n_(n), N_(N), R_(R) {
  if (n < 2) throw invalid_input("RadialGrid: dimension must be >= 2");
  if (N < 8) throw invalid_input("RadialGrid: need at least 8 nodes");
  if (!(R > 0.0)) throw invalid_input("RadialGrid: radius must be positive");
  dr_ = R / N;
  quad_w_.assign(N, dr_);
  const int M = 6;
  auto d1 = origin_derivative_stencil(dr_, M, 1);
  auto d3 = origin_derivative_stencil(dr_, M, 3);
  double h = dr_;
  for (int m = 0; m < M && m < N; ++m)
    quad_w_[m] += -(h * h / 24.0) * d1[m] + (7.0 * h * h * h * h / 5760.0) * d3[m];
  vol_.resize(N);
  for (int i = 0; i < N; ++i) {
    double rl = i * dr_, rr = (i + 1) * dr_;
    vol_[i] = (std::pow(rr, n) - std::pow(rl, n)) / n;
  }
}

RadialField::RadialField(RadialGrid grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (static_cast<int>(samples_.size()) != grid_.size())
    throw invalid_input("RadialField: sample count does not match grid");
}

RadialField RadialField::zero(const RadialGrid& grid) {
  return RadialField(grid, std::vector<double>(grid.size(), 0.0));
}

void RadialField::check_finite() const {
  for (double v : samples_)
    if (!std::isfinite(v)) throw invalid_input("RadialField: non-finite sample");
}

void RadialField::save_binary(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw computation_error("cannot open " + path + " for writing");
  put_le_u64(os, static_cast<std::uint64_t>(grid_.dim()));
  put_le_u64(os, static_cast<std::uint64_t>(grid_.size()));
  put_le_u64(os, double_bits(grid_.radius()));
  for (double v : samples_) put_le_u64(os, double_bits(v));
  if (!os) throw computation_error("write failed: " + path);
}

RadialField RadialField::load_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw computation_error("cannot open " + path);
  int n = static_cast<int>(get_le_u64(is));
  int N = static_cast<int>(get_le_u64(is));
  double R = bits_double(get_le_u64(is));
  if (!is || n < 2 || N < 8 || !(R > 0)) throw computation_error("corrupt field file: " + path);
  std::vector<double> s(N);
  for (int i = 0; i < N; ++i) s[i] = bits_double(get_le_u64(is));
  if (!is) throw computation_error("truncated field file: " + path);
  return RadialField(RadialGrid(n, N, R), std::move(s));
}

void RadialField::save_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw computation_error("cannot open " + path + " for writing");
  os << "r,value\n";
  char buf[64];
  for (int i = 0; i < size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid_.node(i), samples_[i]);
    os << buf;
  }
}

FrequencyGrid::FrequencyGrid(int n, int K, std::vector<double> nodes, std::vector<double> measure)
    : n_(n), K_(K), nodes_(std::move(nodes)), measure_(std::move(measure)) {
  if (static_cast<int>(nodes_.size()) != K_ || static_cast<int>(measure_.size()) != K_)
    throw invalid_input("FrequencyGrid: inconsistent sizes");
}

SpectralField::SpectralField(FrequencyGrid grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (static_cast<int>(samples_.size()) != grid_.size())
    throw invalid_input("SpectralField: sample count does not match dual grid");
}

SpectralField SpectralField::zero(const FrequencyGrid& grid) {
  return SpectralField(grid, std::vector<double>(grid.size(), 0.0));
}

}  // namespace nlw
