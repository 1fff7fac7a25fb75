#include "bessel.hpp"

#include <cmath>

#include "common.hpp"

namespace nlw {

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::fabs(x)); }

double bessel_j1(double x) {
  double v = std::cyl_bessel_j(1.0, std::fabs(x));
  return x < 0 ? -v : v;
}

std::vector<double> bessel_j0_zeros(int M) {
  std::vector<double> zeros(M);
  for (int k = 1; k <= M; ++k) {
    double b = (k - 0.25) * kPi;
    double x = b + 1.0 / (8.0 * b) - 31.0 / (384.0 * b * b * b);
    for (int it = 0; it < 60; ++it) {
      double f = bessel_j0(x);
      double fp = -bessel_j1(x);
      double dx = f / fp;
      x -= dx;
      if (std::fabs(dx) < 1e-15 * x) break;
    }
    zeros[k - 1] = x;
  }
  return zeros;
}

}  // namespace nlw
