#pragma once

#include <vector>

namespace nlw {

double bessel_j0(double x);
double bessel_j1(double x);

// first M positive zeros of J0, Newton-refined from the McMahon expansion
std::vector<double> bessel_j0_zeros(int M);

}  // namespace nlw
