#pragma once

#include <cstddef>
#include <vector>

// Truncated real power series; element i is the coefficient of x^i.
namespace ldpcgm::series {

using Series = std::vector<double>;

/// First n coefficients of a*b. Large products go through a real FFT.
Series multiply(const Series& a, const Series& b, std::size_t n);

/// First n coefficients of 1/a; requires a[0] != 0.
Series reciprocal(const Series& a, std::size_t n);

/// First n coefficients of (1 - x)^alpha.
Series binomial(double alpha, std::size_t n);

/// Sum of c_i x^i.
double evaluate(const Series& c, double x);

}  // namespace ldpcgm::series
