#pragma once

#include <complex>
#include <random>

#include <doctest.h>

#include "tmscatter/momentum_grid.hpp"

namespace tmtest {

using tmscatter::Complex;

inline double cdiff(Complex a, Complex b) { return std::abs(a - b); }

inline void check_close(Complex a, Complex b, double tol) {
  CAPTURE(a.real());
  CAPTURE(a.imag());
  CAPTURE(b.real());
  CAPTURE(b.imag());
  CHECK(cdiff(a, b) <= tol);
}

inline tmscatter::GridFunction random_grid_function(
    const tmscatter::MomentumGrid& grid, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  tmscatter::GridFunction f;
  f.grid = &grid;
  f.values.resize(grid.total());
  for (int i = 0; i < grid.total(); ++i)
    f.values[i] = Complex(uni(rng), uni(rng));
  return f;
}

}  // namespace tmtest
