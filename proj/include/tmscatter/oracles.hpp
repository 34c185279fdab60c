#pragma once

#include <functional>
#include <vector>

#include "tmscatter/potential.hpp"
#include "tmscatter/types.hpp"

namespace tmscatter {

/// Cylinder functions of order zero, power series below the crossover
/// argument and the large-argument expansion above it.
double bessel_j0(double z);
double bessel_y0(double z);
/// Outgoing combination J0 + i Y0.
Complex hankel0_1(double z);

/// Reference values from the integral representations (slow; test setup).
double bessel_j0_integral(double z);
double bessel_y0_integral(double z);

/// Transfer matrix of a compactly supported 1D potential at channel
/// wavenumber k, by integrating the wave equation across the support from
/// plane-wave data.
Eigen::Matrix2cd oned_transfer_matrix(
    const std::function<Complex(double)>& v1, double a_minus, double a_plus,
    double k, int steps = 4000);

/// Closed form for the rectangular barrier of height z on [0, L],
/// from the interface matching conditions.
Eigen::Matrix2cd rectangular_barrier_tm(Complex z, double L, double k);

/// Iterated outgoing-kernel solution on a uniform spatial grid.  The
/// normalization is fixed so the first-order output coincides with the
/// Born formula.  Lives entirely outside the transfer-matrix code path.
struct BornSeriesResult {
  std::vector<Complex> f;          // one value per requested angle
  std::vector<double> step_norms;  // ||u_{n+1} - u_n|| per iteration
  double decay_ratio = 0.0;        // geometric estimate of the update decay
};

BornSeriesResult born_series_greens_2d(const PotentialSpec& spec, double k,
                                       double theta0,
                                       const std::vector<double>& thetas,
                                       int order, int n_cells = 64);

}  // namespace tmscatter
