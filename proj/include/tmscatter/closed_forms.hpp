#pragma once

#include <vector>

#include "tmscatter/scatter2d.hpp"

namespace tmscatter {

/// Exact right-incidence amplitude of z delta(x) delta(y - a):
/// f(theta) = -sqrt(2/pi) z / (4 + i z) exp(-i a k (sin theta - sin theta0)).
/// The left amplitude coincides.  z = 4i is a spectral singularity.
Complex delta2d_amplitude(Complex z, double a, double k, double theta0,
                          double theta);

/// Smooth parts of the outgoing coefficients of the same solution, for
/// stage-by-stage validation of the solve pipeline.
Complex delta2d_b_minus_smooth(Complex z, double a, double k, double theta0,
                               double p);
Complex delta2d_a_plus_smooth(Complex z, double a, double k, double theta0,
                              double p);
/// Moment g of the solved coefficient: 4 exp(i a p0) / (4 + i z).
Complex delta2d_g_moment(Complex z, double a, double k, double theta0);

/// Growth of the interaction-picture route's denominator
/// 1 + (i z / 4 pi) * int dq / varpi(q) with the evanescent truncation:
/// the integral diverges logarithmically in p_max while the oscillating
/// moment stays pinned at pi.
struct DivergenceReport {
  std::vector<double> p_max_over_k;
  std::vector<Complex> denominator;
  Complex fitted_slope{0.0, 0.0};    // d(denominator) / d log(p_max/k)
  Complex analytic_slope{0.0, 0.0};  // z / (2 pi)
  double rel_deviation = 0.0;
  double osc_moment = 0.0;           // sum w / varpi on the oscillating rule
  double osc_moment_error = 0.0;     // |osc_moment - pi|
};

DivergenceReport delta2d_auxiliary_divergence(
    Complex z, double a, double k,
    const std::vector<double>& p_max_over_k = {4, 8, 16, 32, 64},
    int n_osc = 64);

/// Finite-rank solve for delta(x) sum_n z_n delta(y - a_n): the integral
/// equation collapses onto the N moments of the solution, a dense N x N
/// system.  Returns the smooth coefficient parts on the grid.
WaveCoefficients multi_delta_solve(const std::vector<DeltaTerm>& terms,
                                   const MomentumGrid& grid, double theta0,
                                   Side side);

/// Exact isotropic 3D point-delta amplitude -z / (4 pi + i k z); the
/// moment of the solved coefficient is 4 pi / (4 pi + i k z).
Complex delta3d_amplitude(Complex z, double k);
Complex delta3d_moment(Complex z, double k);

}  // namespace tmscatter
