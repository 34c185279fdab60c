#pragma once

#include <utility>
#include <vector>

#include "tmscatter/transfer.hpp"

namespace tmscatter {

enum class Side { Left, Right };

/// Solved incident data: the incident channel carries the symbolic term
/// 2 pi varpi(p0) delta(p - p0) with coefficient delta_weight; b_minus and
/// a_plus hold the smooth parts of the outgoing coefficients (forward
/// delta excluded), supported on the oscillating sector.
struct WaveCoefficients {
  double k = 0.0;
  double theta0 = 0.0;
  double p0 = 0.0;
  Side side = Side::Right;
  Complex delta_weight{1.0, 0.0};
  GridFunction b_minus;
  GridFunction a_plus;
  bool near_singular = false;  // spectral-singularity candidate
  double condition = 0.0;      // sigma_max / sigma_min of the solve matrix
};

/// Sampled scattering amplitude over the scattering angle.
struct AmplitudeSample {
  double theta = 0.0;
  Complex f{0.0, 0.0};
};

struct AmplitudeTable {
  std::vector<AmplitudeSample> samples;
  Side side = Side::Right;
  double k = 0.0;
  double theta0 = 0.0;
  bool forward_delta_cancelled = true;
};

/// Eliminate the incident delta analytically through the identity-plus-
/// kernel split and solve the dense linear system for the smooth parts.
/// A numerically singular system is flagged, not thrown.
WaveCoefficients solve_incident(const FundamentalSolve& fs, double theta0,
                                Side side);

/// Sample f on a theta mesh by barycentric interpolation of the smooth
/// coefficients in p = k sin(theta).  Grazing angles are excluded by
/// `margin` (radians from +-pi/2).
AmplitudeTable amplitude(const WaveCoefficients& wc, int n_theta = 64,
                         double margin = 1e-3);

/// Pointwise |f|^2.
std::vector<std::pair<double, double>> cross_section(
    const AmplitudeTable& table);

struct ScanGridPolicy {
  int n_osc = 48;
  double p_max_over_k = 4.0;
  int n_ev = 16;
};

/// Smallest (normalized) singular value of the 22 block of the fundamental
/// transfer matrix over a wavenumber range; minima flag spectral-
/// singularity candidates.
std::vector<std::pair<double, double>> spectral_singularity_scan(
    const PotentialSpec& spec, double k_lo, double k_hi, int n_k,
    const ScanGridPolicy& policy = {}, const EngineOptions& opts = {});

/// Barycentric interpolation weights for arbitrary distinct nodes.
VectorXd barycentric_weights(const std::vector<double>& nodes);
Complex barycentric_eval(const std::vector<double>& nodes,
                         const VectorXd& weights, const VectorXcd& values,
                         double x);

}  // namespace tmscatter
