#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tmscatter/block_operator.hpp"
#include "tmscatter/disk_grid.hpp"
#include "tmscatter/transfer_core.hpp"

namespace tmscatter {

enum class Side3 { Left, Right };

/// A 3D potential described through its transverse Fourier transform
/// vtt(Kx, Ky, z) = int d^2r e^{-i K.r} v(r, z), compactly supported in z.
class PotentialSpec3 {
 public:
  PotentialSpec3() = default;

  static PotentialSpec3 zero();
  /// z delta(x) delta(y) delta(z - z0); transverse spectrum is constant.
  static PotentialSpec3 point_delta(Complex z, double z0 = 0.0);
  /// delta(z - z0) g(x, y) with transverse spectrum ghat.
  static PotentialSpec3 delta_plane(std::function<Complex(double, double)> ghat,
                                    double z0, Complex coupling, double scale);
  /// z exp(-(x^2/2sx^2 + y^2/2sy^2 + z^2/2sz^2)), truncated in z.
  static PotentialSpec3 gaussian(Complex z, double sx, double sy, double sz,
                                 double n_sigma = 4.0);
  /// C-inf bump spectrum in Kx supported exactly on [beta_lo, beta_hi],
  /// Gaussian in Ky, C-inf bump profile in z on [z_minus, z_plus].
  static PotentialSpec3 band_limited_x(Complex z, double beta_lo,
                                       double beta_hi, double sigma_y,
                                       double z_minus, double z_plus);
  /// Transverse Fourier data rotated by phi about the z axis.
  PotentialSpec3 rotated(double phi) const;

  bool is_zero() const { return kind_ == Kind::Zero; }
  bool is_delta_plane() const { return kind_ == Kind::DeltaPlane; }
  double z_minus() const { return z_minus_; }
  double z_plus() const { return z_plus_; }
  double z0() const { return z0_; }
  Complex coupling() const { return coupling_; }
  double amplitude_scale() const { return scale_; }
  double beta_lo() const { return beta_lo_; }

  /// vtt(Kx, Ky, z); zero outside [z_minus, z_plus].
  Complex fourier_xy(double z, double Kx, double Ky) const;
  /// Transverse spectrum of a delta-plane potential.
  Complex ghat(double Kx, double Ky) const;
  /// Full 3D transform vttt(K) by Gauss quadrature over z.
  Complex triple_transform(double Kx, double Ky, double Kz,
                           int n_quad = 96) const;

 private:
  enum class Kind { Zero, DeltaPlane, Smooth };
  Kind kind_ = Kind::Zero;
  double z_minus_ = 0.0, z_plus_ = 0.0, z0_ = 0.0;
  std::function<Complex(double, double)> ghat_;
  std::function<Complex(double)> chi_;
  Complex coupling_{0.0, 0.0};
  double scale_ = 0.0;
  double beta_lo_ = 0.0;
};

/// Fundamental transfer matrix on the disk grid (oscillating block only).
BlockOperator fundamental_tm_3d(const PotentialSpec3& spec,
                                const DiskGrid& grid,
                                const EngineOptions& opts = {});

/// Truncated time-ordered series on the disk grid, oscillating sandwich.
BlockOperator truncated_dyson_3d(const PotentialSpec3& spec,
                                 const DiskGrid& grid, int n_max,
                                 int n_quad = 32);

struct WaveCoefficients3 {
  double k = 0.0;
  double theta0 = 0.0, phi0 = 0.0;
  double p0x = 0.0, p0y = 0.0;
  Side3 side = Side3::Right;
  VectorXcd b_minus, a_plus;  // smooth parts on the disk nodes (osc sector)
  bool near_singular = false;
  double condition = 0.0;
};

/// Delta-eliminated solve on the disk grid; the incident channel carries
/// 4 pi^2 varpi(p0) delta^2(p - p0).  Set use_dyson1 to replace the
/// integrator by the first-order series (weak-coupling shortcut).
WaveCoefficients3 solve_3d(const PotentialSpec3& spec, const DiskGrid& grid,
                           double theta0, double phi0, Side3 side,
                           const EngineOptions& opts = {},
                           bool use_dyson1 = false);

struct AmplitudeSample3 {
  double theta = 0.0, phi = 0.0;
  Complex f{0.0, 0.0};
};

/// Sample f over a (theta, phi) mesh; f = -(i/2pi) times the interpolated
/// smooth coefficient at p = k sin(theta) (cos phi, sin phi).
std::vector<AmplitudeSample3> amplitude_3d(const WaveCoefficients3& wc,
                                           const DiskGrid& grid,
                                           int n_theta = 16, int n_phi = 16,
                                           double margin = 1e-3);

/// First Born amplitude: f = -vttt(k - k0) / (4 pi).
Complex born_amplitude_3d(const PotentialSpec3& spec, double k, double theta0,
                          double phi0, double theta, double phi);

struct DiskGridPolicyParams {
  int n_radial = 8;
  int n_azimuthal = 16;
  double p_max_over_k = 3.0;
  int n_ev_radial = 4;
};

struct Certificate3 {
  bool premise_ok = false;
  bool certified = false;
  double alpha = 0.0;
  double tol = 0.0;
  double premise_max_abs = 0.0;
  double worst_m_residual = 0.0;
  double worst_f = 0.0;
};

/// Theorem-level certificates along the x axis of the transverse plane;
/// rotate the potential first for other directions.
Certificate3 certify_invisibility_3d(const PotentialSpec3& spec, double alpha,
                                     const std::vector<double>& k_samples,
                                     const DiskGridPolicyParams& grid_params,
                                     const EngineOptions& opts = {});

struct BornReport3 {
  double max_rel_diff = 0.0;
  double dyson1_residual = 0.0;  // truncated series vs full transfer matrix
};

BornReport3 born_exactness_3d(const PotentialSpec3& spec, double k,
                              double theta0, double phi0,
                              const DiskGridPolicyParams& grid_params,
                              const EngineOptions& opts = {});

}  // namespace tmscatter
