#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "tmscatter/momentum_grid.hpp"
#include "tmscatter/types.hpp"

namespace tmscatter {

enum class PotentialKind {
  Zero,
  DeltaLine,      // delta(x - x0) * sum_n z_n delta(y - a_n)
  Gaussian,       // z exp(-x^2/2sx^2) exp(-y^2/2sy^2), truncated in x
  Separable,      // chi(x) * g(y), given via ghat(K)
  BandLimited,    // separable with ghat a C-inf bump on [beta_lo, beta_hi]
  YIndependent,   // v1(x); transverse transform is 2 pi v1(x) delta(K)
  Custom,         // tabulated or user-supplied vt(x, K)
};

struct DeltaTerm {
  Complex z;
  double a = 0.0;
};

/// A 2D potential described through its partial Fourier transform
/// vt(x, K) over the transverse coordinate.  Strictly compact x-support
/// [a_minus, a_plus]; an optional half-open window (lo, hi] models
/// x-truncations and preserves pointwise partition sums.
class PotentialSpec {
 public:
  PotentialSpec() = default;

  static PotentialSpec zero();
  static PotentialSpec delta_line(Complex z, double a, double x0 = 0.0);
  static PotentialSpec multi_delta(std::vector<DeltaTerm> terms,
                                   double x0 = 0.0);
  /// Truncated at x = +-n_sigma * sigma_x (y-profile kept analytic).
  static PotentialSpec gaussian(Complex z, double sigma_x, double sigma_y,
                                double n_sigma = 4.0);
  static PotentialSpec separable(std::function<Complex(double)> chi,
                                 std::function<Complex(double)> ghat,
                                 double a_minus, double a_plus,
                                 Complex coupling, double scale);
  /// C-inf bump transverse spectrum supported exactly on [beta_lo, beta_hi],
  /// peak amplitude z; x-profile is a C-inf bump on [a_minus, a_plus],
  /// optionally modulated by exp(i q_mod x) to break left/right symmetry.
  static PotentialSpec band_limited(Complex z, double beta_lo, double beta_hi,
                                    double a_minus, double a_plus,
                                    double q_mod = 0.0);
  static PotentialSpec y_independent(std::function<Complex(double)> v1,
                                     double a_minus, double a_plus,
                                     double scale);
  static PotentialSpec barrier(Complex height, double x_lo, double x_hi);
  /// Bilinear interpolation of a tabulated vt(x, K); zero outside the table.
  static PotentialSpec custom_table(std::vector<double> xs,
                                    std::vector<double> Ks,
                                    std::vector<Complex> vals_row_major);
  /// Pointwise sum of two specs (support hull).
  static PotentialSpec superpose(const PotentialSpec& a,
                                 const PotentialSpec& b);

  PotentialKind kind() const { return kind_; }
  double a_minus() const { return a_minus_; }
  double a_plus() const { return a_plus_; }
  bool is_delta_line() const { return kind_ == PotentialKind::DeltaLine; }
  bool is_y_independent() const { return kind_ == PotentialKind::YIndependent; }
  bool is_band_limited() const { return kind_ == PotentialKind::BandLimited; }
  bool is_zero() const { return kind_ == PotentialKind::Zero; }

  double delta_x0() const { return x0_; }
  const std::vector<DeltaTerm>& delta_terms() const { return terms_; }
  /// Transverse spectrum factor of a delta-line potential:
  /// sum_n z_n exp(-i a_n K).
  Complex tilde_g(double K) const;

  double beta_lo() const { return beta_lo_; }
  double beta_hi() const { return beta_hi_; }
  Complex coupling() const { return coupling_; }
  /// Magnitude used to normalize residuals in certificates.
  double amplitude_scale() const { return scale_; }

  /// vt(x, K).  Exactly zero outside the support window.  Rejects
  /// delta-line specs (their x-dependence is symbolic) and y-independent
  /// specs (their transform carries delta(K)).
  Complex fourier_y(double x, double K) const;

  /// y-independent profile v1(x), window applied.
  Complex v1(double x) const;

  /// v(x, y) in position space; available for gaussian and for separable
  /// specs constructed with a position-space transverse profile.
  Complex position_space(double x, double y) const;
  bool has_position_space() const { return static_cast<bool>(vxy_); }

  /// Full 2D Fourier transform vtt(Kx, Ky), by Gauss quadrature of
  /// fourier_y over the support (closed form for delta lines).
  Complex double_transform(double Kx, double Ky, int n_quad = 128) const;

  /// Restriction to x in (lo, hi]; lo at or below a_minus keeps the left
  /// endpoint closed so a partition sums to the original everywhere.
  PotentialSpec truncated(double lo, double hi) const;

  bool in_window(double x) const {
    return x >= a_minus_ && x <= a_plus_ &&
           (x_lo_ == -std::numeric_limits<double>::infinity() || x > x_lo_) &&
           x <= x_hi_;
  }

 private:
  PotentialKind kind_ = PotentialKind::Zero;
  double a_minus_ = 0.0, a_plus_ = 0.0;
  double x_lo_ = -std::numeric_limits<double>::infinity();
  double x_hi_ = std::numeric_limits<double>::infinity();
  double x0_ = 0.0;
  std::vector<DeltaTerm> terms_;
  std::function<Complex(double, double)> vt_;  // before windowing
  std::function<Complex(double)> v1_;
  std::function<Complex(double, double)> vxy_;
  double beta_lo_ = 0.0, beta_hi_ = 0.0;
  Complex coupling_{0.0, 0.0};
  double scale_ = 0.0;
};

/// Discretized interaction operator at fixed x: dense matrix with entries
/// vt(x, p_i - p_j) w_j / (2 pi) over all grid nodes; v1(x) * identity for
/// y-independent specs.
MatrixXcd interaction_operator(const PotentialSpec& spec, double x,
                               const MomentumGrid& grid);

/// Convolution matrix of the transverse spectrum of a delta-line spec:
/// tilde_g(p_i - p_j) w_j / (2 pi).
MatrixXcd g_operator(const PotentialSpec& spec, const MomentumGrid& grid);

}  // namespace tmscatter
