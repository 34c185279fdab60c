#pragma once

#include <functional>
#include <optional>

#include "tmscatter/types.hpp"

namespace tmscatter {

enum class Scheme { MidpointMagnus, Rk4 };

struct EngineOptions {
  int steps = 256;     // integrator steps across the potential support
  Scheme scheme = Scheme::MidpointMagnus;
  int slices = 1;      // support partition for slice-composed builds
  bool project_potential = false;  // substitute Pi V Pi for V (diagnostic)
};

/// Dimension-free description of a transfer problem on a spectral basis.
/// The 2D momentum grid and the 3D disk grid both reduce to this: a list
/// of nodes with dispersion values and weights, a discretized interaction
/// matrix per "time" x, and (optionally) the continuum kernel column that
/// the interaction applies to the incident Dirac delta.
struct SpectralProblem {
  VectorXcd varpi;
  VectorXd weights;
  int n_osc = 0;
  double k = 0.0;
  double a_minus = 0.0, a_plus = 0.0;

  std::function<MatrixXcd(double x)> v_matrix;

  // delta-in-x potentials: single kick at x0 with convolution matrix g
  bool is_delta = false;
  double x0 = 0.0;
  std::function<MatrixXcd()> g_matrix;

  // driven columns, bound to one incident momentum (|p0| < k)
  std::function<VectorXcd(double x)> v_column;
  std::function<VectorXcd()> g_column;
  Complex varpi_p0{0.0, 0.0};

  bool project_potential = false;
};

/// Propagator across [a_minus, a_plus] in the physical frame together with
/// the response of the smooth part to a unit symbolic delta placed in
/// component l (columns of delta_resp; rows stacked upper then lower).
struct CoreBuild {
  MatrixXcd u;           // (2n) x (2n)
  MatrixXcd delta_resp;  // (2n) x 2, zero unless driven
  bool has_delta = false;
};

CoreBuild core_build(const SpectralProblem& prob, const EngineOptions& opts,
                     bool with_delta);

/// Propagator over [x0, x1] given fill-in of the effective Hamiltonian;
/// used by core_build and by the explicit evolution entry points.
MatrixXcd core_integrate(const SpectralProblem& prob, double x0, double x1,
                         int steps, Scheme scheme, MatrixXcd* delta_resp);

/// Truncated time-ordered series through order n_max in the
/// interaction-picture Hamiltonian, sandwiched between oscillating
/// projections; n_quad Gauss points per nested integral.
MatrixXcd core_truncated_dyson(const SpectralProblem& prob, int n_max,
                               int n_quad);

/// Diagonal free factor exp(-varpi_i dx s3) as a (2n) vector [upper, lower].
VectorXcd free_factor(const VectorXcd& varpi, double dx);

}  // namespace tmscatter
