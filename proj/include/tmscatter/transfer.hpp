#pragma once

#include "tmscatter/block_operator.hpp"
#include "tmscatter/potential.hpp"
#include "tmscatter/transfer_core.hpp"

namespace tmscatter {

/// Propagator U(x1, x0) of the transfer ODE i dU/dx = H(x) U on the full
/// grid.  Stretches outside the support are applied exactly as diagonal
/// free factors.  Rejects delta-line specs (those terminate in closed form
/// inside auxiliary_tm / fundamental_tm).
BlockOperator evolve(const PotentialSpec& spec, double x0, double x1,
                     const MomentumGrid& grid, int steps,
                     Scheme scheme = Scheme::MidpointMagnus);

/// Auxiliary transfer matrix on the full grid: the interaction-picture
/// propagator across the support.  With opts.slices > 1 it is assembled as
/// the ordered product of the slice transfer matrices.
BlockOperator auxiliary_tm(const PotentialSpec& spec, const MomentumGrid& grid,
                           const EngineOptions& opts = {});

/// Fundamental transfer matrix: oscillating-sector sandwich of the
/// auxiliary one.  Only the oscillating sub-block is stored.
BlockOperator fundamental_tm(const PotentialSpec& spec,
                             const MomentumGrid& grid,
                             const EngineOptions& opts = {});

/// Fundamental transfer matrix together with the response of the smooth
/// coefficients to a unit incident delta at transverse momentum p0,
/// obtained by driving the same integration with the continuum kernel
/// column (weight one, no quadrature weight).
struct FundamentalSolve {
  BlockOperator M;        // osc-only
  MatrixXcd delta_cols;   // (2 n_osc) x 2; rows: upper block then lower
  double p0 = 0.0;
  Complex varpi0{0.0, 0.0};
  const MomentumGrid* grid = nullptr;
};

FundamentalSolve fundamental_with_delta(const PotentialSpec& spec,
                                        const MomentumGrid& grid, double p0,
                                        const EngineOptions& opts = {});

/// Oscillating-sector sandwich of the time-ordered series truncated at
/// order n_max, with nested integrals on Gauss rules (n_quad points per
/// level).  Cost grows like n_quad^(n_max - 1) matrix products.
BlockOperator truncated_dyson(const PotentialSpec& spec,
                              const MomentumGrid& grid, int n_max,
                              int n_quad = 48, bool project_potential = false);

}  // namespace tmscatter
