#pragma once

#include "tmscatter/block_operator.hpp"
#include "tmscatter/potential.hpp"

namespace tmscatter {

/// Exponent bound for evanescent phase factors; larger arguments raise
/// OverflowError instead of producing infinities.
inline constexpr double kPhaseExponentGuard = 700.0;

/// Effective Hamiltonian driving the transfer ODE in x:
///   (1/2) e^{-i varpi_r x s3} V(x) KK e^{i varpi_r x s3} varpi^-1
///   - i varpi_i s3,
/// with KK = [[1,1],[-1,-1]] and s3 the diagonal Pauli matrix.  Outside the
/// support only the diagonal free part survives.
BlockOperator hamiltonian_full(const PotentialSpec& spec, double x,
                               const MomentumGrid& grid);

/// Interaction-picture Hamiltonian: full complex-varpi phases, no free
/// term, exactly zero outside the support.  Phases are taken relative to
/// `anchor`; the default reproduces the absolute-frame operator.
BlockOperator hamiltonian_interaction(const PotentialSpec& spec, double x,
                                      const MomentumGrid& grid,
                                      double anchor = 0.0);

}  // namespace tmscatter
