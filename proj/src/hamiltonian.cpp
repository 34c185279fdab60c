#include "tmscatter/hamiltonian.hpp"

#include <cmath>

namespace tmscatter {

namespace {
constexpr double kSigma[2] = {+1.0, -1.0};
constexpr double kKK[2][2] = {{1.0, 1.0}, {-1.0, -1.0}};
}  // namespace

BlockOperator hamiltonian_full(const PotentialSpec& spec, double x,
                               const MomentumGrid& grid) {
  const int n = grid.total();
  BlockOperator h = BlockOperator::zero(n, grid.n_osc(), grid.k);

  const bool active = !spec.is_zero() && !spec.is_delta_line() &&
                      spec.in_window(x);
  if (active) {
    const MatrixXcd v = interaction_operator(spec, x, grid);
    VectorXcd row[2], col[2];
    for (int s = 0; s < 2; ++s) {
      row[s].resize(n);
      col[s].resize(n);
      for (int i = 0; i < n; ++i) {
        const double wr = varpi_re(grid.node(i), grid.k);
        row[s][i] = std::exp(-I_UNIT * (kSigma[s] * wr * x));
        col[s][i] = std::exp(I_UNIT * (kSigma[s] * wr * x)) /
                    grid.varpi_vals[i];
      }
    }
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        h.b[j][l] = (0.5 * kKK[j][l]) *
                    (row[j].asDiagonal() * v * col[l].asDiagonal());
  }
  for (int j = 0; j < 2; ++j)
    h.b[j][j].diagonal() -=
        (I_UNIT * kSigma[j]) * grid.varpi_im_vals.cast<Complex>();
  return h;
}

BlockOperator hamiltonian_interaction(const PotentialSpec& spec, double x,
                                      const MomentumGrid& grid,
                                      double anchor) {
  const int n = grid.total();
  const double dx = x - anchor;
  if (grid.max_varpi_im() * std::abs(dx) > kPhaseExponentGuard)
    throw OverflowError(
        "hamiltonian_interaction: evanescent phase exponent exceeds guard; "
        "slice the support or reduce p_max");

  BlockOperator h = BlockOperator::zero(n, grid.n_osc(), grid.k);
  if (spec.is_zero() || spec.is_delta_line() || !spec.in_window(x)) return h;

  const MatrixXcd v = interaction_operator(spec, x, grid);
  VectorXcd row[2], col[2];
  for (int s = 0; s < 2; ++s) {
    row[s].resize(n);
    col[s].resize(n);
    for (int i = 0; i < n; ++i) {
      const Complex w = grid.varpi_vals[i];
      row[s][i] = std::exp(-I_UNIT * (kSigma[s] * w * dx));
      col[s][i] = std::exp(I_UNIT * (kSigma[s] * w * dx)) / w;
    }
  }
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l)
      h.b[j][l] = (0.5 * kKK[j][l]) *
                  (row[j].asDiagonal() * v * col[l].asDiagonal());
  return h;
}

}  // namespace tmscatter
