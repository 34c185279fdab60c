#pragma once

#include <string>
#include <vector>

#include "tmscatter/types.hpp"

namespace tmscatter {

/// Dispersion function: sqrt(k^2 - p^2) continued as i*sqrt(p^2 - k^2).
Complex varpi(double p, double k);
double varpi_re(double p, double k);
double varpi_im(double p, double k);

/// Quadrature grid over transverse momentum.
///
/// The oscillating sector |p| < k is the image of a Gauss-Legendre rule in
/// theta under p = k sin(theta); the substitution removes the 1/varpi
/// endpoint singularity (dp/varpi = dtheta).  The evanescent sector covers
/// k < |p| <= p_max with a Gauss-Legendre rule mirrored to both signs.
/// Nodes are stored oscillating-first: [osc asc | ev(-) asc | ev(+) asc].
struct MomentumGrid {
  double k = 0.0;
  double p_max = 0.0;

  std::vector<double> osc_nodes, osc_weights;  // weights carry k*cos(theta)
  std::vector<double> ev_nodes, ev_weights;    // plain dp measure
  std::vector<double> theta_nodes;             // theta_j with p_j = k sin(theta_j)

  int n_osc() const { return static_cast<int>(osc_nodes.size()); }
  int n_ev() const { return static_cast<int>(ev_nodes.size()); }
  int total() const { return n_osc() + n_ev(); }
  bool is_osc(int i) const { return i < n_osc(); }

  double node(int i) const {
    return is_osc(i) ? osc_nodes[i] : ev_nodes[i - n_osc()];
  }
  double weight(int i) const {
    return is_osc(i) ? osc_weights[i] : ev_weights[i - n_osc()];
  }

  // cached per-node dispersion values
  VectorXcd varpi_vals;
  VectorXd varpi_im_vals;
  double max_varpi_im() const;
};

/// Build a grid.  n_ev counts nodes per sign; pass 0 to drop the evanescent
/// sector entirely (p_max is then ignored apart from validation).
MomentumGrid build_grid(double k, int n_osc, double p_max, int n_ev);

/// JSON document with node/weight arrays, for debugging dumps.
std::string grid_to_json(const MomentumGrid& grid);

/// Function sampled on a grid (oscillating values first, then evanescent).
struct GridFunction {
  const MomentumGrid* grid = nullptr;
  VectorXcd values;
};

/// Oscillating-sector projection: zero every evanescent value.  Idempotent.
GridFunction project(const GridFunction& f);

/// True when all evanescent values vanish (membership in F_k).
bool in_Fk(const GridFunction& f, double tol = 0.0);

}  // namespace tmscatter
