#pragma once

#include <vector>

#include "tmscatter/types.hpp"

namespace tmscatter {

/// Quadrature grid over 2D transverse momentum: tensor product of a radial
/// Gauss rule under |p| = k sin(phi_polar) with a uniform azimuthal rule
/// over the disk |p| < k, plus a truncated annulus k < |p| <= p_max.
/// Oscillating nodes first, ring-major (radial outer, azimuth inner).
struct DiskGrid {
  double k = 0.0;
  double p_max = 0.0;
  int n_radial = 0, n_azimuthal = 0, n_ev_radial = 0;

  std::vector<double> px, py;   // node coordinates
  std::vector<double> weights;  // d^2p measure
  VectorXcd varpi_vals;

  int n_osc() const { return n_radial * n_azimuthal; }
  int total() const { return static_cast<int>(px.size()); }
  bool is_osc(int i) const { return i < n_osc(); }
  double radius(int i) const { return std::hypot(px[i], py[i]); }
  double max_varpi_im() const;

  // ring structure of the oscillating sector, for interpolation
  std::vector<double> ring_radii;     // n_radial values
  std::vector<double> azimuth_nodes;  // n_azimuthal values
};

DiskGrid build_disk_grid(double k, int n_radial, int n_azimuthal, double p_max,
                         int n_ev_radial);

/// sum w / varpi over the disk sector; equals 2 pi k up to rule accuracy.
double disk_moment(const DiskGrid& grid);

}  // namespace tmscatter
