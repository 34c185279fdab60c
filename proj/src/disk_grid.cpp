#include "tmscatter/disk_grid.hpp"

#include <cmath>
#include <numbers>

#include "tmscatter/momentum_grid.hpp"
#include "tmscatter/quadrature.hpp"

namespace tmscatter {

double DiskGrid::max_varpi_im() const {
  return n_ev_radial > 0 ? varpi_im(p_max, k) : 0.0;
}

DiskGrid build_disk_grid(double k, int n_radial, int n_azimuthal, double p_max,
                         int n_ev_radial) {
  if (k <= 0.0) throw ConfigError("build_disk_grid: k must be positive");
  if (n_radial < 2 || n_azimuthal < 2)
    throw ConfigError("build_disk_grid: counts must be >= 2");
  if (n_azimuthal % 2 != 0)
    throw ConfigError("build_disk_grid: azimuthal count must be even");
  if (n_ev_radial < 0) throw ConfigError("build_disk_grid: n_ev_radial >= 0");
  if (n_ev_radial > 0 && p_max <= k)
    throw ConfigError("build_disk_grid: p_max must exceed k");

  DiskGrid g;
  g.k = k;
  g.p_max = n_ev_radial > 0 ? p_max : k;
  g.n_radial = n_radial;
  g.n_azimuthal = n_azimuthal;
  g.n_ev_radial = n_ev_radial;

  const double two_pi = 2.0 * std::numbers::pi;
  const double waz = two_pi / n_azimuthal;
  g.azimuth_nodes.resize(n_azimuthal);
  for (int m = 0; m < n_azimuthal; ++m)
    g.azimuth_nodes[m] = two_pi * (m + 0.5) / n_azimuthal;

  // disk sector: |p| = k sin(t), t in (0, pi/2); the Jacobian removes the
  // 1/varpi edge singularity the same way the 2D rule does
  const GaussRule rt = gauss_legendre_on(n_radial, 0.0, std::numbers::pi / 2);
  for (int j = 0; j < n_radial; ++j) {
    const double r = k * std::sin(rt.x[j]);
    g.ring_radii.push_back(r);
    const double wr = rt.w[j] * k * std::cos(rt.x[j]);  // dr measure
    for (int m = 0; m < n_azimuthal; ++m) {
      g.px.push_back(r * std::cos(g.azimuth_nodes[m]));
      g.py.push_back(r * std::sin(g.azimuth_nodes[m]));
      g.weights.push_back(wr * r * waz);
    }
  }
  // annulus sector
  if (n_ev_radial > 0) {
    const GaussRule re = gauss_legendre_on(n_ev_radial, k, p_max);
    for (int j = 0; j < n_ev_radial; ++j) {
      const double r = re.x[j];
      for (int m = 0; m < n_azimuthal; ++m) {
        g.px.push_back(r * std::cos(g.azimuth_nodes[m]));
        g.py.push_back(r * std::sin(g.azimuth_nodes[m]));
        g.weights.push_back(re.w[j] * r * waz);
      }
    }
  }

  const int n = g.total();
  g.varpi_vals.resize(n);
  for (int i = 0; i < n; ++i) g.varpi_vals[i] = varpi(g.radius(i), k);
  return g;
}

double disk_moment(const DiskGrid& grid) {
  double s = 0.0;
  for (int i = 0; i < grid.n_osc(); ++i)
    s += grid.weights[i] / grid.varpi_vals[i].real();
  return s;
}

}  // namespace tmscatter
