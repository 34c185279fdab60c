#include "tmscatter/momentum_grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "tmscatter/quadrature.hpp"

namespace tmscatter {

Complex varpi(double p, double k) {
  const double d = (k - p) * (k + p);
  return d >= 0.0 ? Complex(std::sqrt(d), 0.0) : Complex(0.0, std::sqrt(-d));
}

double varpi_re(double p, double k) {
  const double d = (k - p) * (k + p);
  return d >= 0.0 ? std::sqrt(d) : 0.0;
}

double varpi_im(double p, double k) {
  const double d = (k - p) * (k + p);
  return d >= 0.0 ? 0.0 : std::sqrt(-d);
}

double MomentumGrid::max_varpi_im() const {
  return n_ev() > 0 ? varpi_im(p_max, k) : 0.0;
}

MomentumGrid build_grid(double k, int n_osc, double p_max, int n_ev) {
  if (k <= 0.0) throw ConfigError("build_grid: k must be positive");
  if (n_osc < 2) throw ConfigError("build_grid: n_osc must be >= 2");
  if (n_ev < 0) throw ConfigError("build_grid: n_ev must be >= 0");
  if (n_ev > 0 && p_max <= k)
    throw ConfigError("build_grid: p_max must exceed k");

  MomentumGrid g;
  g.k = k;
  g.p_max = n_ev > 0 ? p_max : k;

  // oscillating sector: open rule in theta, so no node reaches |p| = k
  const GaussRule th =
      gauss_legendre_on(n_osc, -std::numbers::pi / 2, std::numbers::pi / 2);
  g.theta_nodes = th.x;
  g.osc_nodes.resize(n_osc);
  g.osc_weights.resize(n_osc);
  for (int j = 0; j < n_osc; ++j) {
    g.osc_nodes[j] = k * std::sin(th.x[j]);
    g.osc_weights[j] = th.w[j] * k * std::cos(th.x[j]);
  }

  if (n_ev > 0) {
    const GaussRule ev = gauss_legendre_on(n_ev, k, p_max);
    g.ev_nodes.reserve(2 * n_ev);
    g.ev_weights.reserve(2 * n_ev);
    for (int j = n_ev - 1; j >= 0; --j) {  // (-p_max, -k) ascending
      g.ev_nodes.push_back(-ev.x[j]);
      g.ev_weights.push_back(ev.w[j]);
    }
    for (int j = 0; j < n_ev; ++j) {
      g.ev_nodes.push_back(ev.x[j]);
      g.ev_weights.push_back(ev.w[j]);
    }
  }

  const int n = g.total();
  g.varpi_vals.resize(n);
  g.varpi_im_vals.resize(n);
  for (int i = 0; i < n; ++i) {
    g.varpi_vals[i] = varpi(g.node(i), k);
    g.varpi_im_vals[i] = varpi_im(g.node(i), k);
  }
  return g;
}

namespace {
void append_array(std::ostringstream& os, const char* name,
                  const std::vector<double>& v) {
  os << "\"" << name << "\":[";
  char buf[32];
  for (size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", v[i]);
    os << (i ? "," : "") << buf;
  }
  os << "]";
}
}  // namespace

std::string grid_to_json(const MomentumGrid& grid) {
  std::ostringstream os;
  char buf[32];
  os << "{";
  std::snprintf(buf, sizeof buf, "%.17g", grid.k);
  os << "\"k\":" << buf << ",";
  std::snprintf(buf, sizeof buf, "%.17g", grid.p_max);
  os << "\"p_max\":" << buf << ",";
  append_array(os, "osc_nodes", grid.osc_nodes);
  os << ",";
  append_array(os, "osc_weights", grid.osc_weights);
  os << ",";
  append_array(os, "ev_nodes", grid.ev_nodes);
  os << ",";
  append_array(os, "ev_weights", grid.ev_weights);
  os << ",";
  append_array(os, "theta_nodes", grid.theta_nodes);
  os << "}";
  return os.str();
}

GridFunction project(const GridFunction& f) {
  GridFunction out = f;
  for (int i = f.grid->n_osc(); i < f.grid->total(); ++i) out.values[i] = 0.0;
  return out;
}

bool in_Fk(const GridFunction& f, double tol) {
  for (int i = f.grid->n_osc(); i < f.grid->total(); ++i)
    if (std::abs(f.values[i]) > tol) return false;
  return true;
}

}  // namespace tmscatter
