#include "tmscatter/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "tmscatter/quadrature.hpp"

namespace tmscatter {

namespace {
constexpr double kPi = std::numbers::pi;

Complex delta2d_factor(Complex z) {
  const Complex den = 4.0 + I_UNIT * z;
  if (std::abs(den) < 1e-14 * (4.0 + std::abs(z)))
    throw SpectralSingularityError(
        "delta2d: coupling sits on the spectral singularity z = 4i");
  return z / den;
}
}  // namespace

Complex delta2d_amplitude(Complex z, double a, double k, double theta0,
                          double theta) {
  if (k <= 0.0) throw ConfigError("delta2d_amplitude: k must be positive");
  const Complex fac = delta2d_factor(z);
  return -std::sqrt(2.0 / kPi) * fac *
         std::exp(-I_UNIT * (a * k * (std::sin(theta) - std::sin(theta0))));
}

Complex delta2d_g_moment(Complex z, double a, double k, double theta0) {
  const double p0 = k * std::sin(theta0);
  return 4.0 * std::exp(I_UNIT * (a * p0)) / (4.0 + I_UNIT * z);
}

Complex delta2d_b_minus_smooth(Complex z, double a, double k, double theta0,
                               double p) {
  if (std::abs(p) >= k) return {0.0, 0.0};
  const double p0 = k * std::sin(theta0);
  return -2.0 * I_UNIT * z / (4.0 + I_UNIT * z) *
         std::exp(-I_UNIT * (a * (p - p0)));
}

Complex delta2d_a_plus_smooth(Complex z, double a, double k, double theta0,
                              double p) {
  return delta2d_b_minus_smooth(z, a, k, theta0, p);
}

DivergenceReport delta2d_auxiliary_divergence(
    Complex z, double a, double k, const std::vector<double>& p_max_over_k,
    int n_osc) {
  (void)a;  // the moment at coincident transverse positions is a-independent
  DivergenceReport rep;
  rep.p_max_over_k = p_max_over_k;
  rep.analytic_slope = z / (2.0 * kPi);

  // oscillating moment: the theta-substituted rule integrates 1/varpi as a
  // plain angular integral
  const GaussRule th = gauss_legendre_on(n_osc, -kPi / 2, kPi / 2);
  double osc = 0.0;
  for (double w : th.w) osc += w;
  rep.osc_moment = osc;
  rep.osc_moment_error = std::abs(osc - kPi);

  // evanescent moment on the truncated sector: int_k^P dq / sqrt(q^2-k^2)
  // under q = k cosh(t) is a plain dt integral up to arcosh(P/k)
  for (double f : p_max_over_k) {
    const double t_max = std::acosh(f);
    const GaussRule tq = gauss_legendre_on(256, 0.0, t_max);
    double ev = 0.0;
    for (double w : tq.w) ev += w;
    // both signs of q; 1/varpi = -i / sqrt(q^2 - k^2) there
    const Complex total = osc + (-I_UNIT) * (2.0 * ev);
    rep.denominator.push_back(1.0 + I_UNIT * z / (4.0 * kPi) * total);
  }

  // least-squares slope in log(p_max/k)
  const int n = static_cast<int>(p_max_over_k.size());
  double sx = 0.0, sxx = 0.0;
  Complex sy{0.0, 0.0}, sxy{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    const double x = std::log(p_max_over_k[i]);
    sx += x;
    sxx += x * x;
    sy += rep.denominator[i];
    sxy += x * rep.denominator[i];
  }
  rep.fitted_slope = (static_cast<double>(n) * sxy - sx * sy) /
                     (static_cast<double>(n) * sxx - sx * sx);
  rep.rel_deviation =
      std::abs(rep.fitted_slope - rep.analytic_slope) /
      std::max(std::abs(rep.analytic_slope), 1e-300);
  return rep;
}

WaveCoefficients multi_delta_solve(const std::vector<DeltaTerm>& terms,
                                   const MomentumGrid& grid, double theta0,
                                   Side side) {
  const int nd = static_cast<int>(terms.size());
  if (nd < 1) throw ConfigError("multi_delta_solve: need at least one term");
  const double k = grid.k;
  const double p0 = k * std::sin(theta0);

  // moments of the kernel between the transverse positions:
  // J_mn = (1/pi) int_{-k}^{k} e^{i (a_m - a_n) q} / varpi(q) dq
  MatrixXcd sys(nd, nd);
  for (int m = 0; m < nd; ++m)
    for (int nidx = 0; nidx < nd; ++nidx) {
      const double da = terms[m].a - terms[nidx].a;
      Complex j{0.0, 0.0};
      for (size_t t = 0; t < grid.theta_nodes.size(); ++t) {
        const double wtheta = grid.osc_weights[t] / grid.varpi_vals[t].real();
        j += wtheta * std::exp(I_UNIT * (da * grid.osc_nodes[t]));
      }
      j /= kPi;
      sys(m, nidx) =
          (m == nidx ? 1.0 : 0.0) + (I_UNIT / 4.0) * terms[nidx].z * j;
    }
  // right-hand side: moments of the incident delta
  VectorXcd rhs(nd);
  for (int m = 0; m < nd; ++m)
    rhs[m] = std::exp(I_UNIT * (terms[m].a * p0));

  Eigen::PartialPivLU<MatrixXcd> lu(sys);
  const VectorXcd g = lu.solve(rhs);
  const double resid = (sys * g - rhs).norm();
  const bool singular = resid > 1e-8 * rhs.norm() || !g.allFinite();

  WaveCoefficients wc;
  wc.k = k;
  wc.theta0 = theta0;
  wc.p0 = p0;
  wc.side = side;
  wc.near_singular = singular;
  Eigen::JacobiSVD<MatrixXcd> svd(sys);
  wc.condition = svd.singularValues().maxCoeff() /
                 std::max(svd.singularValues().minCoeff(), 1e-300);

  wc.b_minus.grid = &grid;
  wc.a_plus.grid = &grid;
  wc.b_minus.values = VectorXcd::Zero(grid.total());
  wc.a_plus.values = VectorXcd::Zero(grid.total());
  for (int i = 0; i < grid.n_osc(); ++i) {
    Complex s{0.0, 0.0};
    for (int nidx = 0; nidx < nd; ++nidx)
      s += terms[nidx].z * g[nidx] *
           std::exp(-I_UNIT * (terms[nidx].a * grid.osc_nodes[i]));
    wc.b_minus.values[i] = -0.5 * I_UNIT * s;
    wc.a_plus.values[i] = -0.5 * I_UNIT * s;
  }
  return wc;
}

Complex delta3d_amplitude(Complex z, double k) {
  if (k <= 0.0) throw ConfigError("delta3d_amplitude: k must be positive");
  const Complex den = 4.0 * kPi + I_UNIT * (k * z);
  if (std::abs(den) < 1e-14 * (4.0 * kPi + std::abs(k * z)))
    throw SpectralSingularityError(
        "delta3d: coupling sits on the spectral singularity 4 pi + i k z = 0");
  return -z / den;
}

Complex delta3d_moment(Complex z, double k) {
  const Complex den = 4.0 * kPi + I_UNIT * (k * z);
  if (std::abs(den) < 1e-14 * (4.0 * kPi + std::abs(k * z)))
    throw SpectralSingularityError(
        "delta3d: coupling sits on the spectral singularity 4 pi + i k z = 0");
  return 4.0 * kPi / den;
}

}  // namespace tmscatter
