#include "tmscatter/scatter2d.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

namespace tmscatter {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024;  // sqrt(2 pi)
}

VectorXd barycentric_weights(const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  const auto [lo, hi] = std::minmax_element(nodes.begin(), nodes.end());
  const double c = 4.0 / (*hi - *lo);  // rescale to avoid under/overflow
  VectorXd w(n);
  for (int j = 0; j < n; ++j) {
    double prod = 1.0;
    for (int l = 0; l < n; ++l)
      if (l != j) prod *= c * (nodes[j] - nodes[l]);
    w[j] = 1.0 / prod;
  }
  return w;
}

Complex barycentric_eval(const std::vector<double>& nodes,
                         const VectorXd& weights, const VectorXcd& values,
                         double x) {
  const int n = static_cast<int>(nodes.size());
  Complex num{0.0, 0.0};
  double den = 0.0;
  for (int j = 0; j < n; ++j) {
    const double d = x - nodes[j];
    if (d == 0.0) return values[j];
    const double r = weights[j] / d;
    num += r * values[j];
    den += r;
  }
  return num / den;
}

WaveCoefficients solve_incident(const FundamentalSolve& fs, double theta0,
                                Side side) {
  const MomentumGrid& grid = *fs.grid;
  const double k = grid.k;
  const double p0 = k * std::sin(theta0);
  if (std::abs(std::sin(theta0)) >= 1.0)
    throw ConfigError("solve_incident: grazing incidence |sin theta0| = 1");
  if (std::abs(p0 - fs.p0) > 1e-12 * k)
    throw ConfigError(
        "solve_incident: transfer data were built for a different p0");

  const int no = grid.n_osc();
  const Complex c0 = 2.0 * std::numbers::pi * fs.varpi0;

  const MatrixXcd k12 = fs.M.b[0][1];
  MatrixXcd a22 = fs.M.b[1][1];  // I + K22

  const VectorXcd d_up = fs.delta_cols.col(side == Side::Right ? 1 : 0)
                             .head(no);  // K_{1,l} delta
  const VectorXcd d_lo = fs.delta_cols.col(side == Side::Right ? 1 : 0)
                             .tail(no);  // K_{2,l} delta

  const VectorXcd rhs = -c0 * d_lo;
  Eigen::PartialPivLU<MatrixXcd> lu(a22);
  VectorXcd b = lu.solve(rhs);

  WaveCoefficients wc;
  wc.k = k;
  wc.theta0 = theta0;
  wc.p0 = p0;
  wc.side = side;

  const double rhs_norm = rhs.norm();
  const double resid = (a22 * b - rhs).norm();
  Eigen::JacobiSVD<MatrixXcd> svd(a22);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  wc.condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  wc.near_singular = smin <= 1e-13 * smax ||
                     (rhs_norm > 0.0 && resid > 1e-8 * rhs_norm) ||
                     !b.allFinite();

  const VectorXcd ap = c0 * d_up + k12 * b;

  wc.b_minus.grid = &grid;
  wc.a_plus.grid = &grid;
  wc.b_minus.values = VectorXcd::Zero(grid.total());
  wc.a_plus.values = VectorXcd::Zero(grid.total());
  wc.b_minus.values.head(no) = b;
  wc.a_plus.values.head(no) = ap;
  return wc;
}

AmplitudeTable amplitude(const WaveCoefficients& wc, int n_theta,
                         double margin) {
  const MomentumGrid& grid = *wc.b_minus.grid;
  const double k = wc.k;
  const int no = grid.n_osc();
  const double pi = std::numbers::pi;

  std::vector<double> nodes(grid.osc_nodes.begin(), grid.osc_nodes.end());
  const VectorXd bw = barycentric_weights(nodes);
  const VectorXcd a_vals = wc.a_plus.values.head(no);
  const VectorXcd b_vals = wc.b_minus.values.head(no);

  AmplitudeTable table;
  table.side = wc.side;
  table.k = k;
  table.theta0 = wc.theta0;

  const Complex pref = -I_UNIT / kSqrt2Pi;
  const int nf = n_theta / 2, nb = n_theta - nf;
  auto push = [&](double theta, bool forward) {
    const double p = k * std::sin(theta);
    const Complex v =
        barycentric_eval(nodes, bw, forward ? a_vals : b_vals, p);
    table.samples.push_back({theta, pref * v});
  };
  for (int i = 0; i < nf; ++i) {
    const double lo = -pi / 2 + margin, hi = pi / 2 - margin;
    push(lo + (i + 0.5) * (hi - lo) / nf, true);
  }
  for (int i = 0; i < nb; ++i) {
    const double lo = pi / 2 + margin, hi = 3 * pi / 2 - margin;
    push(lo + (i + 0.5) * (hi - lo) / nb, false);
  }
  return table;
}

std::vector<std::pair<double, double>> cross_section(
    const AmplitudeTable& table) {
  std::vector<std::pair<double, double>> out;
  out.reserve(table.samples.size());
  for (const auto& s : table.samples)
    out.emplace_back(s.theta, std::norm(s.f));
  return out;
}

std::vector<std::pair<double, double>> spectral_singularity_scan(
    const PotentialSpec& spec, double k_lo, double k_hi, int n_k,
    const ScanGridPolicy& policy, const EngineOptions& opts) {
  if (!(k_lo > 0.0) || !(k_hi >= k_lo) || n_k < 1)
    throw ConfigError("spectral_singularity_scan: bad wavenumber range");
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < n_k; ++i) {
    const double k =
        n_k == 1 ? k_lo : k_lo + (k_hi - k_lo) * i / (n_k - 1.0);
    const MomentumGrid grid =
        build_grid(k, policy.n_osc, policy.p_max_over_k * k, policy.n_ev);
    const BlockOperator m = fundamental_tm(spec, grid, opts);
    Eigen::JacobiSVD<MatrixXcd> svd(m.b[1][1]);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    out.emplace_back(k, smax > 0.0 ? smin / smax : 0.0);
  }
  return out;
}

}  // namespace tmscatter
