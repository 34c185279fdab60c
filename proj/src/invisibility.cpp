#include "tmscatter/invisibility.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

namespace tmscatter {

namespace {
constexpr double kTwoSqrt2Pi = 5.013256549262001;  // 2 sqrt(2 pi)
}

Complex born_amplitude_2d(const PotentialSpec& spec, double k, double theta0,
                          double theta) {
  const double kx = k * (std::cos(theta) - std::cos(theta0));
  const double ky = k * (std::sin(theta) - std::sin(theta0));
  return -spec.double_transform(kx, ky) / kTwoSqrt2Pi;
}

SupportReport check_support_condition(const PotentialSpec& spec, double beta,
                                      int n_x, int n_K, double K_min) {
  SupportReport rep;
  rep.beta = beta;
  rep.scale = spec.amplitude_scale();
  double worst = 0.0;
  if (spec.is_delta_line()) {
    for (int j = 0; j < n_K; ++j) {
      const double K = K_min + (beta - K_min) * (j + 0.5) / n_K;
      worst = std::max(worst, std::abs(spec.tilde_g(K)));
    }
  } else {
    for (int i = 0; i < n_x; ++i) {
      const double x = spec.a_minus() +
                       (spec.a_plus() - spec.a_minus()) * (i + 0.5) / n_x;
      for (int j = 0; j < n_K; ++j) {
        const double K = K_min + (beta - K_min) * (j + 0.5) / n_K;
        worst = std::max(worst, std::abs(spec.fourier_y(x, K)));
      }
    }
  }
  rep.max_abs = worst;
  rep.pass = worst <= 1e-12 * std::max(rep.scale, 1e-300);
  return rep;
}

InvisibilityCertificate certify_invisibility(
    const PotentialSpec& spec, double alpha,
    const std::vector<double>& k_samples,
    const std::vector<double>& theta0_samples, int n_osc,
    double p_max_over_k, int n_ev, const EngineOptions& opts) {
  InvisibilityCertificate cert;
  cert.alpha = alpha;
  cert.n_osc = n_osc;
  cert.p_max_over_k = p_max_over_k;
  cert.n_ev = n_ev;
  cert.k_samples = k_samples;

  cert.premise = check_support_condition(spec, 2.0 * alpha);
  cert.premise_ok = cert.premise.pass || spec.is_zero();
  if (!cert.premise_ok)
    throw PremiseError(
        "certify_invisibility: transverse spectrum is not one-sided above "
        "2 alpha");

  double quad_estimate = 0.0;
  for (double k : k_samples) {
    if (!(k > 0.0) || k > alpha)
      throw ConfigError("certify_invisibility: k samples must lie in (0, alpha]");
    const MomentumGrid grid = build_grid(k, n_osc, p_max_over_k * k, n_ev);
    const MomentumGrid fine =
        build_grid(k, 2 * n_osc, p_max_over_k * k, n_ev);
    const BlockOperator m = fundamental_tm(spec, grid, opts);
    const BlockOperator mf = fundamental_tm(spec, fine, opts);
    const BlockOperator id =
        BlockOperator::identity(grid.n_osc(), grid.n_osc(), k, true);
    const BlockOperator idf =
        BlockOperator::identity(fine.n_osc(), fine.n_osc(), k, true);
    const double res = (m - id).max_abs();
    const double resf = (mf - idf).max_abs();
    cert.m_residuals.push_back(res);
    cert.worst_m_residual = std::max(cert.worst_m_residual, res);
    quad_estimate = std::max(quad_estimate, std::abs(res - resf));

    for (double th0 : theta0_samples) {
      const double p0 = k * std::sin(th0);
      const FundamentalSolve fs = fundamental_with_delta(spec, grid, p0, opts);
      const bool right = std::cos(th0) < 0.0;
      const WaveCoefficients wc =
          solve_incident(fs, th0, right ? Side::Right : Side::Left);
      const AmplitudeTable tab = amplitude(wc, 32);
      for (const auto& s : tab.samples)
        cert.worst_f = std::max(cert.worst_f, std::abs(s.f));
    }
  }
  cert.tol = std::max(10.0 * quad_estimate, 1e-12);
  const double scale = std::max(spec.amplitude_scale(), 1e-300);
  cert.certified = cert.worst_m_residual <= cert.tol &&
                   cert.worst_f <= cert.tol * scale;
  return cert;
}

std::string certificate_to_json(const InvisibilityCertificate& cert) {
  std::ostringstream os;
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "{\n";
  os << "  \"premise\": {\"pass\": " << (cert.premise.pass ? "true" : "false")
     << ", \"max_abs\": " << num(cert.premise.max_abs)
     << ", \"scale\": " << num(cert.premise.scale)
     << ", \"beta\": " << num(cert.premise.beta) << "},\n";
  os << "  \"alpha\": " << num(cert.alpha) << ",\n";
  os << "  \"tol\": " << num(cert.tol) << ",\n";
  os << "  \"k_samples\": [";
  for (size_t i = 0; i < cert.k_samples.size(); ++i)
    os << (i ? ", " : "") << num(cert.k_samples[i]);
  os << "],\n  \"m_residuals\": [";
  for (size_t i = 0; i < cert.m_residuals.size(); ++i)
    os << (i ? ", " : "") << num(cert.m_residuals[i]);
  os << "],\n";
  os << "  \"worst_m_residual\": " << num(cert.worst_m_residual) << ",\n";
  os << "  \"worst_f\": " << num(cert.worst_f) << ",\n";
  os << "  \"grid\": {\"n_osc\": " << cert.n_osc
     << ", \"p_max_over_k\": " << num(cert.p_max_over_k)
     << ", \"n_ev\": " << cert.n_ev << "},\n";
  os << "  \"certified\": " << (cert.certified ? "true" : "false") << "\n";
  os << "}\n";
  return os.str();
}

SupportShiftReport verify_support_shift(const PotentialSpec& spec, double beta,
                                        double gamma, int n_iter,
                                        const MomentumGrid& grid,
                                        double alpha, int n_x_samples,
                                        double tol) {
  SupportShiftReport rep;
  rep.tol = tol;

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  const int n = grid.total();
  VectorXcd g(n);
  for (int i = 0; i < n; ++i)
    g[i] = grid.node(i) > gamma ? Complex(uni(rng), uni(rng)) : 0.0;

  double leak1 = 0.0;
  std::vector<double> leak_n(std::max(0, n_iter), 0.0);
  for (int s = 0; s < n_x_samples; ++s) {
    const double x = spec.a_minus() +
                     (spec.a_plus() - spec.a_minus()) * (s + 0.5) / n_x_samples;
    const MatrixXcd v = interaction_operator(spec, x, grid);
    const VectorXcd once = v * g;
    const double scale = std::max(once.cwiseAbs().maxCoeff(), 1e-300);
    for (int i = 0; i < n; ++i)
      if (grid.node(i) <= beta + gamma)
        leak1 = std::max(leak1, std::abs(once[i]) / scale);

    // iterate from the oscillating sector: after n actions the image
    // vanishes below n beta - alpha
    VectorXcd phi(n);
    for (int i = 0; i < n; ++i)
      phi[i] = grid.is_osc(i) ? Complex(uni(rng), uni(rng)) : 0.0;
    for (int it = 1; it <= n_iter; ++it) {
      phi = v * phi;
      const double sc = std::max(phi.cwiseAbs().maxCoeff(), 1e-300);
      const double thresh = it * beta - alpha;
      double leak = 0.0;
      for (int i = 0; i < n; ++i)
        if (grid.node(i) <= thresh) leak = std::max(leak, std::abs(phi[i]));
      leak_n[it - 1] = std::max(leak_n[it - 1], leak / sc);
    }
  }
  rep.leakage_1 = leak1;
  rep.leakage_n = leak_n;
  rep.pass = leak1 <= tol;
  for (double l : leak_n) rep.pass = rep.pass && l <= tol;
  return rep;
}

BornExactnessReport born_exactness_report(const PotentialSpec& spec, double k,
                                          double theta0, int n_theta,
                                          const MomentumGrid& grid,
                                          const EngineOptions& opts) {
  BornExactnessReport rep;
  const double p0 = k * std::sin(theta0);
  const FundamentalSolve fs = fundamental_with_delta(spec, grid, p0, opts);
  const bool right = std::cos(theta0) < 0.0;
  const WaveCoefficients wc =
      solve_incident(fs, theta0, right ? Side::Right : Side::Left);
  const AmplitudeTable tab = amplitude(wc, n_theta);

  double max_f = 0.0, max_diff = 0.0;
  for (const auto& s : tab.samples) {
    const Complex fb = born_amplitude_2d(spec, k, theta0, s.theta);
    rep.thetas.push_back(s.theta);
    rep.f_engine.push_back(s.f);
    rep.f_born.push_back(fb);
    max_f = std::max(max_f, std::abs(fb));
    max_diff = std::max(max_diff, std::abs(s.f - fb));
  }
  rep.max_rel_diff = max_diff / std::max(max_f, 1e-300);

  // centered blocks annihilate each other on any oscillating function
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const int no = grid.n_osc();
  VectorXcd phi(no);
  for (int i = 0; i < no; ++i) phi[i] = Complex(uni(rng), uni(rng));
  const double phi_norm = phi.cwiseAbs().maxCoeff();
  MatrixXcd centered[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      centered[i][j] = fs.M.b[i][j];
      if (i == j) centered[i][j] -= MatrixXcd::Identity(no, no);
    }
  double worst = 0.0;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          const VectorXcd r = centered[i1][j1] * (centered[i2][j2] * phi);
          worst = std::max(worst, r.cwiseAbs().maxCoeff());
        }
  rep.nilpotency_residual = worst / phi_norm;

  // solved smooth part against the closed form -2 pi varpi0 K21 delta
  // (left incidence)
  if (!right) {
    const Complex c0 = 2.0 * std::numbers::pi * fs.varpi0;
    const VectorXcd closed = -c0 * fs.delta_cols.col(0).tail(no);
    rep.closed_form_b_diff =
        (wc.b_minus.values.head(no) - closed).cwiseAbs().maxCoeff();
  }
  return rep;
}

}  // namespace tmscatter
