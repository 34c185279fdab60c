#include "tmscatter/threed.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "tmscatter/quadrature.hpp"
#include "tmscatter/scatter2d.hpp"

namespace tmscatter {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kFourPiSq = 4.0 * kPi * kPi;

double bump(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}
}  // namespace

PotentialSpec3 PotentialSpec3::zero() { return PotentialSpec3{}; }

PotentialSpec3 PotentialSpec3::point_delta(Complex z, double z0) {
  PotentialSpec3 s;
  s.kind_ = Kind::DeltaPlane;
  s.z0_ = z0;
  s.z_minus_ = s.z_plus_ = z0;
  s.ghat_ = [z](double, double) { return z; };
  s.coupling_ = z;
  s.scale_ = std::abs(z);
  return s;
}

PotentialSpec3 PotentialSpec3::delta_plane(
    std::function<Complex(double, double)> ghat, double z0, Complex coupling,
    double scale) {
  PotentialSpec3 s;
  s.kind_ = Kind::DeltaPlane;
  s.z0_ = z0;
  s.z_minus_ = s.z_plus_ = z0;
  s.ghat_ = std::move(ghat);
  s.coupling_ = coupling;
  s.scale_ = scale;
  return s;
}

PotentialSpec3 PotentialSpec3::gaussian(Complex z, double sx, double sy,
                                        double sz, double n_sigma) {
  PotentialSpec3 s;
  s.kind_ = Kind::Smooth;
  s.z_minus_ = -n_sigma * sz;
  s.z_plus_ = n_sigma * sz;
  s.coupling_ = z;
  s.scale_ = std::abs(z);
  const double pref = 2.0 * kPi * sx * sy;
  s.ghat_ = [z, sx, sy, pref](double kx, double ky) {
    return z * pref * std::exp(-0.5 * (sx * sx * kx * kx + sy * sy * ky * ky));
  };
  s.chi_ = [sz](double zz) {
    return Complex(std::exp(-0.5 * zz * zz / (sz * sz)), 0.0);
  };
  return s;
}

PotentialSpec3 PotentialSpec3::band_limited_x(Complex z, double beta_lo,
                                              double beta_hi, double sigma_y,
                                              double z_minus, double z_plus) {
  if (!(beta_lo < beta_hi))
    throw ConfigError("band_limited_x: requires beta_lo < beta_hi");
  PotentialSpec3 s;
  s.kind_ = Kind::Smooth;
  s.z_minus_ = z_minus;
  s.z_plus_ = z_plus;
  s.beta_lo_ = beta_lo;
  s.coupling_ = z;
  s.scale_ = std::abs(z);
  const double kc = 0.5 * (beta_hi + beta_lo), kh = 0.5 * (beta_hi - beta_lo);
  s.ghat_ = [z, kc, kh, sigma_y](double kx, double ky) {
    const double b = bump((kx - kc) / kh);
    if (b == 0.0) return Complex{0.0, 0.0};
    return z * b * std::exp(-0.5 * sigma_y * sigma_y * ky * ky);
  };
  const double zc = 0.5 * (z_plus + z_minus), zh = 0.5 * (z_plus - z_minus);
  s.chi_ = [zc, zh](double zz) { return Complex(bump((zz - zc) / zh), 0.0); };
  return s;
}

PotentialSpec3 PotentialSpec3::rotated(double phi) const {
  PotentialSpec3 s = *this;
  if (!ghat_) return s;
  const double c = std::cos(phi), sn = std::sin(phi);
  s.ghat_ = [g = ghat_, c, sn](double kx, double ky) {
    return g(c * kx + sn * ky, -sn * kx + c * ky);
  };
  return s;
}

Complex PotentialSpec3::fourier_xy(double z, double Kx, double Ky) const {
  if (kind_ != Kind::Smooth) {
    if (kind_ == Kind::Zero) return {0.0, 0.0};
    throw ConfigError("fourier_xy: delta-plane z-dependence is symbolic");
  }
  if (z < z_minus_ || z > z_plus_) return {0.0, 0.0};
  return chi_(z) * ghat_(Kx, Ky);
}

Complex PotentialSpec3::ghat(double Kx, double Ky) const {
  if (kind_ != Kind::DeltaPlane)
    throw ConfigError("ghat: spec is not a delta plane");
  return ghat_(Kx, Ky);
}

Complex PotentialSpec3::triple_transform(double Kx, double Ky, double Kz,
                                         int n_quad) const {
  if (kind_ == Kind::Zero) return {0.0, 0.0};
  if (kind_ == Kind::DeltaPlane)
    return ghat_(Kx, Ky) * std::exp(-I_UNIT * (Kz * z0_));
  const GaussRule g = gauss_legendre_on(n_quad, z_minus_, z_plus_);
  Complex acc{0.0, 0.0};
  for (int i = 0; i < n_quad; ++i)
    acc += g.w[i] * chi_(g.x[i]) * ghat_(Kx, Ky) *
           std::exp(-I_UNIT * (Kz * g.x[i]));
  return acc;
}

namespace {

SpectralProblem make_problem_3d(const PotentialSpec3& spec,
                                const DiskGrid& grid) {
  SpectralProblem p;
  p.varpi = grid.varpi_vals;
  p.weights =
      Eigen::Map<const VectorXd>(grid.weights.data(), grid.weights.size());
  p.n_osc = grid.n_osc();
  p.k = grid.k;
  p.a_minus = spec.z_minus();
  p.a_plus = spec.z_plus();
  p.is_delta = spec.is_delta_plane();
  if (p.is_delta) {
    p.x0 = spec.z0();
    p.g_matrix = [&spec, &grid]() {
      const int n = grid.total();
      MatrixXcd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          m(i, j) = spec.ghat(grid.px[i] - grid.px[j],
                              grid.py[i] - grid.py[j]) *
                    (grid.weights[j] / kFourPiSq);
      return m;
    };
  } else {
    p.v_matrix = [&spec, &grid](double z) {
      const int n = grid.total();
      MatrixXcd m = MatrixXcd::Zero(n, n);
      if (spec.is_zero() || z < spec.z_minus() || z > spec.z_plus()) return m;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Complex v = spec.fourier_xy(z, grid.px[i] - grid.px[j],
                                            grid.py[i] - grid.py[j]);
          if (v != Complex{0.0, 0.0}) m(i, j) = v * (grid.weights[j] / kFourPiSq);
        }
      return m;
    };
  }
  return p;
}

void bind_delta_column_3d(SpectralProblem& p, const PotentialSpec3& spec,
                          const DiskGrid& grid, double p0x, double p0y) {
  p.varpi_p0 = varpi(std::hypot(p0x, p0y), grid.k);
  if (spec.is_delta_plane()) {
    p.g_column = [&spec, &grid, p0x, p0y]() {
      VectorXcd c(grid.total());
      for (int i = 0; i < grid.total(); ++i)
        c[i] = spec.ghat(grid.px[i] - p0x, grid.py[i] - p0y) / kFourPiSq;
      return c;
    };
  } else {
    p.v_column = [&spec, &grid, p0x, p0y](double z) {
      VectorXcd c(grid.total());
      for (int i = 0; i < grid.total(); ++i)
        c[i] = spec.fourier_xy(z, grid.px[i] - p0x, grid.py[i] - p0y) /
               kFourPiSq;
      return c;
    };
  }
}

BlockOperator osc_block_from(const MatrixXcd& u, const DiskGrid& grid) {
  return BlockOperator::from_assembled(u, grid.n_osc(), grid.k, false)
      .osc_restriction();
}

}  // namespace

BlockOperator fundamental_tm_3d(const PotentialSpec3& spec,
                                const DiskGrid& grid,
                                const EngineOptions& opts) {
  if (spec.is_zero())
    return BlockOperator::identity(grid.n_osc(), grid.n_osc(), grid.k, true);
  const SpectralProblem p = make_problem_3d(spec, grid);
  const CoreBuild built = core_build(p, opts, false);
  return osc_block_from(built.u, grid);
}

BlockOperator truncated_dyson_3d(const PotentialSpec3& spec,
                                 const DiskGrid& grid, int n_max, int n_quad) {
  if (spec.is_zero())
    return BlockOperator::identity(grid.n_osc(), grid.n_osc(), grid.k, true);
  const SpectralProblem p = make_problem_3d(spec, grid);
  const MatrixXcd t = core_truncated_dyson(p, n_max, n_quad);
  const int no = grid.n_osc();
  BlockOperator out;
  out.n = no;
  out.n_osc = no;
  out.k = grid.k;
  out.osc_only = true;
  out.b[0][0] = t.topLeftCorner(no, no);
  out.b[0][1] = t.topRightCorner(no, no);
  out.b[1][0] = t.bottomLeftCorner(no, no);
  out.b[1][1] = t.bottomRightCorner(no, no);
  return out;
}

WaveCoefficients3 solve_3d(const PotentialSpec3& spec, const DiskGrid& grid,
                           double theta0, double phi0, Side3 side,
                           const EngineOptions& opts, bool use_dyson1) {
  const double k = grid.k;
  const double s0 = std::sin(theta0);
  if (std::abs(s0) >= 1.0)
    throw ConfigError("solve_3d: grazing incidence |sin theta0| = 1");
  const double p0x = k * s0 * std::cos(phi0);
  const double p0y = k * s0 * std::sin(phi0);

  SpectralProblem p = make_problem_3d(spec, grid);
  bind_delta_column_3d(p, spec, grid, p0x, p0y);

  const int no = grid.n_osc();
  MatrixXcd m22, m12;
  VectorXcd d_up, d_lo;
  if (use_dyson1 && !spec.is_delta_plane() && !spec.is_zero()) {
    // first-order series for the matrix part; the delta columns come from
    // direct quadrature of the driving term
    const MatrixXcd t = core_truncated_dyson(p, 1, 48);
    m12 = t.topRightCorner(no, no);
    m22 = t.bottomRightCorner(no, no);
    const int col = side == Side3::Right ? 1 : 0;
    const GaussRule gz =
        gauss_legendre_on(96, spec.z_minus(), spec.z_plus());
    VectorXcd up = VectorXcd::Zero(no), lo = VectorXcd::Zero(no);
    const Complex w0 = p.varpi_p0;
    const double sgn_l = col == 0 ? +1.0 : -1.0;
    for (int q = 0; q < 96; ++q) {
      const double z = gz.x[q];
      VectorXcd vc = p.v_column(z);
      const Complex ph0 = std::exp(I_UNIT * (sgn_l * w0.real() * z)) / w0;
      for (int i = 0; i < no; ++i) {
        const Complex w = grid.varpi_vals[i];
        const Complex amp = (-I_UNIT) * gz.w[q] * 0.5 * vc[i] * ph0;
        up[i] += amp * std::exp(-I_UNIT * (w * z));
        lo[i] -= amp * std::exp(I_UNIT * (w * z));
      }
    }
    d_up = up;
    d_lo = lo;
  } else {
    const CoreBuild built = core_build(p, opts, true);
    const BlockOperator m = osc_block_from(built.u, grid);
    m12 = m.b[0][1];
    m22 = m.b[1][1];
    const int col = side == Side3::Right ? 1 : 0;
    d_up = built.delta_resp.col(col).head(no);
    d_lo = built.delta_resp.col(col).segment(grid.total(), no);
  }

  const Complex w0 = varpi(std::hypot(p0x, p0y), k);
  const Complex c0 = kFourPiSq * w0;

  const VectorXcd rhs = -c0 * d_lo;
  Eigen::PartialPivLU<MatrixXcd> lu(m22);
  const VectorXcd b = lu.solve(rhs);

  WaveCoefficients3 wc;
  wc.k = k;
  wc.theta0 = theta0;
  wc.phi0 = phi0;
  wc.p0x = p0x;
  wc.p0y = p0y;
  wc.side = side;
  const double resid = (m22 * b - rhs).norm();
  wc.near_singular =
      (rhs.norm() > 0.0 && resid > 1e-8 * rhs.norm()) || !b.allFinite();
  Eigen::BDCSVD<MatrixXcd> svd(m22);
  wc.condition = svd.singularValues().maxCoeff() /
                 std::max(svd.singularValues().minCoeff(), 1e-300);
  wc.b_minus = b;
  wc.a_plus = c0 * d_up + m12 * b;
  return wc;
}

namespace {

// trigonometric barycentric interpolation on an even equispaced circle
Complex trig_interp(const std::vector<double>& phis, const VectorXcd& vals,
                    double phi) {
  const int n = static_cast<int>(phis.size());
  Complex num{0.0, 0.0};
  double den = 0.0;
  for (int m = 0; m < n; ++m) {
    double d = 0.5 * (phi - phis[m]);
    if (std::abs(std::sin(d)) < 1e-15) return vals[m];
    const double w = (m % 2 == 0 ? 1.0 : -1.0) / std::tan(d);
    num += w * vals[m];
    den += w;
  }
  return num / den;
}

}  // namespace

std::vector<AmplitudeSample3> amplitude_3d(const WaveCoefficients3& wc,
                                           const DiskGrid& grid,
                                           int n_theta, int n_phi,
                                           double margin) {
  const double k = grid.k;
  const int nr = grid.n_radial, na = grid.n_azimuthal;

  std::vector<double> tnodes(nr);
  for (int j = 0; j < nr; ++j)
    tnodes[j] = std::asin(std::min(1.0, grid.ring_radii[j] / k));
  const VectorXd bw = barycentric_weights(tnodes);

  auto interp = [&](const VectorXcd& vals, double theta_polar, double phi) {
    VectorXcd ring_vals(nr);
    for (int j = 0; j < nr; ++j)
      ring_vals[j] =
          trig_interp(grid.azimuth_nodes, vals.segment(j * na, na), phi);
    return barycentric_eval(tnodes, bw, ring_vals, theta_polar);
  };

  std::vector<AmplitudeSample3> out;
  const Complex pref = -I_UNIT / (2.0 * kPi);
  const int nf = n_theta / 2, nb = n_theta - nf;
  auto sample = [&](double theta, double phi, bool forward) {
    const double t_polar = forward ? theta : kPi - theta;  // |p| = k sin
    const Complex v =
        interp(forward ? wc.a_plus : wc.b_minus, t_polar, phi);
    out.push_back({theta, phi, pref * v});
  };
  for (int ip = 0; ip < n_phi; ++ip) {
    const double phi = 2.0 * kPi * (ip + 0.5) / n_phi;
    for (int i = 0; i < nf; ++i) {
      const double lo = 0.0, hi = kPi / 2 - margin;
      sample(lo + (i + 0.5) * (hi - lo) / nf, phi, true);
    }
    for (int i = 0; i < nb; ++i) {
      const double lo = kPi / 2 + margin, hi = kPi;
      sample(lo + (i + 0.5) * (hi - lo) / nb, phi, false);
    }
  }
  return out;
}

Complex born_amplitude_3d(const PotentialSpec3& spec, double k, double theta0,
                          double phi0, double theta, double phi) {
  const double kx = k * (std::sin(theta) * std::cos(phi) -
                         std::sin(theta0) * std::cos(phi0));
  const double ky = k * (std::sin(theta) * std::sin(phi) -
                         std::sin(theta0) * std::sin(phi0));
  const double kz = k * (std::cos(theta) - std::cos(theta0));
  return -spec.triple_transform(kx, ky, kz) / (4.0 * kPi);
}

Certificate3 certify_invisibility_3d(const PotentialSpec3& spec, double alpha,
                                     const std::vector<double>& k_samples,
                                     const DiskGridPolicyParams& grid_params,
                                     const EngineOptions& opts) {
  Certificate3 cert;
  cert.alpha = alpha;

  // premise: transverse spectrum vanishes for Kx <= 2 alpha
  double worst = 0.0;
  const double z_mid = 0.5 * (spec.z_minus() + spec.z_plus());
  for (int i = 0; i < 64; ++i) {
    const double kx = -16.0 * alpha + (2.0 * alpha + 16.0 * alpha) * (i + 0.5) / 64;
    for (int j = 0; j < 16; ++j) {
      const double ky = -8.0 * alpha + 16.0 * alpha * (j + 0.5) / 16;
      const Complex v = spec.is_delta_plane()
                            ? spec.ghat(kx, ky)
                            : spec.fourier_xy(z_mid, kx, ky);
      worst = std::max(worst, std::abs(v));
    }
  }
  cert.premise_max_abs = worst;
  cert.premise_ok =
      worst <= 1e-12 * std::max(spec.amplitude_scale(), 1e-300) ||
      spec.is_zero();
  if (!cert.premise_ok)
    throw PremiseError(
        "certify_invisibility_3d: transverse spectrum is not one-sided above "
        "2 alpha along x");

  cert.tol = 1e-10;
  for (double k : k_samples) {
    if (!(k > 0.0) || k > alpha)
      throw ConfigError("certify_invisibility_3d: k must lie in (0, alpha]");
    const DiskGrid grid =
        build_disk_grid(k, grid_params.n_radial, grid_params.n_azimuthal,
                        grid_params.p_max_over_k * k, grid_params.n_ev_radial);
    const BlockOperator m = fundamental_tm_3d(spec, grid, opts);
    const BlockOperator id =
        BlockOperator::identity(grid.n_osc(), grid.n_osc(), k, true);
    cert.worst_m_residual =
        std::max(cert.worst_m_residual, (m - id).max_abs());

    const WaveCoefficients3 wcr =
        solve_3d(spec, grid, 0.3, 0.4, Side3::Left, opts);
    for (const auto& s : amplitude_3d(wcr, grid, 8, 8))
      cert.worst_f = std::max(cert.worst_f, std::abs(s.f));
  }
  const double scale = std::max(spec.amplitude_scale(), 1e-300);
  cert.certified = cert.worst_m_residual <= cert.tol &&
                   cert.worst_f <= cert.tol * scale;
  return cert;
}

BornReport3 born_exactness_3d(const PotentialSpec3& spec, double k,
                              double theta0, double phi0,
                              const DiskGridPolicyParams& grid_params,
                              const EngineOptions& opts) {
  BornReport3 rep;
  const DiskGrid grid =
      build_disk_grid(k, grid_params.n_radial, grid_params.n_azimuthal,
                      grid_params.p_max_over_k * k, grid_params.n_ev_radial);

  const BlockOperator m = fundamental_tm_3d(spec, grid, opts);
  const BlockOperator t1 = truncated_dyson_3d(spec, grid, 1);
  rep.dyson1_residual = (m - t1).max_abs();

  const Side3 side = std::cos(theta0) < 0.0 ? Side3::Right : Side3::Left;
  const WaveCoefficients3 wc = solve_3d(spec, grid, theta0, phi0, side, opts);
  double max_f = 0.0, max_diff = 0.0;
  for (const auto& s : amplitude_3d(wc, grid, 8, 8)) {
    const Complex fb =
        born_amplitude_3d(spec, k, theta0, phi0, s.theta, s.phi);
    max_f = std::max(max_f, std::abs(fb));
    max_diff = std::max(max_diff, std::abs(s.f - fb));
  }
  rep.max_rel_diff = max_diff / std::max(max_f, 1e-300);
  return rep;
}

}  // namespace tmscatter
