#include "tmscatter/transfer.hpp"

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "tmscatter/hamiltonian.hpp"
#include "tmscatter/quadrature.hpp"

namespace tmscatter {

namespace {

constexpr double kSigma[2] = {+1.0, -1.0};
constexpr double kKK[2][2] = {{1.0, 1.0}, {-1.0, -1.0}};

void mask_projected(const SpectralProblem& prob, MatrixXcd& v) {
  const int n = static_cast<int>(prob.varpi.size());
  v.bottomRows(n - prob.n_osc).setZero();
  v.rightCols(n - prob.n_osc).setZero();
}

void mask_projected_col(const SpectralProblem& prob, VectorXcd& c) {
  const int n = static_cast<int>(prob.varpi.size());
  c.tail(n - prob.n_osc).setZero();
}

// Effective Hamiltonian in the physical frame: unimodular phase factors
// e^{+-i varpi_r x} around V(x), columns scaled by 1/varpi, plus the
// diagonal free term -i varpi_i s3.
MatrixXcd assemble_h(const SpectralProblem& prob, double x) {
  const int n = static_cast<int>(prob.varpi.size());
  MatrixXcd h = MatrixXcd::Zero(2 * n, 2 * n);
  MatrixXcd v = prob.v_matrix(x);
  if (prob.project_potential) mask_projected(prob, v);
  if (v.cwiseAbs().maxCoeff() > 0.0) {
    VectorXcd row[2], col[2];
    for (int s = 0; s < 2; ++s) {
      row[s].resize(n);
      col[s].resize(n);
      for (int i = 0; i < n; ++i) {
        const double wr = prob.varpi[i].real();
        row[s][i] = std::exp(-I_UNIT * (kSigma[s] * wr * x));
        col[s][i] = std::exp(I_UNIT * (kSigma[s] * wr * x)) / prob.varpi[i];
      }
    }
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        h.block(j * n, l * n, n, n) =
            (0.5 * kKK[j][l]) * (row[j].asDiagonal() * v * col[l].asDiagonal());
  }
  for (int i = 0; i < n; ++i) {
    const Complex f = -I_UNIT * prob.varpi[i].imag();
    h(i, i) += f;
    h(n + i, n + i) -= f;
  }
  return h;
}

// Action of the Hamiltonian's potential part on the symbolic incident
// delta: the continuum kernel column at p0, weight 1.
MatrixXcd assemble_driving(const SpectralProblem& prob, double x) {
  const int n = static_cast<int>(prob.varpi.size());
  MatrixXcd c = MatrixXcd::Zero(2 * n, 2);
  VectorXcd vcol = prob.v_column(x);
  if (prob.project_potential) mask_projected_col(prob, vcol);
  const double w0 = prob.varpi_p0.real();
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) {
      const Complex ph0 = std::exp(I_UNIT * (kSigma[l] * w0 * x)) / w0;
      for (int i = 0; i < n; ++i) {
        const double wr = prob.varpi[i].real();
        c(j * n + i, l) += (0.5 * kKK[j][l]) * ph0 * vcol[i] *
                           std::exp(-I_UNIT * (kSigma[j] * wr * x));
      }
    }
  return c;
}

void check_finite(const MatrixXcd& m, const char* what) {
  if (!m.allFinite())
    throw NumericalError(std::string(what) +
                         ": non-finite entries; reduce the step size or "
                         "p_max, or slice the support");
}

}  // namespace

VectorXcd free_factor(const VectorXcd& varpi, double dx) {
  const int n = static_cast<int>(varpi.size());
  VectorXcd f(2 * n);
  for (int i = 0; i < n; ++i) {
    const double e = varpi[i].imag() * dx;
    if (std::abs(e) > kPhaseExponentGuard)
      throw OverflowError(
          "free_factor: evanescent exponent exceeds guard; reduce p_max or "
          "the free stretch");
    f[i] = std::exp(-e);
    f[n + i] = std::exp(e);
  }
  return f;
}

MatrixXcd core_integrate(const SpectralProblem& prob, double x0, double x1,
                         int steps, Scheme scheme, MatrixXcd* delta_resp) {
  const int n = static_cast<int>(prob.varpi.size());
  const int nn = 2 * n;
  MatrixXcd u = MatrixXcd::Identity(nn, nn);
  MatrixXcd d = MatrixXcd::Zero(nn, 2);
  if (x1 <= x0) {
    if (delta_resp) *delta_resp = d;
    return u;
  }
  const bool driven = delta_resp != nullptr;
  steps = std::max(1, steps);
  const double h = (x1 - x0) / steps;

  if (scheme == Scheme::MidpointMagnus) {
    // exponential of the frozen midpoint generator; exact on free stretches
    for (int s = 0; s < steps; ++s) {
      const double xm = x0 + (s + 0.5) * h;
      if (!driven) {
        const MatrixXcd e = ((-I_UNIT * h) * assemble_h(prob, xm)).exp();
        u = e * u;
      } else {
        MatrixXcd g = MatrixXcd::Zero(nn + 2, nn + 2);
        g.topLeftCorner(nn, nn) = (-I_UNIT * h) * assemble_h(prob, xm);
        g.block(0, nn, nn, 2) = (-I_UNIT * h) * assemble_driving(prob, xm);
        const MatrixXcd e = g.exp();
        u = e.topLeftCorner(nn, nn) * u;
        d = e.topLeftCorner(nn, nn) * d + e.block(0, nn, nn, 2);
      }
      check_finite(u, "core_integrate");
    }
  } else {
    for (int s = 0; s < steps; ++s) {
      const double xa = x0 + s * h;
      const MatrixXcd ha = assemble_h(prob, xa);
      const MatrixXcd hm = assemble_h(prob, xa + 0.5 * h);
      const MatrixXcd hb = assemble_h(prob, xa + h);
      const MatrixXcd k1 = -I_UNIT * (ha * u);
      const MatrixXcd k2 = -I_UNIT * (hm * (u + (0.5 * h) * k1));
      const MatrixXcd k3 = -I_UNIT * (hm * (u + (0.5 * h) * k2));
      const MatrixXcd k4 = -I_UNIT * (hb * (u + h * k3));
      if (driven) {
        const MatrixXcd ca = assemble_driving(prob, xa);
        const MatrixXcd cm = assemble_driving(prob, xa + 0.5 * h);
        const MatrixXcd cb = assemble_driving(prob, xa + h);
        const MatrixXcd q1 = -I_UNIT * (ha * d + ca);
        const MatrixXcd q2 = -I_UNIT * (hm * (d + (0.5 * h) * q1) + cm);
        const MatrixXcd q3 = -I_UNIT * (hm * (d + (0.5 * h) * q2) + cm);
        const MatrixXcd q4 = -I_UNIT * (hb * (d + h * q3) + cb);
        d += (h / 6.0) * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
      }
      u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      check_finite(u, "core_integrate");
    }
  }
  if (delta_resp) *delta_resp = d;
  return u;
}

CoreBuild core_build(const SpectralProblem& prob, const EngineOptions& opts,
                     bool with_delta) {
  const int n = static_cast<int>(prob.varpi.size());
  CoreBuild out;
  out.has_delta = with_delta;

  if (prob.is_delta) {
    // the series in the kick terminates after its first term
    MatrixXcd g = prob.g_matrix();
    if (prob.project_potential || opts.project_potential)
      mask_projected(prob, g);
    VectorXcd row[2], col[2];
    for (int s = 0; s < 2; ++s) {
      row[s].resize(n);
      col[s].resize(n);
      for (int i = 0; i < n; ++i) {
        const double wr = prob.varpi[i].real();
        row[s][i] = std::exp(-I_UNIT * (kSigma[s] * wr * prob.x0));
        col[s][i] =
            std::exp(I_UNIT * (kSigma[s] * wr * prob.x0)) / prob.varpi[i];
      }
    }
    out.u = MatrixXcd::Identity(2 * n, 2 * n);
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        out.u.block(j * n, l * n, n, n) -=
            (I_UNIT * 0.5 * kKK[j][l]) *
            (row[j].asDiagonal() * g * col[l].asDiagonal());
    out.delta_resp = MatrixXcd::Zero(2 * n, 2);
    if (with_delta) {
      VectorXcd gcol = prob.g_column();
      if (prob.project_potential || opts.project_potential)
        mask_projected_col(prob, gcol);
      const double w0 = prob.varpi_p0.real();
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) {
          const Complex ph0 =
              std::exp(I_UNIT * (kSigma[l] * w0 * prob.x0)) / w0;
          for (int i = 0; i < n; ++i)
            out.delta_resp(j * n + i, l) -=
                (I_UNIT * 0.5 * kKK[j][l]) * row[j][i] * gcol[i] * ph0;
        }
    }
    return out;
  }

  SpectralProblem p = prob;
  p.project_potential = prob.project_potential || opts.project_potential;
  out.u = core_integrate(p, prob.a_minus, prob.a_plus, opts.steps,
                         opts.scheme, with_delta ? &out.delta_resp : nullptr);
  if (!with_delta) out.delta_resp = MatrixXcd::Zero(2 * n, 2);
  return out;
}

MatrixXcd core_truncated_dyson(const SpectralProblem& prob, int n_max,
                               int n_quad) {
  const int n = static_cast<int>(prob.varpi.size());
  const int nn = 2 * n;
  const double vi_max = prob.varpi.imag().maxCoeff();
  const double reach = std::max(std::abs(prob.a_minus), std::abs(prob.a_plus));
  if (vi_max * reach > kPhaseExponentGuard)
    throw OverflowError("core_truncated_dyson: phase exponent exceeds guard");

  // interaction-picture Hamiltonian: full complex-varpi phases, no free term
  auto h_int = [&](double x) {
    MatrixXcd h = MatrixXcd::Zero(nn, nn);
    MatrixXcd v = prob.v_matrix(x);
    if (prob.project_potential) mask_projected(prob, v);
    VectorXcd row[2], col[2];
    for (int s = 0; s < 2; ++s) {
      row[s].resize(n);
      col[s].resize(n);
      for (int i = 0; i < n; ++i) {
        const Complex w = prob.varpi[i];
        row[s][i] = std::exp(-I_UNIT * (kSigma[s] * w * x));
        col[s][i] = std::exp(I_UNIT * (kSigma[s] * w * x)) / w;
      }
    }
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        h.block(j * n, l * n, n, n) =
            (0.5 * kKK[j][l]) * (row[j].asDiagonal() * v * col[l].asDiagonal());
    return h;
  };

  MatrixXcd total = MatrixXcd::Identity(nn, nn);

  if (prob.is_delta) {
    // single kick: all orders above the first vanish identically
    MatrixXcd g = prob.g_matrix();
    if (prob.project_potential) mask_projected(prob, g);
    VectorXcd row[2], col[2];
    for (int s = 0; s < 2; ++s) {
      row[s].resize(n);
      col[s].resize(n);
      for (int i = 0; i < n; ++i) {
        const Complex w = prob.varpi[i];
        row[s][i] = std::exp(-I_UNIT * (kSigma[s] * w * prob.x0));
        col[s][i] = std::exp(I_UNIT * (kSigma[s] * w * prob.x0)) / w;
      }
    }
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        total.block(j * n, l * n, n, n) -=
            (I_UNIT * 0.5 * kKK[j][l]) *
            (row[j].asDiagonal() * g * col[l].asDiagonal());
  } else {
    // F_m(X) = int_{a-}^{X} H(s) F_{m-1}(s) ds on nested Gauss rules
    std::function<MatrixXcd(double, int)> nested = [&](double x_hi,
                                                       int depth) {
      MatrixXcd acc = MatrixXcd::Zero(nn, nn);
      if (x_hi <= prob.a_minus) return acc;
      const GaussRule g = gauss_legendre_on(n_quad, prob.a_minus, x_hi);
      for (int i = 0; i < n_quad; ++i) {
        MatrixXcd term = h_int(g.x[i]);
        if (depth > 1) term = term * nested(g.x[i], depth - 1);
        acc += g.w[i] * term;
      }
      return acc;
    };
    Complex pref{1.0, 0.0};
    for (int m = 1; m <= n_max; ++m) {
      pref *= -I_UNIT;
      total += pref * nested(prob.a_plus, m);
    }
  }

  // oscillating-sector sandwich
  MatrixXcd out(2 * prob.n_osc, 2 * prob.n_osc);
  out.topLeftCorner(prob.n_osc, prob.n_osc) =
      total.block(0, 0, prob.n_osc, prob.n_osc);
  out.topRightCorner(prob.n_osc, prob.n_osc) =
      total.block(0, n, prob.n_osc, prob.n_osc);
  out.bottomLeftCorner(prob.n_osc, prob.n_osc) =
      total.block(n, 0, prob.n_osc, prob.n_osc);
  out.bottomRightCorner(prob.n_osc, prob.n_osc) =
      total.block(n, n, prob.n_osc, prob.n_osc);
  return out;
}

// ---------------------------------------------------------------------------
// 2D wrappers

namespace {

SpectralProblem make_problem(const PotentialSpec& spec,
                             const MomentumGrid& grid) {
  SpectralProblem p;
  p.varpi = grid.varpi_vals;
  p.weights.resize(grid.total());
  for (int i = 0; i < grid.total(); ++i) p.weights[i] = grid.weight(i);
  p.n_osc = grid.n_osc();
  p.k = grid.k;
  p.a_minus = spec.a_minus();
  p.a_plus = spec.a_plus();
  p.is_delta = spec.is_delta_line();
  if (p.is_delta) {
    p.x0 = spec.delta_x0();
    p.g_matrix = [spec, &grid]() { return g_operator(spec, grid); };
  } else {
    p.v_matrix = [spec, &grid](double x) {
      return interaction_operator(spec, x, grid);
    };
  }
  return p;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void bind_delta_column(SpectralProblem& p, const PotentialSpec& spec,
                       const MomentumGrid& grid, double p0) {
  p.varpi_p0 = varpi(p0, grid.k);
  if (spec.is_delta_line()) {
    p.g_column = [spec, &grid, p0]() {
      VectorXcd c(grid.total());
      for (int i = 0; i < grid.total(); ++i)
        c[i] = spec.tilde_g(grid.node(i) - p0) / kTwoPi;
      return c;
    };
  } else if (spec.is_y_independent()) {
    // the delta(K) kernel cannot scatter the delta off p0; the incident
    // channel feeds only itself, which the identity split already carries
    p.v_column = [spec, &grid, p0](double x) {
      VectorXcd c = VectorXcd::Zero(grid.total());
      // diagonal kernel: contributes only at nodes coinciding with p0
      for (int i = 0; i < grid.total(); ++i)
        if (grid.node(i) == p0) c[i] = spec.v1(x);
      return c;
    };
  } else {
    p.v_column = [spec, &grid, p0](double x) {
      VectorXcd c(grid.total());
      for (int i = 0; i < grid.total(); ++i)
        c[i] = spec.fourier_y(x, grid.node(i) - p0) / kTwoPi;
      return c;
    };
  }
}

BlockOperator to_block(const MatrixXcd& u, const MomentumGrid& grid) {
  return BlockOperator::from_assembled(u, grid.n_osc(), grid.k, false);
}

std::vector<double> slice_edges(const PotentialSpec& spec, int slices) {
  std::vector<double> e;
  const double am = spec.a_minus(), ap = spec.a_plus();
  for (int j = 0; j <= slices; ++j)
    e.push_back(am + (ap - am) * j / slices);
  return e;
}

}  // namespace

BlockOperator evolve(const PotentialSpec& spec, double x0, double x1,
                     const MomentumGrid& grid, int steps, Scheme scheme) {
  if (x0 > x1) throw ConfigError("evolve: requires x0 <= x1");
  if (spec.is_delta_line())
    throw ConfigError("evolve: delta-line specs dispatch to the closed form");
  SpectralProblem p = make_problem(spec, grid);
  const double lo = std::max(x0, spec.a_minus());
  const double hi = std::min(x1, spec.a_plus());
  MatrixXcd u;
  if (spec.is_zero() || lo >= hi) {
    u = MatrixXcd::Identity(2 * grid.total(), 2 * grid.total());
    u = free_factor(p.varpi, x1 - x0).asDiagonal() * u;
  } else {
    u = core_integrate(p, lo, hi, steps, scheme, nullptr);
    if (hi < x1) u = free_factor(p.varpi, x1 - hi).asDiagonal() * u;
    if (x0 < lo) u = u * free_factor(p.varpi, lo - x0).asDiagonal();
  }
  return to_block(u, grid);
}

BlockOperator auxiliary_tm(const PotentialSpec& spec, const MomentumGrid& grid,
                           const EngineOptions& opts) {
  if (spec.is_zero())
    return BlockOperator::identity(grid.total(), grid.n_osc(), grid.k);

  const int slices = std::max(1, opts.slices);
  if (slices > 1 && !spec.is_delta_line()) {
    std::vector<BlockOperator> parts;
    const auto edges = slice_edges(spec, slices);
    const double width = spec.a_plus() - spec.a_minus();
    for (int j = 0; j < slices; ++j) {
      EngineOptions sub = opts;
      sub.slices = 1;
      sub.steps = std::max(
          1, static_cast<int>(std::lround(opts.steps *
                                          (edges[j + 1] - edges[j]) / width)));
      parts.push_back(
          auxiliary_tm(spec.truncated(edges[j], edges[j + 1]), grid, sub));
    }
    return compose(parts);
  }

  SpectralProblem p = make_problem(spec, grid);
  const CoreBuild built = core_build(p, opts, false);
  // interaction-picture frame: conjugate by the free growth at the support
  // edges (identity on oscillating modes)
  VectorXcd left = free_factor(p.varpi, -spec.a_plus());
  VectorXcd right = free_factor(p.varpi, spec.a_minus());
  MatrixXcd u = left.asDiagonal() * built.u * right.asDiagonal();
  return to_block(u, grid);
}

BlockOperator fundamental_tm(const PotentialSpec& spec,
                             const MomentumGrid& grid,
                             const EngineOptions& opts) {
  if (spec.is_zero())
    return BlockOperator::identity(grid.n_osc(), grid.n_osc(), grid.k, true);
  SpectralProblem p = make_problem(spec, grid);
  const CoreBuild built = core_build(p, opts, false);
  return to_block(built.u, grid).osc_restriction();
}

FundamentalSolve fundamental_with_delta(const PotentialSpec& spec,
                                        const MomentumGrid& grid, double p0,
                                        const EngineOptions& opts) {
  if (std::abs(p0) >= grid.k)
    throw ConfigError("fundamental_with_delta: requires |p0| < k");
  FundamentalSolve out;
  out.grid = &grid;
  out.p0 = p0;
  out.varpi0 = varpi(p0, grid.k);
  const int no = grid.n_osc();
  if (spec.is_zero()) {
    out.M = BlockOperator::identity(no, no, grid.k, true);
    out.delta_cols = MatrixXcd::Zero(2 * no, 2);
    return out;
  }
  SpectralProblem p = make_problem(spec, grid);
  bind_delta_column(p, spec, grid, p0);
  const CoreBuild built = core_build(p, opts, true);
  out.M = to_block(built.u, grid).osc_restriction();
  out.delta_cols.resize(2 * no, 2);
  out.delta_cols.topRows(no) = built.delta_resp.topRows(no);
  out.delta_cols.bottomRows(no) =
      built.delta_resp.middleRows(grid.total(), no);
  return out;
}

BlockOperator truncated_dyson(const PotentialSpec& spec,
                              const MomentumGrid& grid, int n_max,
                              int n_quad, bool project_potential) {
  if (n_max < 1) throw ConfigError("truncated_dyson: n_max must be >= 1");
  if (spec.is_zero())
    return BlockOperator::identity(grid.n_osc(), grid.n_osc(), grid.k, true);
  SpectralProblem p = make_problem(spec, grid);
  p.project_potential = project_potential;
  const MatrixXcd t = core_truncated_dyson(p, n_max, n_quad);
  BlockOperator out;
  out.n = grid.n_osc();
  out.n_osc = grid.n_osc();
  out.k = grid.k;
  out.osc_only = true;
  const int no = grid.n_osc();
  out.b[0][0] = t.topLeftCorner(no, no);
  out.b[0][1] = t.topRightCorner(no, no);
  out.b[1][0] = t.bottomLeftCorner(no, no);
  out.b[1][1] = t.bottomRightCorner(no, no);
  return out;
}

}  // namespace tmscatter
