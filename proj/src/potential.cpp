#include "tmscatter/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tmscatter/quadrature.hpp"

namespace tmscatter {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// C-inf bump on (-1, 1), peak value 1 at t = 0.
double bump(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}
}  // namespace

PotentialSpec PotentialSpec::zero() { return PotentialSpec{}; }

PotentialSpec PotentialSpec::delta_line(Complex z, double a, double x0) {
  return multi_delta({{z, a}}, x0);
}

PotentialSpec PotentialSpec::multi_delta(std::vector<DeltaTerm> terms,
                                         double x0) {
  PotentialSpec s;
  s.kind_ = PotentialKind::DeltaLine;
  s.x0_ = x0;
  s.a_minus_ = s.a_plus_ = x0;
  s.terms_ = std::move(terms);
  double sc = 0.0;
  for (const auto& t : s.terms_) sc += std::abs(t.z);
  s.scale_ = sc;
  s.coupling_ = s.terms_.empty() ? Complex{0, 0} : s.terms_[0].z;
  return s;
}

PotentialSpec PotentialSpec::gaussian(Complex z, double sigma_x,
                                      double sigma_y, double n_sigma) {
  PotentialSpec s;
  s.kind_ = PotentialKind::Gaussian;
  s.a_minus_ = -n_sigma * sigma_x;
  s.a_plus_ = n_sigma * sigma_x;
  s.coupling_ = z;
  s.scale_ = std::abs(z);
  const double pref = std::sqrt(kTwoPi) * sigma_y;
  s.vt_ = [z, sigma_x, sigma_y, pref](double x, double K) {
    return z * pref *
           std::exp(-0.5 * (x * x / (sigma_x * sigma_x) +
                            sigma_y * sigma_y * K * K));
  };
  s.vxy_ = [z, sigma_x, sigma_y](double x, double y) {
    return z * std::exp(-0.5 * (x * x / (sigma_x * sigma_x) +
                                y * y / (sigma_y * sigma_y)));
  };
  return s;
}

PotentialSpec PotentialSpec::separable(std::function<Complex(double)> chi,
                                       std::function<Complex(double)> ghat,
                                       double a_minus, double a_plus,
                                       Complex coupling, double scale) {
  PotentialSpec s;
  s.kind_ = PotentialKind::Separable;
  s.a_minus_ = a_minus;
  s.a_plus_ = a_plus;
  s.coupling_ = coupling;
  s.scale_ = scale;
  s.vt_ = [chi = std::move(chi), ghat = std::move(ghat)](double x, double K) {
    return chi(x) * ghat(K);
  };
  return s;
}

PotentialSpec PotentialSpec::band_limited(Complex z, double beta_lo,
                                          double beta_hi, double a_minus,
                                          double a_plus, double q_mod) {
  if (!(beta_lo < beta_hi))
    throw ConfigError("band_limited: requires beta_lo < beta_hi");
  PotentialSpec s;
  s.kind_ = PotentialKind::BandLimited;
  s.a_minus_ = a_minus;
  s.a_plus_ = a_plus;
  s.beta_lo_ = beta_lo;
  s.beta_hi_ = beta_hi;
  s.coupling_ = z;
  s.scale_ = std::abs(z);
  const double Kc = 0.5 * (beta_hi + beta_lo), Kh = 0.5 * (beta_hi - beta_lo);
  const double xc = 0.5 * (a_plus + a_minus), xh = 0.5 * (a_plus - a_minus);
  s.vt_ = [z, Kc, Kh, xc, xh, q_mod](double x, double K) {
    const double chi = bump((x - xc) / xh);
    if (chi == 0.0) return Complex{0.0, 0.0};
    Complex c = z * chi * bump((K - Kc) / Kh);
    if (q_mod != 0.0) c *= std::exp(I_UNIT * (q_mod * x));
    return c;
  };
  return s;
}

PotentialSpec PotentialSpec::y_independent(std::function<Complex(double)> v1,
                                           double a_minus, double a_plus,
                                           double scale) {
  PotentialSpec s;
  s.kind_ = PotentialKind::YIndependent;
  s.a_minus_ = a_minus;
  s.a_plus_ = a_plus;
  s.v1_ = std::move(v1);
  s.scale_ = scale;
  return s;
}

PotentialSpec PotentialSpec::barrier(Complex height, double x_lo,
                                     double x_hi) {
  PotentialSpec s =
      y_independent([height](double) { return height; }, x_lo, x_hi,
                    std::abs(height));
  s.coupling_ = height;
  return s;
}

PotentialSpec PotentialSpec::custom_table(std::vector<double> xs,
                                          std::vector<double> Ks,
                                          std::vector<Complex> vals) {
  if (xs.size() < 2 || Ks.size() < 2 || vals.size() != xs.size() * Ks.size())
    throw ConfigError("custom_table: need >= 2x2 samples and matching values");
  if (!std::is_sorted(xs.begin(), xs.end()) ||
      !std::is_sorted(Ks.begin(), Ks.end()))
    throw ConfigError("custom_table: sample coordinates must be ascending");
  PotentialSpec s;
  s.kind_ = PotentialKind::Custom;
  s.a_minus_ = xs.front();
  s.a_plus_ = xs.back();
  double sc = 0.0;
  for (const auto& v : vals) sc = std::max(sc, std::abs(v));
  s.scale_ = sc;
  const size_t nK = Ks.size();
  s.vt_ = [xs = std::move(xs), Ks = std::move(Ks), vals = std::move(vals),
           nK](double x, double K) -> Complex {
    // zero-extend past the tabulated K range, consistent with a decaying
    // transverse spectrum
    if (K < Ks.front() || K > Ks.back()) return {0.0, 0.0};
    if (x < xs.front() || x > xs.back()) return {0.0, 0.0};
    const auto ix = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
    const auto iK = std::upper_bound(Ks.begin(), Ks.end(), K) - Ks.begin();
    const size_t i1 = std::clamp<size_t>(ix, 1, xs.size() - 1);
    const size_t j1 = std::clamp<size_t>(iK, 1, nK - 1);
    const size_t i0 = i1 - 1, j0 = j1 - 1;
    const double tx = (x - xs[i0]) / (xs[i1] - xs[i0]);
    const double tK = (K - Ks[j0]) / (Ks[j1] - Ks[j0]);
    const Complex v00 = vals[i0 * nK + j0], v01 = vals[i0 * nK + j1];
    const Complex v10 = vals[i1 * nK + j0], v11 = vals[i1 * nK + j1];
    return (1 - tx) * ((1 - tK) * v00 + tK * v01) +
           tx * ((1 - tK) * v10 + tK * v11);
  };
  return s;
}

PotentialSpec PotentialSpec::superpose(const PotentialSpec& a,
                                       const PotentialSpec& b) {
  if (a.is_delta_line() || b.is_delta_line() || a.is_y_independent() ||
      b.is_y_independent())
    throw ConfigError("superpose: smooth transverse-spectrum kinds only");
  PotentialSpec s;
  s.kind_ = PotentialKind::Custom;
  s.a_minus_ = std::min(a.a_minus_, b.a_minus_);
  s.a_plus_ = std::max(a.a_plus_, b.a_plus_);
  s.scale_ = a.scale_ + b.scale_;
  s.vt_ = [a, b](double x, double K) {
    Complex v{0.0, 0.0};
    if (a.in_window(x)) v += a.vt_(x, K);
    if (b.in_window(x)) v += b.vt_(x, K);
    return v;
  };
  // window handled inside the closure; keep the hull support
  return s;
}

Complex PotentialSpec::tilde_g(double K) const {
  if (kind_ != PotentialKind::DeltaLine)
    throw ConfigError("tilde_g: spec is not a delta line");
  Complex g{0.0, 0.0};
  for (const auto& t : terms_) g += t.z * std::exp(-I_UNIT * (t.a * K));
  return g;
}

Complex PotentialSpec::fourier_y(double x, double K) const {
  switch (kind_) {
    case PotentialKind::Zero:
      return {0.0, 0.0};
    case PotentialKind::DeltaLine:
      throw ConfigError(
          "fourier_y: delta-line specs carry a symbolic delta(x); use "
          "tilde_g");
    case PotentialKind::YIndependent:
      throw ConfigError(
          "fourier_y: y-independent transform carries delta(K); use v1");
    default:
      if (!in_window(x)) return {0.0, 0.0};
      return vt_(x, K);
  }
}

Complex PotentialSpec::v1(double x) const {
  if (kind_ != PotentialKind::YIndependent)
    throw ConfigError("v1: spec is not y-independent");
  if (!in_window(x)) return {0.0, 0.0};
  return v1_(x);
}

Complex PotentialSpec::position_space(double x, double y) const {
  if (!vxy_) throw ConfigError("position_space: not available for this kind");
  if (!in_window(x)) return {0.0, 0.0};
  return vxy_(x, y);
}

Complex PotentialSpec::double_transform(double Kx, double Ky,
                                        int n_quad) const {
  if (kind_ == PotentialKind::Zero) return {0.0, 0.0};
  if (kind_ == PotentialKind::DeltaLine)
    return tilde_g(Ky) * std::exp(-I_UNIT * (Kx * x0_));
  if (kind_ == PotentialKind::YIndependent)
    throw ConfigError("double_transform: delta(Ky) factor is symbolic");
  const double lo = std::max(a_minus_, x_lo_);
  const double hi = std::min(a_plus_, x_hi_);
  if (!(lo < hi)) return {0.0, 0.0};
  const GaussRule gx = gauss_legendre_on(n_quad, lo, hi);
  Complex acc{0.0, 0.0};
  for (int i = 0; i < n_quad; ++i) {
    const double x = gx.x[i];
    if (!in_window(x)) continue;
    acc += gx.w[i] * vt_(x, Ky) * std::exp(-I_UNIT * (Kx * x));
  }
  return acc;
}

PotentialSpec PotentialSpec::truncated(double lo, double hi) const {
  if (!(lo < hi)) throw ConfigError("truncated: requires lo < hi");
  PotentialSpec s = *this;
  if (kind_ == PotentialKind::Zero) return s;
  if (kind_ == PotentialKind::DeltaLine) {
    const bool kept = (lo <= a_minus_ || x0_ > lo) && x0_ <= hi;
    return kept ? s : PotentialSpec::zero();
  }
  s.x_lo_ = lo <= a_minus_ ? -kInf : std::max(x_lo_, lo);
  s.x_hi_ = std::min(x_hi_, hi);
  s.a_minus_ = std::max(a_minus_, lo);
  s.a_plus_ = std::min(a_plus_, hi);
  if (!(s.a_minus_ <= s.a_plus_)) return PotentialSpec::zero();
  return s;
}

MatrixXcd interaction_operator(const PotentialSpec& spec, double x,
                               const MomentumGrid& grid) {
  const int n = grid.total();
  MatrixXcd m = MatrixXcd::Zero(n, n);
  if (spec.is_delta_line())
    throw ConfigError(
        "interaction_operator: delta-line specs are handled in closed form");
  if (spec.is_zero() || !spec.in_window(x)) return m;
  if (spec.is_y_independent()) {
    // delta(K) collapses the convolution to a multiple of the identity
    m.diagonal().setConstant(spec.v1(x));
    return m;
  }
  for (int i = 0; i < n; ++i) {
    const double pi_ = grid.node(i);
    for (int j = 0; j < n; ++j) {
      const Complex v = spec.fourier_y(x, pi_ - grid.node(j));
      if (v != Complex{0.0, 0.0}) m(i, j) = v * (grid.weight(j) / kTwoPi);
    }
  }
  return m;
}

MatrixXcd g_operator(const PotentialSpec& spec, const MomentumGrid& grid) {
  if (!spec.is_delta_line())
    throw ConfigError("g_operator: spec is not a delta line");
  const int n = grid.total();
  MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) =
          spec.tilde_g(grid.node(i) - grid.node(j)) * (grid.weight(j) / kTwoPi);
  return m;
}

}  // namespace tmscatter
