#include <cmath>
#include <numbers>

#include <doctest.h>

#include "test_helpers.hpp"
#include "tmscatter/closed_forms.hpp"
#include "tmscatter/quadrature.hpp"

using namespace tmscatter;
using tmtest::check_close;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE_BEGIN("exact-closed-forms");

TEST_CASE("delta line amplitude") {
  SUBCASE("vanishing coupling scatters nothing") {
    check_close(delta2d_amplitude({0.0, 0.0}, 0.5, 1.0, 0.2, 1.1), {0.0, 0.0},
                0.0);
  }
  SUBCASE("real coupling: angle-independent modulus") {
    const double z = 1.7, k = 1.0;
    const double want = std::sqrt(2.0 / kPi) * z / std::sqrt(16.0 + z * z);
    for (double th : {-1.0, 0.0, 0.7, 2.5})
      CHECK(std::abs(delta2d_amplitude({z, 0.0}, 0.0, k, 0.3, th)) ==
            doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("phase is linear in sin(theta) with slope -a k") {
    const Complex z{0.8, 0.2};
    const double a = 0.9, k = 1.3, th0 = 0.2;
    const Complex f1 = delta2d_amplitude(z, a, k, th0, 0.3);
    const Complex f2 = delta2d_amplitude(z, a, k, th0, 0.8);
    const Complex ratio = f2 / f1;
    const double want = -a * k * (std::sin(0.8) - std::sin(0.3));
    CHECK(std::arg(ratio) == doctest::Approx(want).epsilon(1e-10));
    CHECK(std::abs(ratio) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("spectral singularity at z = 4i is flagged") {
    CHECK_THROWS_AS(delta2d_amplitude({0.0, 4.0}, 0.0, 1.0, 0.0, 0.0),
                    SpectralSingularityError);
  }
  SUBCASE("derivative in the coupling matches finite differences") {
    const double a = 0.4, k = 1.0, th0 = 0.1, th = 0.9;
    const Complex z0{1.0, 0.5};
    const double h = 1e-5;
    const Complex num =
        (delta2d_amplitude(z0 + h, a, k, th0, th) -
         delta2d_amplitude(z0 - h, a, k, th0, th)) /
        (2.0 * h);
    // analytic: d/dz [ z/(4+iz) ] = 4/(4+iz)^2 times the fixed phase
    const Complex den = 4.0 + I_UNIT * z0;
    const Complex analytic =
        -std::sqrt(2.0 / kPi) * 4.0 / (den * den) *
        std::exp(-I_UNIT * (a * k * (std::sin(th) - std::sin(th0))));
    check_close(num, analytic, 1e-6);
    // complex direction (Cauchy-Riemann): same derivative
    const Complex num_i =
        (delta2d_amplitude(z0 + Complex(0.0, h), a, k, th0, th) -
         delta2d_amplitude(z0 - Complex(0.0, h), a, k, th0, th)) /
        Complex(0.0, 2.0 * h);
    check_close(num_i, analytic, 1e-6);
  }
}

TEST_CASE("interaction-picture route diverges logarithmically in the cutoff") {
  const Complex z{1.0, 0.5};
  const DivergenceReport rep = delta2d_auxiliary_divergence(z, 0.7, 1.0);

  SUBCASE("fitted slope matches z / 2 pi within five percent") {
    CHECK(rep.rel_deviation < 0.05);
  }
  SUBCASE("oscillating moment stays pinned at pi") {
    CHECK(rep.osc_moment_error < 1e-12);
  }
  SUBCASE("denominator values agree with a brute-force quadrature") {
    // independent route: u = sqrt(q - k) flattens the edge, then Gauss
    const double k = 1.0;
    for (size_t i = 0; i < rep.p_max_over_k.size(); ++i) {
      const double P = rep.p_max_over_k[i] * k;
      const GaussRule gu = gauss_legendre_on(400, 0.0, std::sqrt(P - k));
      double ev = 0.0;
      for (int j = 0; j < 400; ++j)
        ev += gu.w[j] * 2.0 / std::sqrt(gu.x[j] * gu.x[j] + 2.0 * k);
      const Complex want =
          1.0 + I_UNIT * z / (4.0 * kPi) * (kPi - 2.0 * I_UNIT * ev);
      check_close(rep.denominator[i], want, 1e-10);
    }
  }
  SUBCASE("zero coupling: denominator is one, slope zero") {
    const DivergenceReport flat =
        delta2d_auxiliary_divergence({0.0, 0.0}, 0.7, 1.0);
    for (const Complex& d : flat.denominator) check_close(d, {1.0, 0.0}, 0.0);
    CHECK(std::abs(flat.fitted_slope) == 0.0);
  }
}

TEST_CASE("production moment quadrature reproduces the cylinder function") {
  // (1/pi) int_{-k}^{k} e^{i d q} / varpi dq, checked against the stdlib
  const double k = 1.0;
  const MomentumGrid g = build_grid(k, 48, 4.0, 0);
  for (double d : {0.0, 0.35, 1.4, 3.7}) {
    Complex j{0.0, 0.0};
    for (int t = 0; t < g.n_osc(); ++t)
      j += g.osc_weights[t] / g.varpi_vals[t].real() *
           std::exp(I_UNIT * (d * g.osc_nodes[t]));
    j /= kPi;
    check_close(j, Complex(std::cyl_bessel_j(0.0, k * d), 0.0), 1e-12);
  }
}

TEST_CASE("multi-delta reductions") {
  const double k = 1.0, th0 = 0.25;
  const MomentumGrid g = build_grid(k, 48, 4.0, 16);

  SUBCASE("a single term reproduces the delta-line displays") {
    const Complex z{1.0, 0.5};
    const double a = 0.7;
    const WaveCoefficients wc =
        multi_delta_solve({{z, a}}, g, th0, Side::Right);
    for (int j = 0; j < g.n_osc(); j += 5) {
      check_close(wc.b_minus.values[j],
                  delta2d_b_minus_smooth(z, a, k, th0, g.osc_nodes[j]), 1e-12);
      check_close(wc.a_plus.values[j],
                  delta2d_a_plus_smooth(z, a, k, th0, g.osc_nodes[j]), 1e-12);
    }
  }
  SUBCASE("mirror pair at normal incidence is even in p") {
    const Complex z{0.8, 0.1};
    const WaveCoefficients wc =
        multi_delta_solve({{z, 0.6}, {z, -0.6}}, g, 0.0, Side::Right);
    for (int j = 0; j < g.n_osc(); ++j) {
      const int jm = g.n_osc() - 1 - j;  // node at -p
      check_close(wc.b_minus.values[j], wc.b_minus.values[jm], 1e-12);
    }
  }
  SUBCASE("singular finite-rank system raises the flag") {
    const WaveCoefficients wc =
        multi_delta_solve({{Complex{0.0, 4.0}, 0.0}}, g, th0, Side::Right);
    CHECK(wc.near_singular);
  }
}

TEST_CASE("point delta in 3D") {
  const double k = 1.3;
  const Complex z{1.0, 0.5};
  check_close(delta3d_amplitude({0.0, 0.0}, k), {0.0, 0.0}, 0.0);
  const Complex f = delta3d_amplitude(z, k);
  check_close(f, -z / (4.0 * kPi + I_UNIT * (k * z)), 1e-15);
  check_close(delta3d_moment(z, k),
              4.0 * kPi / (4.0 * kPi + I_UNIT * (k * z)), 1e-15);
  // singular coupling 4 pi + i k z = 0
  const Complex zs = Complex(0.0, 4.0 * kPi / k);
  CHECK_THROWS_AS(delta3d_amplitude(zs, k), SpectralSingularityError);
  // derivative vs finite differences
  const double h = 1e-5;
  const Complex num =
      (delta3d_amplitude(z + h, k) - delta3d_amplitude(z - h, k)) / (2.0 * h);
  const Complex den = 4.0 * kPi + I_UNIT * (k * z);
  check_close(num, -4.0 * kPi / (den * den), 1e-6);
}

TEST_SUITE_END();
