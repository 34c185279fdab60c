#include <cmath>
#include <numbers>

#include <doctest.h>

#include "test_helpers.hpp"
#include "tmscatter/potential.hpp"
#include "tmscatter/quadrature.hpp"

using namespace tmscatter;
using tmtest::check_close;

TEST_SUITE_BEGIN("potential-model");

TEST_CASE("delta line carries its transverse spectrum factor") {
  const Complex z{0.8, -0.3};
  const double a = 1.2;
  const PotentialSpec s = PotentialSpec::delta_line(z, a);
  for (double K : {-2.0, 0.0, 0.7, 5.0})
    check_close(s.tilde_g(K), z * std::exp(-I_UNIT * (a * K)), 1e-15);
  CHECK_THROWS_AS(s.fourier_y(0.0, 1.0), ConfigError);
}

TEST_CASE("gaussian transform matches direct quadrature of the profile") {
  const Complex z{1.0, 0.5};
  const double sx = 0.4, sy = 0.7;
  const PotentialSpec s = PotentialSpec::gaussian(z, sx, sy);
  // at K = 0 the transform is z sqrt(2 pi) sigma_y exp(-x^2 / 2 sx^2)
  for (double x : {0.0, 0.3, -0.9}) {
    check_close(s.fourier_y(x, 0.0),
                z * std::sqrt(2.0 * std::numbers::pi) * sy *
                    std::exp(-0.5 * x * x / (sx * sx)),
                1e-14);
  }
  // generic K: integrate v(x, y) e^{-iKy} dy numerically
  const GaussRule gy = gauss_legendre_on(200, -8.0 * sy, 8.0 * sy);
  for (double K : {0.0, 0.9, -1.7}) {
    Complex num{0.0, 0.0};
    for (int i = 0; i < 200; ++i)
      num += gy.w[i] * s.position_space(0.2, gy.x[i]) *
             std::exp(-I_UNIT * (K * gy.x[i]));
    check_close(s.fourier_y(0.2, K), num, 1e-12);
  }
}

TEST_CASE("support condition: zero outside [a_minus, a_plus]") {
  const PotentialSpec g = PotentialSpec::gaussian({1.0, 0.0}, 0.5, 0.5);
  check_close(g.fourier_y(g.a_plus() + 1.0, 0.3), {0.0, 0.0}, 0.0);
  check_close(g.fourier_y(g.a_minus() - 0.01, 0.3), {0.0, 0.0}, 0.0);
  const PotentialSpec b =
      PotentialSpec::band_limited({1.0, 0.0}, 2.0, 3.0, -1.0, 1.0);
  check_close(b.fourier_y(1.5, 2.5), {0.0, 0.0}, 0.0);
}

TEST_CASE("band-limited spectrum vanishes at and below beta_lo") {
  const double blo = 2.0, bhi = 3.5;
  const PotentialSpec b =
      PotentialSpec::band_limited({1.0, 0.0}, blo, bhi, -1.0, 1.0);
  for (double K = -6.0; K <= blo + 1e-9; K += 0.05)
    CHECK(std::abs(b.fourier_y(0.0, K)) == 0.0);
  CHECK(std::abs(b.fourier_y(0.0, 0.5 * (blo + bhi))) > 0.0);
  for (double K = bhi; K <= 8.0; K += 0.25)
    CHECK(std::abs(b.fourier_y(0.0, K)) == 0.0);
}

TEST_CASE("interaction operator basics") {
  const MomentumGrid grid = build_grid(1.0, 12, 4.0, 6);
  const int n = grid.total();

  SUBCASE("zero potential gives the zero matrix") {
    const MatrixXcd m = interaction_operator(PotentialSpec::zero(), 0.0, grid);
    CHECK(m.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("y-independent barrier collapses to a multiple of the identity") {
    const Complex h{0.3, 0.0};
    const PotentialSpec s = PotentialSpec::barrier(h, 0.0, 2.0);
    const MatrixXcd m = interaction_operator(s, 1.0, grid);
    check_close(m(0, 0), h, 0.0);
    MatrixXcd off = m;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() == 0.0);
    // outside the barrier: zero
    CHECK(interaction_operator(s, 2.5, grid).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("linearity in the potential") {
    const PotentialSpec g1 = PotentialSpec::gaussian({0.5, 0.1}, 0.5, 0.6);
    const PotentialSpec g2 = PotentialSpec::gaussian({-0.2, 0.4}, 0.7, 0.4);
    const PotentialSpec sum = PotentialSpec::superpose(g1, g2);
    const MatrixXcd m =
        interaction_operator(g1, 0.1, grid) + interaction_operator(g2, 0.1, grid);
    const MatrixXcd ms = interaction_operator(sum, 0.1, grid);
    CHECK((m - ms).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("real potential: conjugate symmetry of the kernel") {
    const PotentialSpec g = PotentialSpec::gaussian({0.8, 0.0}, 0.5, 0.5);
    for (double K : {0.3, 1.1, 2.7})
      check_close(g.fourier_y(0.2, -K), std::conj(g.fourier_y(0.2, K)),
                  1e-15);
    // matrix entries: kernel(i, j) / w_j symmetric under node negation
    const MatrixXcd m = interaction_operator(g, 0.2, grid);
    auto negated = [&](int i) {
      for (int l = 0; l < n; ++l)
        if (std::abs(grid.node(l) + grid.node(i)) < 1e-13) return l;
      return -1;
    };
    for (int i = 0; i < n; i += 3)
      for (int j = 0; j < n; j += 3) {
        const int in = negated(i), jn = negated(j);
        REQUIRE(in >= 0);
        REQUIRE(jn >= 0);
        check_close(m(in, jn) / grid.weight(jn),
                    std::conj(m(i, j) / grid.weight(j)), 1e-14);
      }
  }
}

TEST_CASE("band-limited kernel obeys the one-sided support shift") {
  // an input supported above gamma maps to output supported above
  // beta_lo + gamma
  const double k = 1.0, blo = 2.0, bhi = 3.0;
  const PotentialSpec b =
      PotentialSpec::band_limited({1.0, 0.0}, blo, bhi, -1.0, 1.0);
  const MomentumGrid grid = build_grid(k, 24, 6.0, 24);
  const MatrixXcd m = interaction_operator(b, 0.0, grid);
  const double gamma = -k;
  VectorXcd g = VectorXcd::Zero(grid.total());
  for (int i = 0; i < grid.total(); ++i)
    if (grid.node(i) > gamma) g[i] = Complex(0.4 + 0.1 * i, -0.2);
  const VectorXcd out = m * g;
  const double scale = out.cwiseAbs().maxCoeff();
  REQUIRE(scale > 0.0);
  for (int i = 0; i < grid.total(); ++i)
    if (grid.node(i) <= blo + gamma)
      CHECK(std::abs(out[i]) <= 1e-10 * scale);
}

TEST_CASE("x-truncations partition the potential") {
  const PotentialSpec g = PotentialSpec::gaussian({1.0, -0.4}, 0.5, 0.5);

  SUBCASE("full-support truncation is the identity operation") {
    const PotentialSpec t = g.truncated(g.a_minus(), g.a_plus());
    for (double x : {g.a_minus(), -0.3, 0.0, 1.1, g.a_plus()})
      for (double K : {0.0, 0.8})
        check_close(t.fourier_y(x, K), g.fourier_y(x, K), 0.0);
  }
  SUBCASE("complementary pieces sum to the original pointwise") {
    const double c = 0.37;
    const PotentialSpec t1 = g.truncated(g.a_minus(), c);
    const PotentialSpec t2 = g.truncated(c, g.a_plus());
    for (double x : {g.a_minus(), -1.0, c, c + 1e-9, 1.3, g.a_plus()})
      for (double K : {0.0, -1.2}) {
        const Complex sum = t1.fourier_y(x, K) + t2.fourier_y(x, K);
        check_close(sum, g.fourier_y(x, K), 1e-15);
      }
  }
  SUBCASE("one-sided truncation zeroes the excluded side") {
    const PotentialSpec t = g.truncated(0.0, g.a_plus());
    check_close(t.fourier_y(-1.0, 0.0), {0.0, 0.0}, 0.0);
    CHECK(std::abs(t.fourier_y(0.5, 0.0)) > 0.0);
  }
  SUBCASE("delta line survives only if its position is inside the window") {
    const PotentialSpec d = PotentialSpec::delta_line({1.0, 0.0}, 0.0, 0.5);
    CHECK(d.truncated(0.0, 1.0).is_delta_line());
    CHECK(d.truncated(0.6, 1.0).is_zero());
    CHECK(d.truncated(-1.0, 0.2).is_zero());
  }
}

TEST_CASE("custom table interpolates and zero-extends") {
  std::vector<double> xs{-1.0, 0.0, 1.0};
  std::vector<double> Ks{-2.0, 0.0, 2.0};
  std::vector<Complex> vals;
  for (double x : xs)
    for (double K : Ks) vals.emplace_back(x + K, x - K);
  const PotentialSpec s =
      PotentialSpec::custom_table(std::move(xs), std::move(Ks), std::move(vals));
  check_close(s.fourier_y(0.0, 0.0), {0.0, 0.0}, 1e-15);
  check_close(s.fourier_y(0.5, 1.0), {1.5, -0.5}, 1e-14);  // bilinear
  check_close(s.fourier_y(0.0, 5.0), {0.0, 0.0}, 0.0);     // beyond table K
  check_close(s.fourier_y(2.0, 0.0), {0.0, 0.0}, 0.0);     // beyond support
}

TEST_SUITE_END();
