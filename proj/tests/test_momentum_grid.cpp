#include <cmath>
#include <numbers>

#include <doctest.h>

#include "test_helpers.hpp"
#include "tmscatter/momentum_grid.hpp"

using namespace tmscatter;
using tmtest::check_close;

TEST_SUITE_BEGIN("momentum-grid");

TEST_CASE("dispersion function branches") {
  check_close(varpi(0.0, 1.0), Complex(1.0, 0.0), 0.0);
  check_close(varpi(1.0, 1.0), Complex(0.0, 0.0), 0.0);
  check_close(varpi(std::sqrt(2.0), 1.0), Complex(0.0, 1.0), 1e-15);
  // real and imaginary parts never overlap
  for (double p : {-3.0, -0.7, 0.0, 0.2, 0.99, 1.01, 2.5})
    CHECK(varpi_re(p, 1.0) * varpi_im(p, 1.0) == 0.0);
}

TEST_CASE("varpi squared recovers k^2 - p^2 on both branches") {
  const double k = 1.7;
  for (double p = -4.0; p <= 4.0; p += 0.1) {
    const Complex w = varpi(p, k);
    check_close(w * w, Complex(k * k - p * p, 0.0), 1e-12);
  }
}

TEST_CASE("small grid: symmetry and weight sum") {
  const MomentumGrid g = build_grid(1.0, 2, 4.0, 0);
  REQUIRE(g.n_osc() == 2);
  CHECK(g.osc_nodes[0] == doctest::Approx(-g.osc_nodes[1]).epsilon(1e-14));
  double wsum = 0.0;
  for (double w : g.osc_weights) wsum += w;
  CHECK(std::abs(wsum - 2.0) < 0.1);  // two-point rule accuracy
}

TEST_CASE("oscillating moment of 1/varpi equals pi") {
  const MomentumGrid g = build_grid(1.0, 32, 4.0, 0);
  double s = 0.0;
  for (int j = 0; j < g.n_osc(); ++j)
    s += g.osc_weights[j] / g.varpi_vals[j].real();
  CHECK(std::abs(s - std::numbers::pi) < 1e-12);
  // weight sum itself is spectrally accurate at this resolution
  double wsum = 0.0;
  for (double w : g.osc_weights) wsum += w;
  CHECK(std::abs(wsum - 2.0) < 1e-12);
}

TEST_CASE("sector separation") {
  const MomentumGrid g = build_grid(2.0, 16, 8.0, 16);
  for (int j = 0; j < g.n_osc(); ++j) {
    CHECK(std::abs(g.osc_nodes[j]) < g.k);
    CHECK(g.varpi_im_vals[j] == 0.0);
  }
  for (int j = g.n_osc(); j < g.total(); ++j) {
    CHECK(std::abs(g.node(j)) > g.k);
    CHECK(g.varpi_im_vals[j] > 0.0);
  }
  // node set closed under negation
  for (int j = 0; j < g.total(); ++j) {
    bool found = false;
    for (int l = 0; l < g.total(); ++l)
      if (std::abs(g.node(l) + g.node(j)) < 1e-13) found = true;
    CHECK(found);
  }
}

TEST_CASE("invalid grid parameters are rejected") {
  CHECK_THROWS_AS(build_grid(1.0, 1, 4.0, 4), ConfigError);
  CHECK_THROWS_AS(build_grid(1.0, 8, 0.5, 4), ConfigError);
  CHECK_THROWS_AS(build_grid(1.0, 8, 4.0, -1), ConfigError);
  CHECK_THROWS_AS(build_grid(-1.0, 8, 4.0, 4), ConfigError);
}

TEST_CASE("projection is idempotent and kills the evanescent sector") {
  const MomentumGrid g = build_grid(1.0, 16, 4.0, 8);
  const GridFunction f = tmtest::random_grid_function(g, 42);
  const GridFunction pf = project(f);
  const GridFunction ppf = project(pf);
  CHECK(in_Fk(pf));
  for (int i = 0; i < g.total(); ++i) check_close(ppf.values[i], pf.values[i], 0.0);
  for (int i = 0; i < g.n_osc(); ++i) check_close(pf.values[i], f.values[i], 0.0);

  // already oscillating: fixed point
  const GridFunction again = project(ppf);
  for (int i = 0; i < g.total(); ++i)
    check_close(again.values[i], ppf.values[i], 0.0);

  // indicator of the evanescent sector maps to zero
  GridFunction ev;
  ev.grid = &g;
  ev.values = VectorXcd::Zero(g.total());
  for (int i = g.n_osc(); i < g.total(); ++i) ev.values[i] = 1.0;
  const GridFunction pev = project(ev);
  CHECK(pev.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("quadrature of analytic integrands converges spectrally") {
  // int_{-k}^{k} e^{i a p} / varpi dp at increasing resolution
  const double a = 2.0, k = 1.0;
  auto moment = [&](int n) {
    const MomentumGrid g = build_grid(k, n, 4.0, 0);
    Complex s{0.0, 0.0};
    for (int j = 0; j < g.n_osc(); ++j)
      s += g.osc_weights[j] / g.varpi_vals[j].real() *
           std::exp(I_UNIT * (a * g.osc_nodes[j]));
    return s;
  };
  const double e8 = std::abs(moment(8) - moment(64));
  const double e16 = std::abs(moment(16) - moment(64));
  const double e32 = std::abs(moment(32) - moment(64));
  CHECK(e16 < e8 / 100.0);
  CHECK(e32 < 1e-13);
}

TEST_CASE("grid serializes to a JSON document") {
  const MomentumGrid g = build_grid(1.5, 8, 6.0, 4);
  const std::string doc = grid_to_json(g);
  CHECK(doc.find("\"k\":1.5") != std::string::npos);
  CHECK(doc.find("osc_nodes") != std::string::npos);
  CHECK(doc.find("ev_weights") != std::string::npos);
}

TEST_SUITE_END();
