#include <cmath>

#include <doctest.h>

#include "test_helpers.hpp"
#include "tmscatter/hamiltonian.hpp"

using namespace tmscatter;

namespace {

MatrixXcd assemble(const BlockOperator& b) { return b.assemble(); }

// diagonal of exp(varpi_i x s3) as a (2n) vector
VectorXcd growth_diag(const MomentumGrid& g, double x) {
  const int n = g.total();
  VectorXcd d(2 * n);
  for (int i = 0; i < n; ++i) {
    d[i] = std::exp(g.varpi_im_vals[i] * x);
    d[n + i] = std::exp(-g.varpi_im_vals[i] * x);
  }
  return d;
}

}  // namespace

TEST_SUITE_BEGIN("effective-hamiltonian");

TEST_CASE("free Hamiltonian is the diagonal decay generator") {
  const MomentumGrid g = build_grid(1.0, 12, 4.0, 8);
  const BlockOperator h =
      hamiltonian_full(PotentialSpec::zero(), 0.3, g);
  CHECK(h.b[0][1].cwiseAbs().maxCoeff() == 0.0);
  CHECK(h.b[1][0].cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < g.total(); ++i) {
    tmtest::check_close(h.b[0][0](i, i),
                        Complex(0.0, -g.varpi_im_vals[i]), 0.0);
    tmtest::check_close(h.b[1][1](i, i),
                        Complex(0.0, g.varpi_im_vals[i]), 0.0);
  }
  // outside the support of any potential the same diagonal survives
  const PotentialSpec gau = PotentialSpec::gaussian({0.7, 0.2}, 0.4, 0.4);
  const BlockOperator h2 = hamiltonian_full(gau, gau.a_plus() + 0.5, g);
  CHECK((assemble(h2) - assemble(h)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("potential part squares to zero at fixed x") {
  const MomentumGrid g = build_grid(1.0, 12, 3.0, 8);
  const PotentialSpec gau = PotentialSpec::gaussian({0.9, 0.4}, 0.5, 0.5);
  const MatrixXcd free_h =
      assemble(hamiltonian_full(PotentialSpec::zero(), 0.2, g));
  const MatrixXcd t = assemble(hamiltonian_full(gau, 0.2, g)) - free_h;
  CHECK((t * t).cwiseAbs().maxCoeff() < 1e-14 * t.cwiseAbs().maxCoeff());
}

TEST_CASE("interaction picture relates to the full frame by conjugation") {
  const MomentumGrid g = build_grid(1.0, 10, 3.0, 6);
  const PotentialSpec gau = PotentialSpec::gaussian({0.6, -0.3}, 0.5, 0.5);
  for (double x : {0.0, 0.15, -0.4}) {
    const MatrixXcd hf = assemble(hamiltonian_full(gau, x, g));
    const MatrixXcd hi = assemble(hamiltonian_interaction(gau, x, g));
    const MatrixXcd h0 =
        assemble(hamiltonian_full(PotentialSpec::zero(), x, g));
    const VectorXcd gr = growth_diag(g, x);
    const MatrixXcd conj =
        gr.asDiagonal() * hf * gr.cwiseInverse().asDiagonal() - h0;
    const double scale = hi.cwiseAbs().maxCoeff();
    CHECK((hi - conj).cwiseAbs().maxCoeff() < 1e-12 * std::max(scale, 1.0));
  }
}

TEST_CASE("interaction picture vanishes outside the support") {
  const MomentumGrid g = build_grid(1.0, 10, 3.0, 6);
  const PotentialSpec gau = PotentialSpec::gaussian({0.6, 0.0}, 0.3, 0.3);
  const BlockOperator h = hamiltonian_interaction(gau, gau.a_plus() + 0.1, g);
  CHECK(h.max_abs() == 0.0);
}

TEST_CASE("oscillating sub-blocks agree across frames at x = 0") {
  const MomentumGrid g = build_grid(1.0, 10, 3.0, 6);
  const PotentialSpec gau = PotentialSpec::gaussian({1.1, 0.2}, 0.5, 0.5);
  const BlockOperator hf = hamiltonian_full(gau, 0.0, g);
  const BlockOperator hi = hamiltonian_interaction(gau, 0.0, g);
  const int no = g.n_osc();
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj) {
      const MatrixXcd d = hf.b[bi][bj].topLeftCorner(no, no) -
                          hi.b[bi][bj].topLeftCorner(no, no);
      CHECK(d.cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("block rows repeat with alternating sign") {
  // the rank structure of the coupling matrix: row 1 = -row 2 per column
  const MomentumGrid g = build_grid(1.0, 10, 3.0, 6);
  const PotentialSpec gau = PotentialSpec::gaussian({0.5, 0.5}, 0.5, 0.5);
  const BlockOperator hi = hamiltonian_interaction(gau, 0.2, g);
  const int n = g.total();
  VectorXcd row1(n), row2(n);
  for (int i = 0; i < n; ++i) {
    row1[i] = std::exp(-I_UNIT * (g.varpi_vals[i] * 0.2));
    row2[i] = std::exp(I_UNIT * (g.varpi_vals[i] * 0.2));
  }
  for (int l = 0; l < 2; ++l) {
    const MatrixXcd lhs = row1.cwiseInverse().asDiagonal() * hi.b[0][l];
    const MatrixXcd rhs = -(row2.cwiseInverse().asDiagonal() * hi.b[1][l]);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <
          1e-12 * lhs.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("similarity to the unscaled-frame Hamiltonian") {
  const MomentumGrid g = build_grid(1.0, 10, 3.0, 6);
  const PotentialSpec gau = PotentialSpec::gaussian({0.8, -0.1}, 0.5, 0.5);
  const double x = 0.23;
  const MatrixXcd hf = assemble(hamiltonian_full(gau, x, g));
  // unscaled frame: varpi^-1 H varpi moves the 1/varpi column factor to
  // the rows
  const int n = g.total();
  VectorXcd w2(2 * n);
  for (int i = 0; i < n; ++i) w2[i] = w2[n + i] = g.varpi_vals[i];
  const MatrixXcd hu =
      w2.cwiseInverse().asDiagonal() * hf * w2.asDiagonal();
  // direct assembly of the unscaled operator
  const MatrixXcd v = interaction_operator(gau, x, g);
  MatrixXcd expect = MatrixXcd::Zero(2 * n, 2 * n);
  const double kk[2][2] = {{1.0, 1.0}, {-1.0, -1.0}};
  const double sg[2] = {1.0, -1.0};
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj) {
      VectorXcd r(n), c(n);
      for (int i = 0; i < n; ++i) {
        const double wr = varpi_re(g.node(i), g.k);
        r[i] = std::exp(-I_UNIT * (sg[bi] * wr * x)) / g.varpi_vals[i];
        c[i] = std::exp(I_UNIT * (sg[bj] * wr * x));
      }
      expect.block(bi * n, bj * n, n, n) =
          (0.5 * kk[bi][bj]) * (r.asDiagonal() * v * c.asDiagonal());
      if (bi == bj)
        for (int i = 0; i < n; ++i)
          expect(bi * n + i, bi * n + i) +=
              -I_UNIT * sg[bi] * g.varpi_im_vals[i];
    }
  CHECK((hu - expect).cwiseAbs().maxCoeff() <
        1e-12 * expect.cwiseAbs().maxCoeff());
}

TEST_CASE("y-independent potentials keep every block diagonal") {
  const MomentumGrid g = build_grid(1.0, 10, 3.0, 6);
  const PotentialSpec bar = PotentialSpec::barrier({0.3, 0.0}, 0.0, 1.0);
  const BlockOperator h = hamiltonian_full(bar, 0.5, g);
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj) {
      MatrixXcd off = h.b[bi][bj];
      off.diagonal().setZero();
      CHECK(off.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("phase-exponent guard raises a diagnosable overflow") {
  const MomentumGrid g = build_grid(1.0, 8, 8.0, 8);
  const PotentialSpec bar = PotentialSpec::barrier({0.3, 0.0}, 99.0, 101.0);
  CHECK_THROWS_AS(hamiltonian_interaction(bar, 100.0, g), OverflowError);
}

TEST_SUITE_END();
