#pragma once

#include <span>

#include "tmscatter/momentum_grid.hpp"
#include "tmscatter/types.hpp"

namespace tmscatter {

/// Two-component function on a grid.
struct StateVector {
  const MomentumGrid* grid = nullptr;
  VectorXcd upper, lower;
};

/// 2x2 block of dense complex operator matrices.  Blocks are indexed
/// (row, col) in {0, 1}; block dimension n is the node count of the grid
/// it was built on (or the oscillating count when osc_only).
struct BlockOperator {
  int n = 0;
  int n_osc = 0;
  double k = 0.0;
  bool osc_only = false;
  MatrixXcd b[2][2];

  static BlockOperator identity(int n, int n_osc, double k,
                                bool osc_only = false);
  static BlockOperator zero(int n, int n_osc, double k, bool osc_only = false);

  MatrixXcd& block(int i, int j) { return b[i][j]; }
  const MatrixXcd& block(int i, int j) const { return b[i][j]; }

  BlockOperator operator*(const BlockOperator& rhs) const;  // this after rhs
  BlockOperator operator+(const BlockOperator& rhs) const;
  BlockOperator operator-(const BlockOperator& rhs) const;
  BlockOperator scaled(Complex c) const;

  /// Largest entry magnitude over all four blocks.
  double max_abs() const;

  /// Keep only oscillating rows and columns (nodes are stored osc-first).
  BlockOperator osc_restriction() const;

  /// Assembled (2n) x (2n) matrix [[b11, b12], [b21, b22]].
  MatrixXcd assemble() const;
  static BlockOperator from_assembled(const MatrixXcd& m, int n_osc, double k,
                                      bool osc_only = false);

  StateVector apply(const StateVector& v) const;
};

/// Ordered product of slice transfer matrices, list ordered
/// left-slice-first: compose([M1, ..., Ml]) = Ml ... M1.
BlockOperator compose(std::span<const BlockOperator> tms);

}  // namespace tmscatter
