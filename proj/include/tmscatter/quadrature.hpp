#pragma once

#include <vector>

namespace tmscatter {

/// Nodes and weights of an n-point Gauss-Legendre rule.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Rule on the reference interval (-1, 1).
GaussRule gauss_legendre(int n);

/// Rule mapped to (a, b).
GaussRule gauss_legendre_on(int n, double a, double b);

}  // namespace tmscatter
