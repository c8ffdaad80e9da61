#pragma once

#include <vector>

namespace bicyclide {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on (-1,1), a,b > -1.
QuadratureRule gauss_jacobi(int n, double a, double b);

/// Gauss-Legendre rule on (-1,1).
QuadratureRule gauss_legendre(int n);

}  // namespace bicyclide
