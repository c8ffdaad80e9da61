#pragma once

#include <vector>

#include "bicyclide/coords.hpp"
#include "bicyclide/greens.hpp"

namespace bicyclide {

/// One (m,n) term of a limiting expansion.
///
/// Bi-spherical: u = t, ustar = t*, with t* < t.
/// Prolate: u = sigma, ustar = sigma*, with 0 < sigma < sigma*.
struct LimitTermSpec {
  int m;
  int n;
  double u;
  double ustar;
  double theta;
  double theta_star;
};

double bispherical_B(const LimitTermSpec& spec);
double prolate_B(const LimitTermSpec& spec);

/// Bi-cyclide term A_{m,n} in limit-native variables.
///
/// kind = first: (a, astar) = (s, s*), requires t* < t; the plain 1/|r - r*| term.
/// kind = second: (a, astar) = (sigma, sigma*) with sigma = s + K, requires
/// sigma < sigma*; the term of the expansion in the scaled coordinates (2/k') x.
double bicyclide_A(ExpansionKind kind, int m, int n, double a, double astar, double t,
                   double tstar, const Modulus& modulus);

CartesianPoint bispherical_to_cartesian(double t, double theta, double phi);
CartesianPoint prolate_to_cartesian(double sigma, double theta, double phi);

/// to_cartesian at (sigma - K, t, phi), scaled by 2/k'.
CartesianPoint scaled_bicyclide(double sigma, double t, double phi, const Modulus& modulus);

struct LimitProfileRow {
  double k;
  double ratio;
  double legendre_ratio;
  double gap;  // |ratio - legendre_ratio| / |legendre_ratio|
};

/// Edge-profile ratio w~(2K - sigma) / w~(2K - sigma0) of the modulus-k' family
/// against its Legendre Q limit. Requires nu + 1/2 to be a non-negative integer.
std::vector<LimitProfileRow> limit_profile_check(double nu, int n, double sigma, double sigma0,
                                                 const std::vector<double>& k_sequence);

}  // namespace bicyclide
