#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bicyclide/coords.hpp"

namespace bicyclide {

enum class ExpansionKind { first, second };

/// Serial reference path or OpenMP-parallel path for the per-term kernels.
enum class Execution { serial, parallel };

struct SeriesResult {
  double value = 0.0;
  int m_max = 0;
  int n_max = 0;
  /// term_magnitudes[m][n]: |term| with the m and -m contributions combined.
  std::vector<std::vector<double>> term_magnitudes;
  /// Signed contribution of each shell m + n (or of each index for 1-D series).
  std::vector<double> shell_sums;
  double fitted_ratio = 0.0;
  double tail_estimate = 0.0;
  std::optional<double> direct_value;
};

double direct_distance(const CartesianPoint& q, const CartesianPoint& qstar);

/// Coefficient A_{m,n} (m >= 0) of e^{im(phi-phi*)} in the expansion of the
/// reciprocal distance; no ordering check.
double expansion_term(ExpansionKind kind, int m, int n, const BiCyclidePoint& p,
                      const BiCyclidePoint& pstar);

/// Truncated reciprocal-distance expansion over |m| <= m_max, n <= n_max.
/// First kind requires t* < t, second kind s < s*.
SeriesResult expand_distance(const CartesianPoint& q, const CartesianPoint& qstar,
                             ExpansionKind kind, const Modulus& modulus, int m_max, int n_max,
                             Execution exec = Execution::parallel);

/// Partial sum of the toroidal (azimuthal Fourier) expansion.
SeriesResult azimuthal_fourier(const CartesianPoint& q, const CartesianPoint& qstar, int m_max);

/// Partial sum over n of the addition theorem for Q_{m-1/2}(chi); requires t* < t.
SeriesResult addition_series(int m, const BiCyclidePoint& p, const BiCyclidePoint& pstar,
                             int n_max);

struct IntegralRelation {
  double lhs;
  double rhs;
};

/// Both sides of the integral relation for Q_{m-1/2}(chi) against W^n_{m-1/2}.
IntegralRelation integral_relation(int m, int n, double sstar, double t, double tstar,
                                   const Modulus& modulus, double tol = 1e-11);

struct QuadSpec {
  int n_s = 48;        // Gauss-Legendre nodes in the mapped s variable
  int n_phi = 32;      // trapezoid nodes in phi
  double tol = 1e-11;  // relative change between refinement levels
  int max_doublings = 4;
};

using BoundaryData = std::function<std::complex<double>(double s, double phi)>;

struct DirichletCoefficients {
  double t0;
  Modulus modulus;
  int m_max;
  int n_max;
  std::map<std::pair<int, int>, std::complex<double>> c;
  std::map<std::pair<int, int>, std::complex<double>> d;
};

/// Fourier coefficients of g against W^n_{|m|-1/2}(s) e^{im phi} on t = t0.
DirichletCoefficients dirichlet_coefficients(const BoundaryData& g, double t0,
                                             const Modulus& modulus, int m_max, int n_max,
                                             const QuadSpec& quad = {},
                                             Execution exec = Execution::parallel);

/// Harmonic extension into t > t0.
std::complex<double> dirichlet_solve(const DirichletCoefficients& coeffs,
                                     const BiCyclidePoint& p);

/// External first-kind harmonic at qstar from the surface integral over t = t0.
std::complex<double> external_from_integral(int m, int n, double t0,
                                            const CartesianPoint& qstar,
                                            const Modulus& modulus, const QuadSpec& quad = {},
                                            Execution exec = Execution::parallel);

/// Gauss-Legendre rule in s on (-K,K) after the map s = K sin(pi v / 2).
struct SRule {
  std::vector<double> s;
  std::vector<double> weights;
};
SRule mapped_s_rule(int n, double K);

}  // namespace bicyclide
