#include "bicyclide/limits.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bicyclide/errors.hpp"
#include "bicyclide/legendre.hpp"
#include "bicyclide/wangerin.hpp"

namespace bicyclide {

namespace {

// n! / (2m+n)!
double factorial_ratio(int m, int n) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(2.0 * m + n + 1.0));
}

void check_angle(double theta, const char* name) {
  if (!(theta > 0.0 && theta < std::numbers::pi))
    throw DomainError(std::string(name) + " must lie in (0, pi)");
}

void check_index(int n) {
  if (n < 0) throw DomainError("limit term requires n >= 0");
}

}  // namespace

double bispherical_B(const LimitTermSpec& spec) {
  check_index(spec.n);
  check_angle(spec.theta, "theta");
  check_angle(spec.theta_star, "theta*");
  if (!(spec.ustar < spec.u)) throw PreconditionError("bi-spherical term requires t* < t");
  const int m = std::abs(spec.m), l = m + spec.n;
  const double pre = std::sqrt((std::cosh(spec.u) - std::cos(spec.theta)) *
                               (std::cosh(spec.ustar) - std::cos(spec.theta_star)));
  return pre * std::exp(-(l + 0.5) * (spec.u - spec.ustar)) * factorial_ratio(m, spec.n) *
         ferrers_P(l, m, std::cos(spec.theta)) * ferrers_P(l, m, std::cos(spec.theta_star));
}

double prolate_B(const LimitTermSpec& spec) {
  check_index(spec.n);
  check_angle(spec.theta, "theta");
  check_angle(spec.theta_star, "theta*");
  if (!(spec.u > 0.0)) throw DomainError("prolate term requires sigma > 0");
  if (!(spec.u < spec.ustar)) throw PreconditionError("prolate term requires sigma < sigma*");
  const int m = std::abs(spec.m), l = m + spec.n;
  const double f = factorial_ratio(m, spec.n);
  const double sign = m % 2 == 0 ? 1.0 : -1.0;
  return sign * (2.0 * l + 1.0) * f * f * ferrers_P(l, m, std::cos(spec.theta)) *
         ferrers_P(l, m, std::cos(spec.theta_star)) * legendre_PQ(l, m, std::cosh(spec.u)).P *
         legendre_PQ(l, m, std::cosh(spec.ustar)).Q;
}

double bicyclide_A(ExpansionKind kind, int m, int n, double a, double astar, double t,
                   double tstar, const Modulus& modulus) {
  check_index(n);
  if (kind == ExpansionKind::first) {
    if (!(tstar < t)) throw PreconditionError("requires t* < t for the first-kind term");
    return expansion_term(kind, std::abs(m), n, BiCyclidePoint{a, t, 0.0, modulus},
                          BiCyclidePoint{astar, tstar, 0.0, modulus});
  }
  if (!(a < astar)) throw PreconditionError("requires sigma < sigma* for the second-kind term");
  const double K = modulus.bigK();
  const BiCyclidePoint p{a - K, t, 0.0, modulus}, ps{astar - K, tstar, 0.0, modulus};
  return 0.5 * modulus.kprime() * expansion_term(kind, std::abs(m), n, p, ps);
}

CartesianPoint bispherical_to_cartesian(double t, double theta, double phi) {
  const double den = std::cosh(t) - std::cos(theta);
  const double R = std::sin(theta) / den;
  return {R * std::cos(phi), R * std::sin(phi), std::sinh(t) / den};
}

CartesianPoint prolate_to_cartesian(double sigma, double theta, double phi) {
  const double R = std::sinh(sigma) * std::sin(theta);
  return {R * std::cos(phi), R * std::sin(phi), std::cosh(sigma) * std::cos(theta)};
}

CartesianPoint scaled_bicyclide(double sigma, double t, double phi, const Modulus& modulus) {
  const CartesianPoint q = to_cartesian(BiCyclidePoint{sigma - modulus.bigK(), t, phi, modulus});
  const double f = 2.0 / modulus.kprime();
  return {f * q.x, f * q.y, f * q.z};
}

std::vector<LimitProfileRow> limit_profile_check(double nu, int n, double sigma, double sigma0,
                                                 const std::vector<double>& k_sequence) {
  if (!(sigma > 0.0 && sigma0 > 0.0)) throw DomainError("profile check requires sigma, sigma0 > 0");
  const double order = nu + 0.5;
  if (order < 0.0 || std::abs(order - std::round(order)) > 1e-12)
    throw DomainError("profile check requires nu + 1/2 to be a non-negative integer");
  const int mu = static_cast<int>(std::lround(order));
  const int l = n + mu;
  auto legendre_side = [&](double x) {
    return std::sqrt(std::sinh(x)) * legendre_PQ(l, mu, std::cosh(x)).Q;
  };
  const double target = legendre_side(sigma) / legendre_side(sigma0);
  std::vector<LimitProfileRow> rows;
  for (double k : k_sequence) {
    const Modulus mod(k);
    const double K = mod.bigK();
    if (!(sigma < 2.0 * K && sigma0 < 2.0 * K))
      throw DomainError("profile check requires sigma, sigma0 < 2K(k)");
    const EigenSolutionPtr sol = eigen(nu, n, mod.complement());
    const double ratio = eval_edge_profile(*sol, 2.0 * K - sigma).w /
                         eval_edge_profile(*sol, 2.0 * K - sigma0).w;
    rows.push_back({k, ratio, target, std::abs(ratio - target) / std::abs(target)});
  }
  return rows;
}

}  // namespace bicyclide
