#include "bicyclide/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "bicyclide/errors.hpp"

namespace bicyclide {

namespace {

// Orthonormal p_n(x) and p_n'(x) from the Jacobi matrix, plus sum_{j<n} p_j(x)^2.
struct RecurrenceValue {
  double p, dp, christoffel;
};

RecurrenceValue orthonormal_at(double x, const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                               double p0) {
  const int n = static_cast<int>(diag.size());
  double prev = 0.0, cur = p0, dprev = 0.0, dcur = 0.0, sum = 0.0;
  for (int j = 0; j < n; ++j) {
    sum += cur * cur;
    const double back = j > 0 ? sub(j - 1) : 0.0;
    const double next = ((x - diag(j)) * cur - back * prev) / sub(j);
    const double dnext = ((x - diag(j)) * dcur + cur - back * dprev) / sub(j);
    prev = cur;
    cur = next;
    dprev = dcur;
    dcur = dnext;
  }
  return {cur, dcur, sum};
}

}  // namespace

// Golub-Welsch nodes, Newton-polished on the recurrence; Christoffel weights.
QuadratureRule gauss_jacobi(int n, double a, double b) {
  if (n < 1 || !(a > -1.0) || !(b > -1.0)) {
    throw DomainError("gauss_jacobi requires n >= 1 and a, b > -1");
  }
  Eigen::VectorXd diag(n), sub(n);
  for (int j = 0; j < n; ++j) {
    const double s = 2.0 * j + a + b;
    diag(j) = (s == 0.0 || (b * b - a * a) == 0.0)
                  ? (j == 0 ? (b - a) / (a + b + 2.0) : 0.0)
                  : (b * b - a * a) / (s * (s + 2.0));
    const double jj = j + 1.0;
    const double t = 2.0 * jj + a + b;
    // (jj+a+b)/(t-1) equals 1 at jj=1.
    const double ratio = jj == 1.0 ? 1.0 : (jj + a + b) / (t - 1.0);
    sub(j) = std::sqrt(4.0 * jj * (jj + a) * (jj + b) * ratio / (t * t * (t + 1.0)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
  const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
  const double p0 = 1.0 / std::sqrt(mu0);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    double x = es.eigenvalues()(j);
    for (int it = 0; it < 3; ++it) {
      const RecurrenceValue v = orthonormal_at(x, diag, sub, p0);
      if (v.dp == 0.0) break;
      const double step = v.p / v.dp;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(std::abs(x), 1e-3)) break;
    }
    rule.nodes[j] = x;
    rule.weights[j] = 1.0 / orthonormal_at(x, diag, sub, p0).christoffel;
  }
  return rule;
}

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace bicyclide
