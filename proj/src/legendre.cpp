#include "bicyclide/legendre.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bicyclide/elliptic.hpp"
#include "bicyclide/errors.hpp"

namespace bicyclide {

namespace {

void check_indices(int l, int m) {
  if (l < 0 || m < 0 || m > l) {
    throw DomainError("Legendre indices require 0 <= m <= l, got l=" +
                      std::to_string(l) + ", m=" + std::to_string(m));
  }
}

// (x^2-1)^{m/2} d^m P_l/dx^m by upward recurrence in l.
double legendre_P_above_one(int l, int m, double x) {
  const double root = std::sqrt((x - 1.0) * (x + 1.0));
  double pmm = 1.0;
  for (int i = 1; i <= m; ++i) pmm *= (2.0 * i - 1.0) * root;
  if (l == m) return pmm;
  double prev = pmm;
  double cur = x * (2.0 * m + 1.0) * pmm;
  for (int ll = m + 1; ll < l; ++ll) {
    const double next = ((2.0 * ll + 1.0) * x * cur - (ll + m) * prev) / (ll - m + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double legendre_Q_series(int l, int m, double x) {
  const double z = 1.0 / (x * x);
  const double a = 0.5 * (l + m) + 1.0;
  const double b = 0.5 * (l + m + 1.0);
  const double c = l + 1.5;
  double term = 1.0, sum = 1.0;
  for (int j = 0; j < 5000; ++j) {
    term *= (a + j) * (b + j) / ((c + j) * (j + 1.0)) * z;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) {
      const double log_pref = 0.5 * std::log(std::numbers::pi) + std::lgamma(l + m + 1.0) +
                              0.5 * m * std::log((x - 1.0) * (x + 1.0)) -
                              (l + 1.0) * std::log(2.0) - (l + m + 1.0) * std::log(x) -
                              std::lgamma(l + 1.5);
      return (m % 2 == 0 ? 1.0 : -1.0) * std::exp(log_pref) * sum;
    }
  }
  throw NumericError("hypergeometric series for Q_l^m did not converge");
}

// Miller backward recurrence in l, normalized at l = 0 by the closed form.
double legendre_Q_miller(int l, int m, double x) {
  const double lnz = std::log(x + std::sqrt((x - 1.0) * (x + 1.0)));
  const int top = l + static_cast<int>(std::ceil(20.0 / lnz)) + 10;
  double above = 0.0, cur = 1e-200, at_l = 0.0;
  for (int ll = top; ll >= 1; --ll) {
    const double below = ((2.0 * ll + 1.0) * x * cur - (ll - m + 1.0) * above) / (ll + m);
    above = cur;
    cur = below;
    if (ll - 1 == l) at_l = cur;
    if (std::abs(cur) > 1e200) {
      above *= 1e-200;
      cur *= 1e-200;
      at_l *= 1e-200;
    }
  }
  double q0;
  if (m == 0) {
    q0 = 0.5 * std::log((x + 1.0) / (x - 1.0));
  } else {
    double fact = 1.0;
    for (int i = 2; i < m; ++i) fact *= i;
    const double deriv = 0.5 * ((m - 1) % 2 == 0 ? 1.0 : -1.0) * fact *
                         (std::pow(x + 1.0, -m) - std::pow(x - 1.0, -m));
    q0 = std::pow((x - 1.0) * (x + 1.0), 0.5 * m) * deriv;
  }
  return at_l * (q0 / cur);
}

}  // namespace

double ferrers_P(int l, int m, double x) {
  check_indices(l, m);
  if (!(x > -1.0 && x < 1.0)) {
    throw DomainError("ferrers_P requires |x| < 1, got x=" + std::to_string(x));
  }
  const double root = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = 1.0;
  for (int i = 1; i <= m; ++i) pmm *= -(2.0 * i - 1.0) * root;
  if (l == m) return pmm;
  double prev = pmm;
  double cur = x * (2.0 * m + 1.0) * pmm;
  for (int ll = m + 1; ll < l; ++ll) {
    const double next = ((2.0 * ll + 1.0) * x * cur - (ll + m) * prev) / (ll - m + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

LegendrePQ legendre_PQ(int l, int m, double x) {
  check_indices(l, m);
  if (!(x > 1.0)) {
    throw DomainError("legendre_PQ requires x > 1, got x=" + std::to_string(x));
  }
  const double P = legendre_P_above_one(l, m, x);
  const double Q = x >= 1.5 ? legendre_Q_series(l, m, x) : legendre_Q_miller(l, m, x);
  return {P, Q};
}

double toroidal_Q(int m, double chi) {
  if (m < 0) throw DomainError("toroidal_Q requires m >= 0");
  if (!(chi > 1.0)) {
    throw DomainError("toroidal_Q requires chi > 1, got chi=" + std::to_string(chi));
  }
  const double kappa = std::sqrt(2.0 / (1.0 + chi));
  const CompleteIntegrals ke = complete_integrals(kappa);
  const double q_minus = kappa * ke.K;
  if (m == 0) return q_minus;

  const double lnz = std::log(chi + std::sqrt((chi - 1.0) * (chi + 1.0)));
  if (m * lnz < 1.15) {
    double prev = q_minus;
    double cur = chi * kappa * ke.K - std::sqrt(2.0 * (1.0 + chi)) * ke.E;
    for (int j = 1; j < m; ++j) {
      const double next = (2.0 * j * chi * cur - (j - 0.5) * prev) / (j + 0.5);
      prev = cur;
      cur = next;
    }
    return cur;
  }

  const int top = m + static_cast<int>(std::ceil(20.0 / lnz)) + 10;
  double above = 0.0, cur = 1e-200, at_m = 0.0;
  for (int j = top; j >= 1; --j) {
    // cur holds the value at degree j - 1/2.
    const double below = (2.0 * j * chi * cur - (j + 0.5) * above) / (j - 0.5);
    above = cur;
    cur = below;
    if (j - 1 == m) at_m = cur;
    if (std::abs(cur) > 1e200) {
      above *= 1e-200;
      cur *= 1e-200;
      at_m *= 1e-200;
    }
  }
  return at_m * (q_minus / cur);
}

}  // namespace bicyclide
