#include "bicyclide/greens.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include "bicyclide/errors.hpp"
#include "bicyclide/legendre.hpp"
#include "bicyclide/quadrature.hpp"
#include "bicyclide/wangerin.hpp"

namespace bicyclide {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

double parity_sign(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

// Runs body(i) for i in [0, count), in parallel when requested; the first
// exception thrown by any iteration is rethrown on the calling thread.
template <class F>
void for_each_index(int count, Execution exec, F&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(std::max(count, 0)));
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < count; ++i) body(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Least-squares slope of log(values) over the second half, as a ratio.
double fit_ratio(const std::vector<double>& values) {
  const int count = static_cast<int>(values.size());
  const int start = count / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (int i = start; i < count; ++i) {
    if (!(values[static_cast<std::size_t>(i)] > 0.0)) continue;
    const double y = std::log(values[static_cast<std::size_t>(i)]);
    sx += i;
    sy += y;
    sxx += double(i) * i;
    sxy += i * y;
    ++used;
  }
  if (used < 2) return 0.0;
  const double slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
  return std::exp(slope);
}

double tail_from(double last, double ratio) {
  if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
  return last / (1.0 - ratio);
}

BiCyclidePoint off_axis(const CartesianPoint& q, const Modulus& mod) {
  const double R = std::hypot(q.x, q.y);
  const double norm = std::sqrt(R * R + q.z * q.z);
  if (R <= 1e-13 * (1.0 + norm))
    throw DomainError("expansion points must lie off the z-axis");
  return from_cartesian(q, mod);
}

double cyl_R(const BiCyclidePoint& p) { return to_cylindrical(p).R; }

}  // namespace

double direct_distance(const CartesianPoint& q, const CartesianPoint& qstar) {
  const double d = std::sqrt((q.x - qstar.x) * (q.x - qstar.x) + (q.y - qstar.y) * (q.y - qstar.y) +
                             (q.z - qstar.z) * (q.z - qstar.z));
  if (!(d > 0.0)) throw DomainError("direct distance requires distinct points");
  return 1.0 / d;
}

double expansion_term(ExpansionKind kind, int m, int n, const BiCyclidePoint& p,
                      const BiCyclidePoint& pstar) {
  const Modulus& mod = p.modulus;
  const double nu = std::abs(m) - 0.5;
  const double scale = 1.0 / std::sqrt(cyl_R(p) * cyl_R(pstar));
  if (kind == ExpansionKind::first) {
    const double Kp = mod.bigKprime();
    const EigenSolutionPtr sol = eigen(nu, n, mod);
    const double wh = wronskian_w(m, n, mod);
    return 2.0 / wh * scale * eval_interior(*sol, p.s) * eval_interior(*sol, pstar.s) *
           eval_edge_profile(*sol, Kp - p.t).w * eval_edge_profile(*sol, Kp + pstar.t).w;
  }
  const Modulus mod2 = mod.complement();
  const double K = mod.bigK();
  const EigenSolutionPtr sol = eigen(nu, n, mod2);
  const double wh = wronskian_w(m, n, mod2);
  return 2.0 / wh * scale * eval_edge_profile(*sol, K + p.s).w *
         eval_edge_profile(*sol, K - pstar.s).w * eval_interior(*sol, p.t) *
         eval_interior(*sol, pstar.t);
}


SeriesResult expand_distance(const CartesianPoint& q, const CartesianPoint& qstar,
                             ExpansionKind kind, const Modulus& modulus, int m_max, int n_max,
                             Execution exec) {
  if (m_max < 0 || n_max < 0) throw DomainError("truncation bounds must be >= 0");
  const double direct = direct_distance(q, qstar);
  const BiCyclidePoint p = off_axis(q, modulus);
  const BiCyclidePoint ps = off_axis(qstar, modulus);
  if (kind == ExpansionKind::first && !(ps.t < p.t))
    throw PreconditionError("requires t* < t for the first-kind expansion (t = " +
                            std::to_string(p.t) + ", t* = " + std::to_string(ps.t) + ")");
  if (kind == ExpansionKind::second && !(p.s < ps.s))
    throw PreconditionError("requires s < s* for the second-kind expansion (s = " +
                            std::to_string(p.s) + ", s* = " + std::to_string(ps.s) + ")");

  const auto M = static_cast<std::size_t>(m_max + 1);
  const auto N = static_cast<std::size_t>(n_max + 1);
  std::vector<std::vector<double>> coeff(M, std::vector<double>(N));
  for_each_index(m_max + 1, exec, [&](int m) {
    for (int n = 0; n <= n_max; ++n)
      coeff[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] =
          expansion_term(kind, m, n, p, ps);
  });

  SeriesResult out;
  out.m_max = m_max;
  out.n_max = n_max;
  out.direct_value = direct;
  out.term_magnitudes.assign(M, std::vector<double>(N));
  const double dphi = p.phi - ps.phi;
  const int shells = m_max + n_max + 1;
  out.shell_sums.assign(static_cast<std::size_t>(shells), 0.0);
  std::vector<double> shell_max(static_cast<std::size_t>(shells), 0.0);
  double last_layer = 0.0;
  for (int sh = 0; sh < shells; ++sh) {
    for (int m = std::max(0, sh - n_max); m <= std::min(sh, m_max); ++m) {
      const int n = sh - m;
      const double A = coeff[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
      const double eps = m == 0 ? 1.0 : 2.0;
      const double mag = eps * std::abs(A);
      out.term_magnitudes[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] = mag;
      out.shell_sums[static_cast<std::size_t>(sh)] += eps * A * std::cos(m * dphi);
      shell_max[static_cast<std::size_t>(sh)] = std::max(shell_max[static_cast<std::size_t>(sh)], mag);
      if (m == m_max || n == n_max) last_layer += mag;
    }
  }
  for (double v : out.shell_sums) out.value += v;
  shell_max.resize(static_cast<std::size_t>(std::min(m_max, n_max) + 1));
  out.fitted_ratio = fit_ratio(shell_max);
  out.tail_estimate = tail_from(last_layer, out.fitted_ratio);
  return out;
}

SeriesResult azimuthal_fourier(const CartesianPoint& q, const CartesianPoint& qstar, int m_max) {
  if (m_max < 0) throw DomainError("truncation bound must be >= 0");
  const double direct = direct_distance(q, qstar);
  const CylindricalPoint a{std::hypot(q.x, q.y), q.z, std::atan2(q.y, q.x)};
  const CylindricalPoint b{std::hypot(qstar.x, qstar.y), qstar.z, std::atan2(qstar.y, qstar.x)};
  if (!(a.R > 0.0) || !(b.R > 0.0)) throw DomainError("expansion points must lie off the z-axis");
  const double x = chi_cylindrical(a, b);
  const double pref = 1.0 / (kPi * std::sqrt(a.R * b.R));
  SeriesResult out;
  out.m_max = m_max;
  out.direct_value = direct;
  out.term_magnitudes.assign(static_cast<std::size_t>(m_max + 1), std::vector<double>(1));
  std::vector<double> mags;
  for (int m = 0; m <= m_max; ++m) {
    const double eps = m == 0 ? 1.0 : 2.0;
    const double Q = toroidal_Q(m, x);
    const double term = pref * eps * Q * std::cos(m * (a.phi - b.phi));
    out.shell_sums.push_back(term);
    out.term_magnitudes[static_cast<std::size_t>(m)][0] = pref * eps * std::abs(Q);
    mags.push_back(pref * eps * std::abs(Q));
    out.value += term;
  }
  out.fitted_ratio = fit_ratio(mags);
  out.tail_estimate = tail_from(mags.back(), out.fitted_ratio);
  return out;
}

SeriesResult addition_series(int m, const BiCyclidePoint& p, const BiCyclidePoint& pstar,
                             int n_max) {
  if (m < 0 || n_max < 0) throw DomainError("addition series requires m >= 0 and n_max >= 0");
  if (!(pstar.t < p.t))
    throw PreconditionError("requires t* < t for the addition series (t = " +
                            std::to_string(p.t) + ", t* = " + std::to_string(pstar.t) + ")");
  const Modulus& mod = p.modulus;
  const double Kp = mod.bigKprime();
  SeriesResult out;
  out.m_max = m;
  out.n_max = n_max;
  out.direct_value = toroidal_Q(m, chi(p, pstar));
  out.term_magnitudes.assign(1, {});
  for (int n = 0; n <= n_max; ++n) {
    const EigenSolutionPtr sol = eigen(m - 0.5, n, mod);
    const double term = 2.0 * kPi / wronskian_w(m, n, mod) * eval_interior(*sol, p.s) *
                        eval_interior(*sol, pstar.s) * eval_edge_profile(*sol, Kp - p.t).w *
                        eval_edge_profile(*sol, Kp + pstar.t).w;
    out.shell_sums.push_back(term);
    out.term_magnitudes[0].push_back(std::abs(term));
    out.value += term;
  }
  out.fitted_ratio = fit_ratio(out.term_magnitudes[0]);
  out.tail_estimate = tail_from(out.term_magnitudes[0].back(), out.fitted_ratio);
  return out;
}

SRule mapped_s_rule(int n, double K) {
  const QuadratureRule gl = gauss_legendre(n);
  SRule r;
  r.s.resize(gl.nodes.size());
  r.weights.resize(gl.nodes.size());
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double v = gl.nodes[i];
    r.s[i] = K * std::sin(0.5 * kPi * v);
    r.weights[i] = gl.weights[i] * K * 0.5 * kPi * std::cos(0.5 * kPi * v);
  }
  return r;
}

IntegralRelation integral_relation(int m, int n, double sstar, double t, double tstar,
                                   const Modulus& modulus, double tol) {
  if (m < 0 || n < 0) throw DomainError("integral relation requires m >= 0 and n >= 0");
  if (!(tstar < t))
    throw PreconditionError("requires t* < t for the integral relation (t = " + std::to_string(t) +
                            ", t* = " + std::to_string(tstar) + ")");
  const double K = modulus.bigK(), Kp = modulus.bigKprime();
  const EigenSolutionPtr sol = eigen(m - 0.5, n, modulus);
  const double wh = wronskian_w(m, n, modulus);
  const BiCyclidePoint ps{sstar, tstar, 0.0, modulus};

  // Value and the integral of the absolute integrand.
  auto integrate = [&](int nodes) {
    const SRule rule = mapped_s_rule(nodes, K);
    double sum = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < rule.s.size(); ++i) {
      const BiCyclidePoint p{rule.s[i], t, 0.0, modulus};
      const double f = rule.weights[i] * toroidal_Q(m, chi(p, ps)) * eval_interior(*sol, rule.s[i]);
      sum += f;
      mass += std::abs(f);
    }
    return std::pair{wh * sum, std::abs(wh) * mass};
  };

  IntegralRelation out{};
  out.rhs = 2.0 * kPi * eval_edge_profile(*sol, Kp - t).w * eval_interior(*sol, sstar) *
            eval_edge_profile(*sol, Kp + tstar).w;
  double prev = integrate(32).first;
  for (int nodes = 64; nodes <= 2048; nodes *= 2) {
    const auto [cur, mass] = integrate(nodes);
    const double scale = std::max({std::abs(cur), std::abs(out.rhs), 1e-3 * mass, 1e-300});
    if (std::abs(cur - prev) <= tol * scale) {
      out.lhs = cur;
      return out;
    }
    prev = cur;
  }
  throw NumericError("integral relation quadrature did not converge with 2048 nodes");
}

namespace {

struct SurfaceGrid {
  SRule rule;
  std::vector<double> phi;
  double phi_weight;
};

SurfaceGrid make_grid(int n_s, int n_phi, double K) {
  SurfaceGrid g{mapped_s_rule(n_s, K), std::vector<double>(static_cast<std::size_t>(n_phi)),
                2.0 * kPi / n_phi};
  for (int j = 0; j < n_phi; ++j) g.phi[static_cast<std::size_t>(j)] = -kPi + 2.0 * kPi * (j + 1) / n_phi;
  return g;
}

using CoeffMap = std::map<std::pair<int, int>, cplx>;

CoeffMap coefficients_on(const BoundaryData& g, double t0, const Modulus& mod, int m_max,
                         int n_max, const SurfaceGrid& grid, Execution exec) {
  const std::size_t ns = grid.rule.s.size(), nphi = grid.phi.size();
  // Boundary samples are taken serially; g is caller code.
  std::vector<cplx> samples(ns * nphi);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nphi; ++j) samples[i * nphi + j] = g(grid.rule.s[i], grid.phi[j]);
  (void)t0;

  const int count = 2 * m_max + 1;
  std::vector<std::vector<cplx>> rows(static_cast<std::size_t>(count));
  for_each_index(count, exec, [&](int idx) {
    const int m = idx - m_max;
    std::vector<cplx> fourier(ns);
    for (std::size_t i = 0; i < ns; ++i) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j < nphi; ++j)
        acc += samples[i * nphi + j] * std::polar(1.0, -m * grid.phi[j]);
      fourier[i] = acc * grid.phi_weight / (2.0 * kPi);
    }
    auto& row = rows[static_cast<std::size_t>(idx)];
    row.resize(static_cast<std::size_t>(n_max + 1));
    for (int n = 0; n <= n_max; ++n) {
      const EigenSolutionPtr sol = eigen(std::abs(m) - 0.5, n, mod);
      cplx acc = 0.0;
      for (std::size_t i = 0; i < ns; ++i)
        acc += grid.rule.weights[i] * fourier[i] * eval_interior(*sol, grid.rule.s[i]);
      row[static_cast<std::size_t>(n)] = acc;
    }
  });
  CoeffMap c;
  for (int idx = 0; idx < count; ++idx)
    for (int n = 0; n <= n_max; ++n)
      c[{idx - m_max, n}] = rows[static_cast<std::size_t>(idx)][static_cast<std::size_t>(n)];
  return c;
}

}  // namespace

DirichletCoefficients dirichlet_coefficients(const BoundaryData& g, double t0,
                                             const Modulus& modulus, int m_max, int n_max,
                                             const QuadSpec& quad, Execution exec) {
  const double Kp = modulus.bigKprime();
  if (!(t0 > 0.0 && t0 < Kp)) throw DomainError("t0 must lie in (0, K')");
  if (m_max < 0 || n_max < 0) throw DomainError("truncation bounds must be >= 0");
  const double K = modulus.bigK();
  int n_s = std::max(quad.n_s, 2 * n_max + 8);
  int n_phi = std::max(quad.n_phi, 2 * m_max + 4);
  CoeffMap prev = coefficients_on(g, t0, modulus, m_max, n_max, make_grid(n_s, n_phi, K), exec);
  bool converged = false;
  for (int level = 0; level < quad.max_doublings; ++level) {
    n_s *= 2;
    n_phi *= 2;
    CoeffMap cur = coefficients_on(g, t0, modulus, m_max, n_max, make_grid(n_s, n_phi, K), exec);
    double diff = 0.0, scale = 0.0;
    for (const auto& [key, v] : cur) {
      diff = std::max(diff, std::abs(v - prev[key]));
      scale = std::max(scale, std::abs(v));
    }
    prev = std::move(cur);
    if (diff <= quad.tol * std::max(scale, 1e-300)) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NumericError("boundary coefficient quadrature did not converge after " +
                       std::to_string(quad.max_doublings) + " refinements");

  DirichletCoefficients out{t0, modulus, m_max, n_max, std::move(prev), {}};
  for (const auto& [key, v] : out.c) {
    const auto [m, n] = key;
    const EigenSolutionPtr sol = eigen(std::abs(m) - 0.5, n, modulus);
    out.d[key] = v / (parity_sign(n) * eval_edge_profile(*sol, Kp - t0).w);
  }
  return out;
}

std::complex<double> dirichlet_solve(const DirichletCoefficients& coeffs, const BiCyclidePoint& p) {
  if (!(p.t > coeffs.t0))
    throw PreconditionError("requires t > t0 for a point of the interior domain (t = " +
                            std::to_string(p.t) + ", t0 = " + std::to_string(coeffs.t0) + ")");
  const Modulus& mod = coeffs.modulus;
  const double Kp = mod.bigKprime();
  const double R = to_cylindrical(p).R;
  cplx sum = 0.0;
  for (const auto& [key, d] : coeffs.d) {
    const auto [m, n] = key;
    const EigenSolutionPtr sol = eigen(std::abs(m) - 0.5, n, mod);
    const double G = eval_interior(*sol, p.s) * parity_sign(n) * eval_edge_profile(*sol, Kp - p.t).w;
    sum += d * G * std::polar(1.0, m * p.phi);
  }
  return sum / std::sqrt(R);
}

std::complex<double> external_from_integral(int m, int n, double t0, const CartesianPoint& qstar,
                                            const Modulus& modulus, const QuadSpec& quad,
                                            Execution exec) {
  const double K = modulus.bigK(), Kp = modulus.bigKprime();
  if (!(t0 > 0.0 && t0 < Kp)) throw DomainError("t0 must lie in (0, K')");
  if (n < 0) throw DomainError("harmonic index n must be >= 0");
  const double Rq = std::hypot(qstar.x, qstar.y);
  const double norm = std::sqrt(Rq * Rq + qstar.z * qstar.z);
  bool inside;
  if (Rq <= 1e-13 * (1.0 + norm)) {
    const AxisLocation loc = axis_locate(qstar.z, modulus);
    inside = loc.segment == AxisSegment::gamma4 ||
             (loc.segment != AxisSegment::gamma2 && loc.t >= t0);
  } else {
    inside = from_cartesian(qstar, modulus).t >= t0;
  }
  if (inside) throw PreconditionError("requires a point strictly outside the closed domain t >= t0");

  const EigenSolutionPtr sol = eigen(std::abs(m) - 0.5, n, modulus);
  const double U0 = parity_sign(n) * eval_edge_profile(*sol, Kp - t0).w;
  const double pref = wronskian_w(m, n, modulus) / (4.0 * kPi * U0);

  auto integrate = [&](int n_s, int n_phi) {
    const SurfaceGrid grid = make_grid(n_s, n_phi, K);
    std::vector<cplx> rows(grid.rule.s.size());
    for_each_index(static_cast<int>(rows.size()), exec, [&](int i) {
      const double s = grid.rule.s[static_cast<std::size_t>(i)];
      const double R = to_cylindrical(BiCyclidePoint{s, t0, 0.0, modulus}).R;
      const double radial = std::sqrt(R) * eval_interior(*sol, s);
      cplx acc = 0.0;
      for (double phi : grid.phi) {
        const CartesianPoint r = to_cartesian(BiCyclidePoint{s, t0, phi, modulus});
        acc += std::polar(1.0, m * phi) * direct_distance(r, qstar);
      }
      rows[static_cast<std::size_t>(i)] =
          grid.rule.weights[static_cast<std::size_t>(i)] * radial * acc * grid.phi_weight;
    });
    cplx sum = 0.0;
    for (const cplx& v : rows) sum += v;
    return pref * sum;
  };

  int n_s = quad.n_s, n_phi = quad.n_phi;
  cplx prev = integrate(n_s, n_phi);
  for (int level = 0; level < quad.max_doublings; ++level) {
    n_s *= 2;
    n_phi *= 2;
    const cplx cur = integrate(n_s, n_phi);
    if (std::abs(cur - prev) <= quad.tol * std::max(std::abs(cur), 1e-300)) return cur;
    prev = cur;
  }
  throw NumericError("surface quadrature did not converge after " +
                     std::to_string(quad.max_doublings) + " refinements");
}

}  // namespace bicyclide
