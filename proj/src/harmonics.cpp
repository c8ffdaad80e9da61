#include "bicyclide/harmonics.hpp"

#include <cmath>
#include <string>

#include "bicyclide/errors.hpp"
#include "bicyclide/wangerin.hpp"

namespace bicyclide {

namespace {

using cplx = std::complex<double>;

double parity_sign(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

bool is_first_kind(HarmonicKind kind) {
  return kind == HarmonicKind::internal1 || kind == HarmonicKind::external1;
}

// +1 for the internal harmonic, -1 for the external one.
double orientation(HarmonicKind kind) {
  return kind == HarmonicKind::internal1 || kind == HarmonicKind::internal2 ? 1.0 : -1.0;
}

[[noreturn]] void singular(const HarmonicIndex& idx) {
  const char* what = idx.kind == HarmonicKind::internal1   ? "-1/b <= z <= -b"
                     : idx.kind == HarmonicKind::external1 ? "b <= z <= 1/b"
                     : idx.kind == HarmonicKind::internal2 ? "|z| >= 1/b"
                                                           : "|z| <= b";
  throw DomainError(std::string("harmonic is singular on the axis segment ") + what);
}

// Edge factor argument and its distance to the singular end 2L.
double edge_argument(double sigma, double L, double coord) { return L - sigma * coord; }

cplx azimuthal(int m, double phi) { return std::polar(1.0, m * phi); }

// Analytic value on the z-axis (m = 0 only; m != 0 vanishes there).
double axis_value(const HarmonicIndex& idx, double z, const Modulus& mod) {
  const AxisLocation loc = axis_locate(z, mod);
  const double K = mod.bigK(), Kp = mod.bigKprime();
  const double k = mod.k(), kp = mod.kprime();
  const double sigma = orientation(idx.kind);
  const double sign_n = parity_sign(idx.n);
  const bool on_s_edge = std::abs(std::abs(loc.s) - K) <= 1e-12 * K;
  const bool on_t_edge = std::abs(std::abs(loc.t) - Kp) <= 1e-12 * Kp;

  if (is_first_kind(idx.kind)) {
    // Singular where the edge factor argument K' - sigma t reaches 2K'.
    if (on_t_edge && loc.t * sigma < 0.0) singular(idx);
    if (idx.m != 0) return 0.0;
    const EigenSolutionPtr sol = eigen(-0.5, idx.n, mod);
    const double c0 = sol->frobenius_c()[0];
    if (on_t_edge) {
      if (on_s_edge) {
        const double par = loc.s > 0.0 ? 1.0 : sign_n;
        const double snv = loc.s > 0.0 ? 1.0 : -1.0;
        return par * c0 / std::sqrt(kp) * sign_n * std::sqrt((1.0 - k * snv) / k);
      }
      const JacobiValues a = jacobi(loc.s, k);
      return eval_interior(*sol, loc.s) * sign_n * std::sqrt((1.0 - k * a.sn) / (k * a.cn));
    }
    const JacobiValues b = jacobi(loc.t, kp);
    const double B = sign_n * eval_edge_profile(*sol, edge_argument(sigma, Kp, loc.t)).w;
    const double one_minus_dn = kp * kp * b.sn * b.sn / (1.0 + b.dn);
    if (loc.s > 0.0) return c0 * std::sqrt(one_minus_dn / (kp * b.cn)) * B;
    return sign_n * c0 * std::sqrt((1.0 + b.dn) / (kp * b.cn)) * B;
  }

  // Second kind: factor (-1)^n w~(K + sigma s) vanishes at s = -sigma K.
  if (on_s_edge && loc.s * sigma > 0.0) singular(idx);
  if (idx.m != 0) return 0.0;
  const Modulus mod2 = mod.complement();
  const EigenSolutionPtr sol = eigen(-0.5, idx.n, mod2);
  const double c0 = sol->frobenius_c()[0];
  if (on_t_edge) {
    const double par = loc.t > 0.0 ? 1.0 : sign_n;
    if (on_s_edge) {
      const double snv = loc.s > 0.0 ? 1.0 : -1.0;
      return sign_n * par * c0 / std::sqrt(kp) * std::sqrt((1.0 - k * snv) / k);
    }
    const JacobiValues a = jacobi(loc.s, k);
    const double A = sign_n * eval_edge_profile(*sol, edge_argument(-sigma, K, loc.s)).w;
    return A * par * c0 * std::sqrt((1.0 - k * a.sn) / (k * a.cn));
  }
  const JacobiValues b = jacobi(loc.t, kp);
  const double Wt = eval_interior(*sol, loc.t);
  const double factor = loc.s > 0.0 ? kp * kp * b.sn * b.sn / (1.0 + b.dn) : 1.0 + b.dn;
  return sign_n * std::sqrt(factor / (kp * b.cn)) * Wt;
}

}  // namespace

HarmonicKind parse_harmonic_kind(const std::string& name) {
  if (name == "internal1") return HarmonicKind::internal1;
  if (name == "external1") return HarmonicKind::external1;
  if (name == "internal2") return HarmonicKind::internal2;
  if (name == "external2") return HarmonicKind::external2;
  throw DomainError("unknown harmonic kind '" + name +
                    "' (expected internal1, external1, internal2, external2)");
}

std::complex<double> eval_harmonic(const HarmonicIndex& idx, const BiCyclidePoint& p,
                                   double guard) {
  if (idx.n < 0) throw DomainError("harmonic index n must be >= 0");
  const Modulus& mod = p.modulus;
  const CylindricalPoint c = to_cylindrical(p);
  const double nu = std::abs(idx.m) - 0.5;
  const double sigma = orientation(idx.kind);
  const double sign_n = parity_sign(idx.n);
  double value;
  if (is_first_kind(idx.kind)) {
    const double Kp = mod.bigKprime();
    const double r = edge_argument(sigma, Kp, p.t);
    if (2.0 * Kp - r < guard) singular(idx);
    const EigenSolutionPtr sol = eigen(nu, idx.n, mod);
    value = eval_interior(*sol, p.s) * sign_n * eval_edge_profile(*sol, r).w;
  } else {
    const Modulus mod2 = mod.complement();
    const double K = mod.bigK();
    const double r = edge_argument(-sigma, K, p.s);
    if (2.0 * K - r < guard) singular(idx);
    const EigenSolutionPtr sol = eigen(nu, idx.n, mod2);
    value = sign_n * eval_edge_profile(*sol, r).w * eval_interior(*sol, p.t);
  }
  return value / std::sqrt(c.R) * azimuthal(idx.m, p.phi);
}

std::complex<double> eval_harmonic(const HarmonicIndex& idx, const CartesianPoint& q,
                                   const Modulus& modulus, double guard) {
  const double R = std::hypot(q.x, q.y);
  const double norm = std::sqrt(R * R + q.z * q.z);
  if (R <= 1e-13 * (1.0 + norm)) return axis_value(idx, q.z, modulus);
  return eval_harmonic(idx, from_cartesian(q, modulus), guard);
}

HarmonicEvaluator make_evaluator(const HarmonicIndex& idx, const Modulus& modulus) {
  return [idx, modulus](const CartesianPoint& q) { return eval_harmonic(idx, q, modulus); };
}

HarmonicEvaluator kelvin_transform(HarmonicEvaluator u) {
  return [u = std::move(u)](const CartesianPoint& q) {
    const double r = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
    if (!(r > 0.0)) throw DomainError("Kelvin transform is undefined at the origin");
    return u(kelvin_point(q)) / r;
  };
}

}  // namespace bicyclide
