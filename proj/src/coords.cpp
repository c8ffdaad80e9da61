#include "bicyclide/coords.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "bicyclide/errors.hpp"

namespace bicyclide {

namespace {

using cplx = std::complex<double>;

bool near(double a, double b, double scale) {
  return std::abs(a - b) <= 1e-12 * scale;
}

// z + iR as an analytic function of zeta = s - it, and its derivative.
void analytic_map(cplx zeta, double k, cplx& f, cplx& df) {
  const ComplexJacobiValues j = jacobi(zeta, k, 0.0);
  const cplx one(1.0, 0.0), i(0.0, 1.0);
  // (1+sn)/cn = cn/(1-sn); pick the form without cancellation.
  if (j.sn.real() < 0.0) {
    f = i * j.cn / (one - j.sn);
  } else {
    f = i * (one + j.sn) / j.cn;
  }
  df = i * j.dn / (one - j.sn);
}

}  // namespace

void validate(const BiCyclidePoint& p) {
  const Modulus& m = p.modulus;
  if (!(std::abs(p.s) < m.bigK() && std::abs(p.t) < m.bigKprime())) {
    std::ostringstream os;
    os.precision(17);
    os << "bi-cyclide point requires s in (-K,K), t in (-K',K'); got s=" << p.s
       << ", t=" << p.t << " with K=" << m.bigK() << ", K'=" << m.bigKprime();
    throw DomainError(os.str());
  }
  if (!(p.phi > -std::numbers::pi - 1e-15 && p.phi <= std::numbers::pi + 1e-15)) {
    throw DomainError("bi-cyclide point requires phi in (-pi, pi]");
  }
}

CylindricalPoint to_cylindrical(const BiCyclidePoint& p) {
  validate(p);
  const Modulus& m = p.modulus;
  const JacobiValues a = jacobi(p.s, m.k());
  const JacobiValues b = jacobi(p.t, m.kprime());
  const double den = 1.0 - a.sn * b.dn;
  return {a.cn * b.cn / den, a.dn * b.sn / den, p.phi};
}

CartesianPoint to_cartesian(const BiCyclidePoint& p) {
  const CylindricalPoint c = to_cylindrical(p);
  return {c.R * std::cos(c.phi), c.R * std::sin(c.phi), c.z};
}

BiCyclidePoint from_cartesian(const CartesianPoint& q, const Modulus& modulus) {
  const double R = std::hypot(q.x, q.y);
  const double rho2 = R * R + q.z * q.z;
  if (!(R > 1e-15 * (1.0 + std::sqrt(rho2)))) {
    throw DomainError("from_cartesian requires a point off the z-axis");
  }
  const double k = modulus.k(), kp = modulus.kprime();
  const double k2 = k * k, kp2 = kp * kp;
  const double A = (rho2 - 1.0) / (rho2 + 1.0);  // sn(s) dn(t,k')
  const double B = 2.0 * q.z / (rho2 + 1.0);      // dn(s) sn(t,k')
  const double C = 2.0 * R / (rho2 + 1.0);        // cn(s) cn(t,k')

  const double bq = kp2 - k2 * C * C - B * B;
  const double disc = std::sqrt(bq * bq + 4.0 * k2 * kp2 * C * C);
  const double P = bq > 0.0 ? 2.0 * kp2 * C * C / (bq + disc) : (disc - bq) / (2.0 * k2);
  const double c = 1.0 + k2 * A * A - kp2 * B * B;
  const double S = 2.0 * A * A / (c + std::sqrt(std::max(c * c - 4.0 * k2 * A * A, 0.0)));
  const double T = B * B / (kp2 + k2 * P);
  const double Q = C * C / P;

  double s = inverse_sn(std::copysign(std::sqrt(S), A), P, k);
  double t = inverse_sn(std::copysign(std::sqrt(T), B), Q, kp);
  const double phi = std::atan2(q.y, q.x);

  // Newton polish on the analytic form of the map.
  const cplx target(q.z, R);
  cplx zeta(s, -t);
  cplx f, df;
  analytic_map(zeta, k, f, df);
  double resid = std::abs(f - target);
  for (int it = 0; it < 8 && resid > 1e-16 * (1.0 + std::abs(target)); ++it) {
    cplx step = (f - target) / df;
    bool improved = false;
    for (int damp = 0; damp < 6; ++damp) {
      const cplx trial = zeta - step;
      if (std::abs(trial.real()) < modulus.bigK() &&
          std::abs(trial.imag()) < modulus.bigKprime()) {
        cplx f1, df1;
        analytic_map(trial, k, f1, df1);
        const double r1 = std::abs(f1 - target);
        if (r1 < resid) {
          zeta = trial;
          f = f1;
          df = df1;
          resid = r1;
          improved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  s = zeta.real();
  t = -zeta.imag();
  if (!(resid <= 1e-10 * (1.0 + std::abs(target)))) {
    std::ostringstream os;
    os.precision(17);
    os << "from_cartesian did not converge: residual " << resid << " at (" << q.x
       << ", " << q.y << ", " << q.z << ")";
    throw NumericError(os.str());
  }
  return {s, t, phi == -std::numbers::pi ? std::numbers::pi : phi, modulus};
}

MetricCoefficients metric_h(const BiCyclidePoint& p) {
  const CylindricalPoint c = to_cylindrical(p);
  const Modulus& m = p.modulus;
  const JacobiValues a = jacobi(p.s, m.k());
  const JacobiValues b = jacobi(p.t, m.kprime());
  const double dc = a.dn / a.cn;
  const double sc = b.sn / b.cn;
  const double h = c.R * std::sqrt(dc * dc + m.k() * m.k() * sc * sc);
  return {h, h, c.R};
}

CyclidePolys cyclide_polys(const CartesianPoint& q, double s0, double t0,
                           const Modulus& modulus) {
  const double k = modulus.k(), kp = modulus.kprime();
  const JacobiValues a0 = jacobi(s0, k);
  const JacobiValues b0 = jacobi(t0, kp);
  const double rho2 = q.x * q.x + q.y * q.y + q.z * q.z;
  const double plus = (rho2 + 1.0) * (rho2 + 1.0);
  const double minus = (rho2 - 1.0) * (rho2 - 1.0);
  const double sd_t0 = b0.sn / b0.dn;
  const double sd_s0 = a0.sn / a0.dn;
  const double P1 = b0.sn * b0.sn * plus - k * k * sd_t0 * sd_t0 * minus - 4.0 * q.z * q.z;
  const double P2 = a0.sn * a0.sn * plus - minus - 4.0 * kp * kp * sd_s0 * sd_s0 * q.z * q.z;
  return {P1, P2};
}

CyclidePolys cyclide_polys_factored(const BiCyclidePoint& p, double s0, double t0) {
  validate(p);
  const Modulus& m = p.modulus;
  const double k = m.k(), kp = m.kprime();
  const JacobiValues a = jacobi(p.s, k);
  const JacobiValues b = jacobi(p.t, kp);
  const JacobiValues a0 = jacobi(s0, k);
  const JacobiValues b0 = jacobi(t0, kp);
  const double den = (1.0 - a.sn * b.dn) * (1.0 - a.sn * b.dn);
  const double P1 = 4.0 * (b0.sn * b0.sn - b.sn * b.sn) *
                    (b0.dn * b0.dn - k * k * a.sn * a.sn) / (b0.dn * b0.dn * den);
  const double P2 = 4.0 * (a0.sn * a0.sn - a.sn * a.sn) *
                    (b.dn * b.dn - k * k * a0.sn * a0.sn) / (a0.dn * a0.dn * den);
  return {P1, P2};
}

double chi(const BiCyclidePoint& p, const BiCyclidePoint& pstar) {
  validate(p);
  validate(pstar);
  const double k = p.modulus.k(), kp = p.modulus.kprime();
  const JacobiValues a = jacobi(p.s, k), b = jacobi(p.t, kp);
  const JacobiValues as = jacobi(pstar.s, k), bs = jacobi(pstar.t, kp);
  const double nc = 1.0 / (a.cn * b.cn * as.cn * bs.cn);
  return nc - (a.dn * b.sn * as.dn * bs.sn) * nc - (a.sn * b.dn * as.sn * bs.dn) * nc;
}

double chi_cylindrical(const CylindricalPoint& q, const CylindricalPoint& qstar) {
  if (!(q.R > 0.0 && qstar.R > 0.0)) {
    throw DomainError("chi requires both points off the z-axis");
  }
  const double dz = q.z - qstar.z;
  const double dR = q.R - qstar.R;
  // Written as 1 + ((R-R*)^2 + (z-z*)^2) / (2RR*).
  return 1.0 + (dR * dR + dz * dz) / (2.0 * q.R * qstar.R);
}

double axis_map(double s, double t, const Modulus& modulus) {
  const double K = modulus.bigK(), Kp = modulus.bigKprime();
  const double k = modulus.k(), kp = modulus.kprime();
  const bool right = near(s, K, K), left = near(s, -K, K);
  const bool top = near(t, Kp, Kp), bottom = near(t, -Kp, Kp);
  if (!(right || left || top || bottom) || std::abs(s) > K * (1 + 1e-12) ||
      std::abs(t) > Kp * (1 + 1e-12)) {
    throw DomainError("axis_map requires a point on the rectangle boundary");
  }
  if (right) {
    if (std::abs(t) <= 1e-15 * Kp) {
      throw DomainError("axis_map: the corner (K,0) is excluded");
    }
    const JacobiValues b = jacobi(t, kp);
    return (1.0 + b.dn) / (kp * b.sn);  // gamma1 / gamma5
  }
  if (bottom || top) {
    const JacobiValues a = jacobi(s, k);
    const double z = a.dn / (1.0 - k * a.sn);
    return bottom ? -z : z;  // gamma2 / gamma4
  }
  const JacobiValues b = jacobi(t, kp);
  return kp * b.sn / (1.0 + b.dn);  // gamma3
}

AxisLocation axis_locate(double z, const Modulus& modulus) {
  const double K = modulus.bigK(), Kp = modulus.bigKprime();
  const double k = modulus.k(), kp = modulus.kprime(), b = modulus.b();
  if (!std::isfinite(z)) {
    throw DomainError("axis_locate: infinity corresponds to the excluded corner (K,0)");
  }
  const double az = std::abs(z);
  if (az <= b) {
    const double S = 2.0 * z / (kp * (1.0 + z * z));
    return {-K, inverse_sn(S, (1.0 - S) * (1.0 + S), kp), AxisSegment::gamma3};
  }
  if (az < 1.0 / b) {
    const double sigma = (z * z - 1.0) / (k * (z * z + 1.0));
    const double s = inverse_sn(sigma, (1.0 - sigma) * (1.0 + sigma), k);
    return z < 0 ? AxisLocation{s, -Kp, AxisSegment::gamma2}
                 : AxisLocation{s, Kp, AxisSegment::gamma4};
  }
  const double S = 2.0 * z / (kp * (1.0 + z * z));
  const double t = inverse_sn(S, (1.0 - S) * (1.0 + S), kp);
  return {K, t, z < 0 ? AxisSegment::gamma1 : AxisSegment::gamma5};
}

CartesianPoint inversion_M(const CartesianPoint& q) {
  const double den = q.x * q.x + q.y * q.y + (q.z - 1.0) * (q.z - 1.0);
  if (!(den > 0.0)) throw DomainError("inversion_M is undefined at (0,0,1)");
  return {2.0 * q.x / den, 2.0 * q.y / den,
          (q.x * q.x + q.y * q.y + q.z * q.z - 1.0) / den};
}

CartesianPoint kelvin_point(const CartesianPoint& q) {
  const double r2 = q.x * q.x + q.y * q.y + q.z * q.z;
  if (!(r2 > 0.0)) throw DomainError("kelvin_point is undefined at the origin");
  return {q.x / r2, q.y / r2, q.z / r2};
}

BiCyclidePoint moon_spencer_convert(double mu, double nu, double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw DomainError("moon_spencer_convert requires kappa in (0,1)");
  }
  const double Kk = complete_integrals(kappa).K;
  const double Kpk = complete_integrals(std::sqrt((1.0 - kappa) * (1.0 + kappa))).K;
  if (!(std::abs(mu) < Kk && nu > 0.0 && nu < Kpk)) {
    throw DomainError("moon_spencer_convert requires -K(kappa) < mu < K(kappa), "
                      "0 < nu < K'(kappa)");
  }
  const Modulus modulus((1.0 - kappa) / (1.0 + kappa));
  const double t = (1.0 + kappa) * mu;
  const double s = (1.0 + kappa) * nu - modulus.bigK();
  return {s, t, 0.0, modulus};
}

}  // namespace bicyclide
