#include "bicyclide/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "bicyclide/errors.hpp"

namespace bicyclide {

namespace {

constexpr double kPi = std::numbers::pi;

void check_modulus(double k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw DomainError("modulus k must lie in (0,1), got " + std::to_string(k));
  }
}

double complementary(double k) { return std::sqrt((1.0 - k) * (1.0 + k)); }

// K(k') directly from k, without forming k'.
double complementary_K(double k) {
  double a = 1.0, b = k;
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-15 * a; ++i) {
    const double a1 = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = a1;
  }
  return kPi / (2.0 * a);
}

// sn, cn, dn for 0 <= u <= K/2 by the descending Landen sequence.
JacobiValues landen_sncndn(double u, double k, double kp) {
  if (k < 1e-300) return {std::sin(u), std::cos(u), 1.0};
  std::array<double, 32> a{}, c{};
  double an = 1.0, bn = kp, cn = k;
  int n = 0;
  a[0] = an;
  c[0] = cn;
  while (std::abs(cn) > 1e-17 * an && n < 30) {
    const double a1 = 0.5 * (an + bn);
    const double b1 = std::sqrt(an * bn);
    cn = 0.5 * (an - bn);
    an = a1;
    bn = b1;
    ++n;
    a[n] = an;
    c[n] = cn;
  }
  double phi = std::ldexp(an * u, n);
  double phi_next = phi;
  for (int j = n; j > 0; --j) {
    phi_next = phi;
    phi = 0.5 * (phi + std::asin(c[j] * std::sin(phi) / a[j]));
  }
  const double sn = std::sin(phi);
  const double cnv = std::cos(phi);
  const double dn = n > 0 ? cnv / std::cos(phi_next - phi)
                          : std::sqrt(1.0 - k * k * sn * sn);
  return {sn, cnv, dn};
}

}  // namespace

CompleteIntegrals complete_integrals(double k) {
  check_modulus(k);
  double a = 1.0, b = complementary(k), c = k;
  double sum = 0.5 * c * c;
  double pow2 = 0.5;
  for (int i = 0; i < 40 && std::abs(c) > 1e-17 * a; ++i) {
    const double a1 = 0.5 * (a + b);
    const double b1 = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = a1;
    b = b1;
    pow2 *= 2.0;
    sum += pow2 * c * c;
  }
  const double K = kPi / (2.0 * a);
  return {K, K * (1.0 - sum)};
}

Modulus::Modulus(double k) {
  check_modulus(k);
  k_ = k;
  kprime_ = complementary(k);
  K_ = complete_integrals(k_).K;
  Kprime_ = complementary_K(k_);
  omega_ = kPi / (2.0 * K_);
  b_ = (1.0 - k_) / kprime_;
}

Modulus::Modulus(double k, double kprime, double K, double Kprime)
    : k_(k), kprime_(kprime), K_(K), Kprime_(Kprime),
      omega_(kPi / (2.0 * K)), b_((1.0 - k) / kprime) {}

Modulus Modulus::complement() const {
  return Modulus(kprime_, k_, Kprime_, K_);
}

JacobiValues jacobi(double u, double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("modulus k must lie in [0,1), got " + std::to_string(k));
  }
  if (k == 0.0) return {std::sin(u), std::cos(u), 1.0};
  const double kp = complementary(k);
  // Two slots: callers alternate between k and k'.
  thread_local double cached_k[2] = {-1.0, -1.0}, cached_K[2] = {0.0, 0.0};
  thread_local int next_slot = 0;
  double K;
  if (k == cached_k[0]) {
    K = cached_K[0];
  } else if (k == cached_k[1]) {
    K = cached_K[1];
  } else {
    K = complete_integrals(k).K;
    cached_k[next_slot] = k;
    cached_K[next_slot] = K;
    next_slot ^= 1;
  }

  // Reduce to [-2K, 2K], then to [0, K] using odd/even symmetries.
  double v = std::remainder(u, 4.0 * K);
  double sign_sn = 1.0;
  if (v < 0.0) {
    v = -v;
    sign_sn = -1.0;
  }
  double sign_cn = 1.0;
  if (v > K) {
    v = 2.0 * K - v;
    sign_cn = -1.0;
  }
  JacobiValues r;
  if (v <= 0.5 * K) {
    r = landen_sncndn(v, k, kp);
  } else {
    // sn(K-x) = cd(x), cn(K-x) = k' sd(x), dn(K-x) = k' nd(x)
    const JacobiValues w = landen_sncndn(K - v, k, kp);
    r = {w.cn / w.dn, kp * w.sn / w.dn, kp / w.dn};
  }
  return {sign_sn * r.sn, sign_cn * r.cn, r.dn};
}

ComplexJacobiValues jacobi(std::complex<double> u, double k,
                           double pole_threshold) {
  check_modulus(k);
  const double x = u.real(), y = u.imag();
  if (y == 0.0) {
    const JacobiValues r = jacobi(x, k);
    return {r.sn, r.cn, r.dn};
  }
  const double kp = complementary(k);
  const double K = complete_integrals(k).K;
  const double Kp = complementary_K(k);
  // Poles at 2mK + (2n+1) i K'.
  const double pm = std::round(x / (2.0 * K));
  const double pn = std::round((y / Kp - 1.0) / 2.0);
  const std::complex<double> pole(2.0 * K * pm, (2.0 * pn + 1.0) * Kp);
  if (std::abs(u - pole) < pole_threshold) {
    throw SingularityError("Jacobi functions evaluated within " +
                           std::to_string(pole_threshold) +
                           " of a pole at 2mK+(2n+1)iK'");
  }
  const JacobiValues a = jacobi(x, k);
  const JacobiValues b = jacobi(y, kp);
  const double delta = b.cn * b.cn + k * k * a.sn * a.sn * b.sn * b.sn;
  const std::complex<double> sn(a.sn * b.dn, a.cn * a.dn * b.sn * b.cn);
  const std::complex<double> cn(a.cn * b.cn, -a.sn * a.dn * b.sn * b.dn);
  const std::complex<double> dn(a.dn * b.cn * b.dn, -k * k * a.sn * a.cn * b.sn);
  return {sn / delta, cn / delta, dn / delta};
}

Glaisher parse_glaisher(const char* code) {
  static constexpr std::array<const char*, 9> names = {
      "sc", "cs", "dc", "cd", "ns", "nc", "nd", "ds", "sd"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (std::string(code) == names[i]) return static_cast<Glaisher>(i);
  }
  throw DomainError(std::string("unknown Glaisher code ") + code);
}

std::complex<double> glaisher(Glaisher code, std::complex<double> u, double k,
                              double threshold) {
  const ComplexJacobiValues j = jacobi(u, k, threshold);
  const std::complex<double> one(1.0, 0.0);
  std::complex<double> num, den;
  switch (code) {
    case Glaisher::sc: num = j.sn; den = j.cn; break;
    case Glaisher::cs: num = j.cn; den = j.sn; break;
    case Glaisher::dc: num = j.dn; den = j.cn; break;
    case Glaisher::cd: num = j.cn; den = j.dn; break;
    case Glaisher::ns: num = one; den = j.sn; break;
    case Glaisher::nc: num = one; den = j.cn; break;
    case Glaisher::nd: num = one; den = j.dn; break;
    case Glaisher::ds: num = j.dn; den = j.sn; break;
    case Glaisher::sd: num = j.sn; den = j.dn; break;
  }
  if (std::abs(den) < threshold * std::max(1.0, std::abs(num))) {
    throw SingularityError("Glaisher quotient denominator vanishes");
  }
  return num / den;
}

double glaisher(Glaisher code, double u, double k, double threshold) {
  return glaisher(code, std::complex<double>(u, 0.0), k, threshold).real();
}

LandenDescent landen_descend(double k) {
  check_modulus(k);
  const double kappa = (1.0 - k) / (1.0 + k);
  const CompleteIntegrals ik = complete_integrals(k);
  const double Kp = complementary_K(k);
  const double Kkappa = complete_integrals(kappa).K;
  const double Kpkappa = complementary_K(kappa);
  return {kappa, Kp - (1.0 + kappa) * Kkappa,
          2.0 * ik.K - (1.0 + kappa) * Kpkappa};
}

double carlson_rf(double x, double y, double z) {
  if (x < 0.0 || y < 0.0 || z < 0.0) {
    throw DomainError("carlson_rf requires non-negative arguments");
  }
  for (int i = 0; i < 100; ++i) {
    const double mu = (x + y + z) / 3.0;
    const double dx = 1.0 - x / mu, dy = 1.0 - y / mu, dz = 1.0 - z / mu;
    const double eps = std::max({std::abs(dx), std::abs(dy), std::abs(dz)});
    if (eps < 1e-4) {
      const double e2 = dx * dy - dz * dz;
      const double e3 = dx * dy * dz;
      return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 -
              3.0 * e2 * e3 / 44.0) /
             std::sqrt(mu);
    }
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lambda = sx * sy + sx * sz + sy * sz;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
  }
  throw NumericError("carlson_rf did not converge");
}

double inverse_sn(double sn_value, double cn2, double k) {
  const double s = std::clamp(sn_value, -1.0, 1.0);
  const double c2 = std::max(cn2, 0.0);
  return s * carlson_rf(c2, (1.0 - k) * (1.0 + k) + k * k * c2, 1.0);
}

}  // namespace bicyclide
