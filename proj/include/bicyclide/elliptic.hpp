#pragma once

#include <complex>

namespace bicyclide {

/// Default distance from a pole below which complex Jacobi evaluation fails.
inline constexpr double kDefaultPoleThreshold = 1e-8;

struct CompleteIntegrals {
  double K;
  double E;
};

/// Complete elliptic integrals K(k), E(k) by the arithmetic-geometric mean.
CompleteIntegrals complete_integrals(double k);

/// Elliptic parameter bundle shared by all modules.
class Modulus {
 public:
  explicit Modulus(double k);

  double k() const { return k_; }
  double kprime() const { return kprime_; }
  double bigK() const { return K_; }
  double bigKprime() const { return Kprime_; }
  double omega() const { return omega_; }
  /// Axis landmark (1-k)/k'.
  double b() const { return b_; }

  /// The complementary modulus k'; its K and K' are this modulus' K' and K.
  Modulus complement() const;

 private:
  Modulus(double k, double kprime, double K, double Kprime);

  double k_, kprime_, K_, Kprime_, omega_, b_;
};

struct JacobiValues {
  double sn, cn, dn;
};

struct ComplexJacobiValues {
  std::complex<double> sn, cn, dn;
};

/// sn, cn, dn for real argument (descending Landen / AGM).
JacobiValues jacobi(double u, double k);

/// sn, cn, dn for complex argument via the addition theorem in u = x + iy.
ComplexJacobiValues jacobi(std::complex<double> u, double k,
                           double pole_threshold = kDefaultPoleThreshold);

enum class Glaisher { sc, cs, dc, cd, ns, nc, nd, ds, sd };

Glaisher parse_glaisher(const char* code);

std::complex<double> glaisher(Glaisher code, std::complex<double> u, double k,
                              double threshold = kDefaultPoleThreshold);
double glaisher(Glaisher code, double u, double k,
                double threshold = kDefaultPoleThreshold);

struct LandenDescent {
  double kappa;
  /// K'(k) - (1+kappa) K(kappa)
  double kprime_residual;
  /// 2K(k) - (1+kappa) K'(kappa)
  double k_residual;
};

LandenDescent landen_descend(double k);

/// Carlson's symmetric integral R_F(x, y, z).
double carlson_rf(double x, double y, double z);

/// Real u with sn(u,k) = sn_value and cn(u,k)^2 = cn2, taking |u| <= K.
double inverse_sn(double sn_value, double cn2, double k);

}  // namespace bicyclide
