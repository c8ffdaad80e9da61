#pragma once

#include "bicyclide/elliptic.hpp"

namespace bicyclide {

struct CartesianPoint {
  double x = 0.0, y = 0.0, z = 0.0;
};

struct CylindricalPoint {
  double R = 0.0, z = 0.0, phi = 0.0;
};

/// Point (s, t, phi) with s in (-K,K), t in (-K',K'), phi in (-pi,pi].
struct BiCyclidePoint {
  double s, t, phi;
  Modulus modulus;
};

/// Throws DomainError unless p lies in the open coordinate box.
void validate(const BiCyclidePoint& p);

CylindricalPoint to_cylindrical(const BiCyclidePoint& p);
CartesianPoint to_cartesian(const BiCyclidePoint& p);

/// Inverse map. Throws DomainError on the z-axis, NumericError if Newton
/// polishing fails.
BiCyclidePoint from_cartesian(const CartesianPoint& q, const Modulus& modulus);

struct MetricCoefficients {
  double h_s, h_t, h_phi;
};

MetricCoefficients metric_h(const BiCyclidePoint& p);

struct CyclidePolys {
  double P1, P2;
};

/// Quartic polynomials whose zero sets contain the surfaces t = +-t0, s = +-s0.
CyclidePolys cyclide_polys(const CartesianPoint& q, double s0, double t0,
                           const Modulus& modulus);

/// The same polynomials in factored form, evaluated from coordinates.
CyclidePolys cyclide_polys_factored(const BiCyclidePoint& p, double s0, double t0);

/// Kernel chi in the elliptic-function form.
double chi(const BiCyclidePoint& p, const BiCyclidePoint& pstar);

/// Kernel chi from cylindrical coordinates.
double chi_cylindrical(const CylindricalPoint& q, const CylindricalPoint& qstar);

/// Segment of the rectangle boundary, traversed clockwise starting at (K,0).
enum class AxisSegment { gamma1 = 1, gamma2, gamma3, gamma4, gamma5 };

/// z-coordinate of the axis image of a boundary point (s,t) of the closed
/// rectangle. Returns +-infinity only in the limit at the excluded corner.
double axis_map(double s, double t, const Modulus& modulus);

struct AxisLocation {
  double s, t;
  AxisSegment segment;
};

/// Boundary point (s,t) mapped to (0,0,z); the inverse of axis_map.
AxisLocation axis_locate(double z, const Modulus& modulus);

CartesianPoint inversion_M(const CartesianPoint& q);
CartesianPoint kelvin_point(const CartesianPoint& q);

/// Moon-Spencer (mu, nu) with parameter kappa to bi-cyclide (s, t).
BiCyclidePoint moon_spencer_convert(double mu, double nu, double kappa);

}  // namespace bicyclide
