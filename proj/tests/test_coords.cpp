#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bicyclide/coords.hpp"
#include "bicyclide/errors.hpp"

using namespace bicyclide;
using cplx = std::complex<double>;

namespace {

const double kPi = std::numbers::pi;

double dist(const CartesianPoint& a, const CartesianPoint& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

CartesianPoint sub(const CartesianPoint& a, const CartesianPoint& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

double dot(const CartesianPoint& a, const CartesianPoint& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

}  // namespace

TEST_CASE("forward map landmarks") {
  const Modulus mod(0.7);
  const CartesianPoint q = to_cartesian({0.0, 0.0, 0.0, mod});
  CHECK(q.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.y == 0.0);
  CHECK(q.z == 0.0);
  for (double f : {-0.9, -0.3, 0.2, 0.8}) {
    const CartesianPoint u = to_cartesian({0.0, f * mod.bigKprime(), 1.1, mod});
    CHECK(dot(u, u) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(to_cartesian({mod.bigK(), 0.1, 0.0, mod}), DomainError);
  CHECK_THROWS_AS(to_cartesian({0.1, 0.1, -3.5, mod}), DomainError);
}

TEST_CASE("inverse map") {
  const Modulus mod(0.7);
  const BiCyclidePoint o = from_cartesian({1.0, 0.0, 0.0}, mod);
  CHECK(std::abs(o.s) < 1e-14);
  CHECK(std::abs(o.t) < 1e-14);
  CHECK(o.phi == 0.0);
  for (double R : {0.05, 0.7, 1.9, 25.0}) CHECK(std::abs(from_cartesian({R, 0.0, 0.0}, mod).t) < 1e-13);
  CHECK_THROWS_AS(from_cartesian({0.0, 0.0, 0.4}, mod), DomainError);

  const BiCyclidePoint p{0.3 * mod.bigK(), 0.4 * mod.bigKprime(), kPi / 3, mod};
  const BiCyclidePoint back = from_cartesian(to_cartesian(p), mod);
  CHECK(std::abs(back.s - p.s) <= 1e-10);
  CHECK(std::abs(back.t - p.t) <= 1e-10);
  CHECK(std::abs(back.phi - p.phi) <= 1e-12);
}

TEST_CASE("bijectivity on a 20x20 grid") {
  for (double k : {0.05, 0.3, 0.7, 0.95}) {
    const Modulus mod(k);
    double worst = 0.0, worst_xyz = 0.0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const BiCyclidePoint p{mod.bigK() * (-0.975 + 1.95 * i / 19.0),
                               mod.bigKprime() * (-0.975 + 1.95 * j / 19.0), 0.4, mod};
        const CartesianPoint q = to_cartesian(p);
        const BiCyclidePoint b = from_cartesian(q, mod);
        worst = std::max({worst, std::abs(b.s - p.s), std::abs(b.t - p.t)});
        worst_xyz = std::max(worst_xyz, dist(to_cartesian(b), q) / (1.0 + std::sqrt(dot(q, q))));
      }
    CHECK(worst <= 1e-10);
    CHECK(worst_xyz <= 1e-12);
  }
}

TEST_CASE("random Cartesian points round trip") {
  const Modulus mod(0.7);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const CartesianPoint q{u(rng), u(rng), u(rng)};
    CHECK(dist(to_cartesian(from_cartesian(q, mod)), q) <= 1e-10);
  }
}

TEST_CASE("geometric identities") {
  const Modulus mod(0.6);
  const double k = mod.k(), kp = mod.kprime();
  for (double fs : {-0.7, -0.1, 0.4, 0.9})
    for (double ft : {-0.8, 0.0, 0.5}) {
      const BiCyclidePoint p{fs * mod.bigK(), ft * mod.bigKprime(), 0.9, mod};
      const CylindricalPoint c = to_cylindrical(p);
      const JacobiValues a = jacobi(p.s, k), b = jacobi(p.t, kp);
      const double den = 1.0 - a.sn * b.dn;
      CHECK(c.R * c.R + c.z * c.z + 1.0 == doctest::Approx(2.0 / den).epsilon(1e-11));
      CHECK(c.R * c.R + c.z * c.z == doctest::Approx((1.0 + a.sn * b.dn) / den).epsilon(1e-11));
      // Reflection t -> -t is z -> -z.
      const CartesianPoint q = to_cartesian(p), r = to_cartesian({p.s, -p.t, p.phi, mod});
      CHECK(std::abs(q.x - r.x) <= 1e-12);
      CHECK(std::abs(q.y - r.y) <= 1e-12);
      CHECK(std::abs(q.z + r.z) <= 1e-12);
    }
}

TEST_CASE("metric coefficients and orthogonality by finite differences") {
  const Modulus mod(0.7);
  const MetricCoefficients h0 = metric_h({0.0, 0.0, 0.0, mod});
  CHECK(h0.h_s == doctest::Approx(1.0));
  CHECK(h0.h_t == doctest::Approx(1.0));
  CHECK(h0.h_phi == doctest::Approx(1.0));
  const double d = 1e-5;
  for (double fs : {-0.6, 0.1, 0.7})
    for (double ft : {-0.5, 0.2, 0.8}) {
      const BiCyclidePoint p{fs * mod.bigK(), ft * mod.bigKprime(), 0.3, mod};
      const MetricCoefficients h = metric_h(p);
      CHECK(h.h_s == h.h_t);
      CHECK(h.h_phi == doctest::Approx(to_cylindrical(p).R).epsilon(1e-15));
      auto diff = [&](double ds, double dt, double dphi) {
        const CartesianPoint a = to_cartesian({p.s + ds, p.t + dt, p.phi + dphi, mod});
        const CartesianPoint b = to_cartesian({p.s - ds, p.t - dt, p.phi - dphi, mod});
        const CartesianPoint v = sub(a, b);
        const double two = 2.0 * (ds + dt + dphi);
        return CartesianPoint{v.x / two, v.y / two, v.z / two};
      };
      const CartesianPoint es = diff(d, 0, 0), et = diff(0, d, 0), ep = diff(0, 0, d);
      const double ns = std::sqrt(dot(es, es)), nt = std::sqrt(dot(et, et)), np = std::sqrt(dot(ep, ep));
      CHECK(std::abs(ns - h.h_s) <= 1e-8 * h.h_s);
      CHECK(std::abs(nt - h.h_t) <= 1e-8 * h.h_t);
      CHECK(std::abs(np - h.h_phi) <= 1e-8 * h.h_phi);
      CHECK(std::abs(dot(es, et)) / (ns * nt) <= 1e-8);
      CHECK(std::abs(dot(es, ep)) / (ns * np) <= 1e-8);
      CHECK(std::abs(dot(et, ep)) / (nt * np) <= 1e-8);
    }
}

TEST_CASE("cyclide polynomials") {
  const Modulus mod(0.7);
  const double s0 = 0.35 * mod.bigK(), t0 = 0.45 * mod.bigKprime();
  for (double f : {-0.8, -0.2, 0.3, 0.9}) {
    const CartesianPoint on_t = to_cartesian({f * mod.bigK(), t0, 0.7, mod});
    const CartesianPoint on_s = to_cartesian({s0, f * mod.bigKprime(), -0.4, mod});
    const double scale_t = std::pow(1.0 + dot(on_t, on_t), 2);
    const double scale_s = std::pow(1.0 + dot(on_s, on_s), 2);
    CHECK(std::abs(cyclide_polys(on_t, s0, t0, mod).P1) <= 1e-10 * scale_t);
    CHECK(std::abs(cyclide_polys(on_s, s0, t0, mod).P2) <= 1e-10 * scale_s);
    const CartesianPoint mirrored = to_cartesian({f * mod.bigK(), -t0, 0.7, mod});
    CHECK(std::abs(cyclide_polys(mirrored, s0, t0, mod).P1) <= 1e-10 * scale_t);
  }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int i = 0; i < 50; ++i) {
    const BiCyclidePoint p{u(rng) * mod.bigK(), u(rng) * mod.bigKprime(), u(rng), mod};
    const CyclidePolys a = cyclide_polys(to_cartesian(p), s0, t0, mod);
    const CyclidePolys b = cyclide_polys_factored(p, s0, t0);
    CHECK(a.P1 == doctest::Approx(b.P1).epsilon(1e-10));
    CHECK(a.P2 == doctest::Approx(b.P2).epsilon(1e-10));
  }
}

TEST_CASE("chi dual formulas") {
  const Modulus mod(0.7);
  const BiCyclidePoint p{0.2, 0.3, 0.0, mod};
  CHECK(chi(p, p) == doctest::Approx(1.0).epsilon(1e-14));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int i = 0; i < 100; ++i) {
    const BiCyclidePoint a{u(rng) * mod.bigK(), u(rng) * mod.bigKprime(), 0.0, mod};
    const BiCyclidePoint b{u(rng) * mod.bigK(), u(rng) * mod.bigKprime(), 1.0, mod};
    const double x = chi(a, b);
    CHECK(x >= 1.0);
    CHECK(x == doctest::Approx(chi_cylindrical(to_cylindrical(a), to_cylindrical(b))).epsilon(1e-11));
  }
  const CylindricalPoint c{1.3, 0.2, 0.0};
  double prev = 1e300;
  for (double d : {0.5, 0.1, 0.01, 0.001}) {
    const double x = chi_cylindrical(c, {1.3 + d, 0.2, 0.0});
    CHECK(x > 1.0);
    CHECK(x < prev);
    prev = x;
  }
}

TEST_CASE("axis map") {
  const Modulus mod(0.7);
  const double K = mod.bigK(), Kp = mod.bigKprime(), b = mod.b();
  CHECK(axis_map(K, Kp, mod) == doctest::Approx(1.0 / b).epsilon(1e-14));
  CHECK(axis_map(-K, Kp, mod) == doctest::Approx(b).epsilon(1e-14));
  CHECK(axis_map(K, -Kp, mod) == doctest::Approx(-1.0 / b).epsilon(1e-14));
  CHECK(axis_map(-K, -Kp, mod) == doctest::Approx(-b).epsilon(1e-14));
  CHECK_THROWS_AS(axis_map(K, 0.0, mod), DomainError);
  CHECK_THROWS_AS(axis_map(0.1, 0.2, mod), DomainError);

  // Boundary path gamma1..gamma5 traverses the axis with z increasing.
  std::vector<std::pair<double, double>> path;
  const int n = 40;
  for (int i = 1; i <= n; ++i) path.push_back({K, -Kp * i / n});
  for (int i = 1; i <= n; ++i) path.push_back({K - 2 * K * i / n, -Kp});
  for (int i = 1; i <= n; ++i) path.push_back({-K, -Kp + 2 * Kp * i / n});
  for (int i = 1; i <= n; ++i) path.push_back({-K + 2 * K * i / n, Kp});
  for (int i = 1; i < n; ++i) path.push_back({K, Kp - Kp * i / n});
  double prev = -1e300;
  for (const auto& [s, t] : path) {
    const double z = axis_map(s, t, mod);
    CHECK(z > prev);
    prev = z;
    const AxisLocation loc = axis_locate(z, mod);
    CHECK(axis_map(loc.s, loc.t, mod) == doctest::Approx(z).epsilon(1e-12));
  }
  CHECK(axis_locate(-0.5 * b, mod).segment == AxisSegment::gamma3);
  CHECK(axis_locate(0.5 * (b + 1.0 / b), mod).segment == AxisSegment::gamma4);
  CHECK(axis_locate(-2.0 / b, mod).segment == AxisSegment::gamma1);

  // Interior points approaching the boundary approach the axis.
  for (double f : {-0.5, 0.3}) {
    const CylindricalPoint c = to_cylindrical({f * K, Kp * (1 - 1e-9), 0.0, mod});
    CHECK(c.R < 1e-6);
    CHECK(c.z == doctest::Approx(axis_map(f * K, Kp, mod)).epsilon(1e-6));
  }
}

TEST_CASE("inversion M and Kelvin point") {
  const Modulus mod(0.7);
  const CartesianPoint o = inversion_M({0.0, 0.0, -1.0});
  CHECK(dist(o, {0, 0, 0}) == 0.0);
  CHECK_THROWS_AS(inversion_M({0.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(kelvin_point({0.0, 0.0, 0.0}), DomainError);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int i = 0; i < 50; ++i) {
    const BiCyclidePoint p{u(rng) * mod.bigK(), u(rng) * mod.bigKprime(), u(rng) * 3.0, mod};
    const CartesianPoint q = to_cartesian(p);
    CHECK(dist(inversion_M(inversion_M(q)), q) <= 1e-12 * (1.0 + std::sqrt(dot(q, q))));
    const BiCyclidePoint m = from_cartesian(inversion_M(q), mod.complement());
    CHECK(std::abs(m.s - p.t) <= 1e-10);
    CHECK(std::abs(m.t - p.s) <= 1e-10);
    CHECK(std::abs(m.phi - p.phi) <= 1e-12);
    const BiCyclidePoint kp = from_cartesian(kelvin_point(q), mod);
    CHECK(std::abs(kp.s + p.s) <= 1e-10);
    CHECK(std::abs(kp.t - p.t) <= 1e-10);
  }
  const CartesianPoint unit{0.6, 0.0, 0.8};
  CHECK(dist(kelvin_point(unit), unit) <= 1e-15);
}

TEST_CASE("Moon-Spencer conversion") {
  const double kappa = 0.25;
  const BiCyclidePoint p0 = moon_spencer_convert(0.0, 0.5, kappa);
  CHECK(p0.modulus.k() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(p0.t == 0.0);
  const Modulus mk(kappa);
  for (double fm : {-0.7, 0.0, 0.4})
    for (double fn : {0.2, 0.5, 0.85}) {
      const double mu = fm * mk.bigK(), nu = fn * mk.bigKprime();
      const BiCyclidePoint p = moon_spencer_convert(mu, nu, kappa);
      const CylindricalPoint c = to_cylindrical(p);
      const cplx ms = std::sqrt(kappa) * jacobi(cplx(mu, nu), kappa).sn;
      CHECK(std::abs(cplx(c.z, c.R) - ms) <= 1e-10);
    }
  CHECK_THROWS_AS(moon_spencer_convert(0.0, 1.2 * mk.bigKprime(), kappa), DomainError);
  CHECK_THROWS_AS(moon_spencer_convert(0.0, 0.5, 1.5), DomainError);
}
