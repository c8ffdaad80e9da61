#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bicyclide/errors.hpp"
#include "bicyclide/limits.hpp"
#include "bicyclide/wangerin.hpp"

using namespace bicyclide;

namespace {

constexpr double kPi = std::numbers::pi;

double distance(const CartesianPoint& a, const CartesianPoint& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

}  // namespace

TEST_CASE("bi-spherical terms: closed form, symmetry, sum") {
  const double b00 = bispherical_B({0, 0, 1.0, 0.0, kPi / 2, kPi / 2});
  CHECK(b00 == doctest::Approx(std::sqrt(std::cosh(1.0)) * std::exp(-0.5)).epsilon(1e-15));
  for (int m = 1; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      CHECK(bispherical_B({-m, n, 0.8, -0.3, 1.2, 2.0}) == bispherical_B({m, n, 0.8, -0.3, 1.2, 2.0}));

  const double t = 0.9, ts = -0.4, th = 1.1, ths = 2.3, phi = 0.4, phis = -0.7;
  double sum = 0.0;
  for (int m = -20; m <= 20; ++m)
    for (int n = 0; n <= 30; ++n)
      sum += bispherical_B({m, n, t, ts, th, ths}) * std::cos(m * (phi - phis));
  const double exact = 1.0 / distance(bispherical_to_cartesian(t, th, phi),
                                      bispherical_to_cartesian(ts, ths, phis));
  CHECK(std::abs(sum - exact) <= 1e-8 * exact);

  CHECK_THROWS_AS(bispherical_B({0, 0, -0.3, 0.8, 1.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(bispherical_B({0, 0, 0.8, -0.3, 0.0, 1.0}), DomainError);
}

TEST_CASE("prolate terms: closed form, symmetry, sum") {
  const double ss = 1.3;
  CHECK(prolate_B({0, 0, 0.4, ss, 1.0, 2.0}) ==
        doctest::Approx(0.5 * std::log((std::cosh(ss) + 1.0) / (std::cosh(ss) - 1.0))).epsilon(1e-13));
  for (int m = 1; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      CHECK(prolate_B({-m, n, 0.4, 1.3, 1.0, 2.0}) == prolate_B({m, n, 0.4, 1.3, 1.0, 2.0}));

  const double s = 0.5, th = 1.0, ths = 2.2, phi = 0.3, phis = 1.4;
  double sum = 0.0;
  for (int m = -12; m <= 12; ++m)
    for (int n = 0; n <= 20; ++n) sum += prolate_B({m, n, s, ss, th, ths}) * std::cos(m * (phi - phis));
  const double exact = 1.0 / distance(prolate_to_cartesian(s, th, phi), prolate_to_cartesian(ss, ths, phis));
  CHECK(std::abs(sum - exact) <= 1e-7 * exact);

  CHECK_THROWS_AS(prolate_B({0, 0, 1.3, 0.4, 1.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(prolate_B({0, 0, -0.1, 0.4, 1.0, 1.0}), DomainError);
}

TEST_CASE("bi-cyclide terms sum to the expansion value") {
  const Modulus mod(0.7);
  const double K = mod.bigK(), Kp = mod.bigKprime();
  const BiCyclidePoint p{0.2 * K, 0.5 * Kp, 0.3, mod}, ps{-0.3 * K, -0.4 * Kp, -1.0, mod};
  const SeriesResult r = expand_distance(to_cartesian(p), to_cartesian(ps), ExpansionKind::first, mod, 6, 8);
  double sum = 0.0;
  for (int m = -6; m <= 6; ++m)
    for (int n = 0; n <= 8; ++n)
      sum += bicyclide_A(ExpansionKind::first, m, n, p.s, ps.s, p.t, ps.t, mod) * std::cos(m * (p.phi - ps.phi));
  CHECK(std::abs(sum - r.value) <= 1e-12 * r.value);

  // Second kind, in (sigma, t) variables with sigma = s + K.
  const BiCyclidePoint a{-0.3 * K, 0.5 * Kp, 0.3, mod}, b{0.2 * K, -0.4 * Kp, -1.0, mod};
  const SeriesResult r2 = expand_distance(to_cartesian(a), to_cartesian(b), ExpansionKind::second, mod, 6, 8);
  double sum2 = 0.0;
  for (int m = -6; m <= 6; ++m)
    for (int n = 0; n <= 8; ++n)
      sum2 += bicyclide_A(ExpansionKind::second, m, n, a.s + K, b.s + K, a.t, b.t, mod) *
              std::cos(m * (a.phi - b.phi));
  CHECK(std::abs(sum2 - 0.5 * mod.kprime() * r2.value) <= 1e-12 * sum2);

  CHECK_THROWS_AS(bicyclide_A(ExpansionKind::first, 0, 0, 0.1, 0.2, -0.3, 0.3, mod), PreconditionError);
  CHECK_THROWS_AS(bicyclide_A(ExpansionKind::second, 0, 0, 1.2, 0.8, 0.1, 0.2, mod), PreconditionError);
}

TEST_CASE("bi-spherical limit of single terms") {
  const Modulus mod(1e-3);
  const double s = 0.3, ss = -0.4, t = 0.8, ts = -0.3;
  const double A = bicyclide_A(ExpansionKind::first, 1, 2, s, ss, t, ts, mod);
  const double B = bispherical_B({1, 2, t, ts, kPi / 2 - s, kPi / 2 - ss});
  CHECK(std::abs(A - B) <= 1e-2 * std::abs(B));
}

TEST_CASE("prolate limit of single terms") {
  const Modulus mod(0.999);
  const double sg = 0.6, sgs = 1.1, t = 0.3, ts = -0.4;
  const double A = bicyclide_A(ExpansionKind::second, 1, 1, sg, sgs, t, ts, mod);
  const double B = prolate_B({1, 1, sg, sgs, kPi / 2 - t, kPi / 2 - ts});
  CHECK(std::abs(A - B) <= 5e-2 * std::abs(B));
}

TEST_CASE("coordinate maps approach their limits") {
  const Modulus small(1e-4);
  for (double s : {-1.2, -0.4, 0.5, 1.3})
    for (double t : {-1.5, 0.2, 2.0}) {
      const CartesianPoint a = to_cartesian({s, t, 0.7, small});
      const CartesianPoint b = bispherical_to_cartesian(t, kPi / 2 - s, 0.7);
      CHECK(distance(a, b) <= 1e-3 * std::max(1.0, std::hypot(b.x, b.y, b.z)));
    }
  const Modulus large(0.999);
  for (double sigma : {0.3, 0.8, 1.5})
    for (double t : {-1.0, 0.1, 1.2}) {
      const CartesianPoint a = scaled_bicyclide(sigma, t, -0.4, large);
      const CartesianPoint b = prolate_to_cartesian(sigma, kPi / 2 - t, -0.4);
      CHECK(distance(a, b) <= 1e-2 * std::max(1.0, std::hypot(b.x, b.y, b.z)));
    }
}

TEST_CASE("eigenvalues approach (n + nu + 1)^2 as the modulus vanishes") {
  const Modulus mod(1e-3);
  for (double nu : {-0.5, 0.5, 1.5})
    for (int n = 0; n <= 4; ++n) {
      const double target = (n + nu + 1.0) * (n + nu + 1.0);
      CHECK(std::abs(eigen(nu, n, mod)->lambda() - target) <= 1e-2 * target);
    }
}

TEST_CASE("edge-profile ratio approaches the Legendre Q ratio") {
  const auto rows = limit_profile_check(0.5, 0, 1.0, 0.5, {0.9, 0.99, 0.999});
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].gap < rows[0].gap);
  CHECK(rows[2].gap < rows[1].gap);
  CHECK(rows[2].gap <= 5e-2);
  for (const auto& row : limit_profile_check(0.5, 1, 0.7, 0.7, {0.9, 0.99}))
    CHECK(row.ratio == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(limit_profile_check(0.3, 0, 1.0, 0.5, {0.9}), DomainError);
}
