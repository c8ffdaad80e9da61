#include <doctest.h>

#include <cmath>
#include <random>

#include "bicyclide/errors.hpp"
#include "bicyclide/harmonics.hpp"
#include "oracles.hpp"

using namespace bicyclide;
using cplx = std::complex<double>;
using oracle::laplacian_residual;

namespace {

const HarmonicKind kAllKinds[] = {HarmonicKind::internal1, HarmonicKind::external1,
                                  HarmonicKind::internal2, HarmonicKind::external2};

CartesianPoint sample(std::mt19937_64& rng, const Modulus& mod) {
  std::uniform_real_distribution<double> u(-0.8, 0.8), phi(-3.0, 3.0);
  return to_cartesian({u(rng) * mod.bigK(), u(rng) * mod.bigKprime(), phi(rng), mod});
}

}  // namespace

TEST_CASE("parse kinds") {
  CHECK(parse_harmonic_kind("external2") == HarmonicKind::external2);
  CHECK_THROWS_AS(parse_harmonic_kind("internal3"), DomainError);
}

TEST_CASE("harmonicity of all four kinds") {
  const Modulus mod(0.7);
  std::mt19937_64 rng(1);
  for (HarmonicKind kind : kAllKinds)
    for (const auto& [m, n] : {std::pair{0, 0}, {1, 2}, {2, 1}}) {
      const HarmonicEvaluator u = make_evaluator({m, n, kind}, mod);
      for (int i = 0; i < 20; ++i) CHECK(laplacian_residual(u, sample(rng, mod), 1e-3) <= 1e-4);
    }
  const HarmonicEvaluator g = make_evaluator({1, 2, HarmonicKind::internal1}, mod);
  const HarmonicEvaluator not_harmonic = [&](const CartesianPoint& q) {
    return (q.x * q.x + q.y * q.y + q.z * q.z) * g(q);
  };
  CHECK(laplacian_residual(not_harmonic, to_cartesian({0.2, 0.1, 0.5, mod}), 1e-3) > 1e-2);
}

TEST_CASE("reflection and Kelvin identities") {
  const Modulus mod(0.6);
  std::mt19937_64 rng(2);
  for (const auto& [m, n] : {std::pair{0, 0}, {0, 1}, {1, 3}, {-2, 2}, {3, 0}}) {
    const HarmonicEvaluator g1 = make_evaluator({m, n, HarmonicKind::internal1}, mod);
    const HarmonicEvaluator h1 = make_evaluator({m, n, HarmonicKind::external1}, mod);
    const HarmonicEvaluator g2 = make_evaluator({m, n, HarmonicKind::internal2}, mod);
    const HarmonicEvaluator h2 = make_evaluator({m, n, HarmonicKind::external2}, mod);
    const HarmonicEvaluator kg1 = kelvin_transform(g1), kg2 = kelvin_transform(g2);
    const HarmonicEvaluator kk = kelvin_transform(kelvin_transform(g1));
    const double sign = n % 2 ? -1.0 : 1.0;
    for (int i = 0; i < 10; ++i) {
      const CartesianPoint q = sample(rng, mod);
      const cplx a = g1(q);
      CHECK(std::abs(h1(q) - g1({q.x, q.y, -q.z})) <= 1e-11 * std::abs(h1(q)));
      CHECK(std::abs(kg1(q) - sign * a) <= 1e-10 * std::abs(a));
      CHECK(std::abs(kg2(q) - h2(q)) <= 1e-10 * std::abs(h2(q)));
      CHECK(std::abs(kk(q) - a) <= 1e-12 * std::abs(a));
    }
  }
  const HarmonicEvaluator one = [](const CartesianPoint&) { return cplx(1.0); };
  const CartesianPoint q{0.3, -1.2, 0.5};
  CHECK(std::abs(kelvin_transform(one)(q) - 1.0 / std::sqrt(0.09 + 1.44 + 0.25)) <= 1e-15);
  CHECK_THROWS_AS(kelvin_transform(one)({0, 0, 0}), DomainError);
}

TEST_CASE("azimuthal factor and conjugation") {
  const Modulus mod(0.7);
  for (HarmonicKind kind : kAllKinds)
    for (int m : {1, 2, 3}) {
      const BiCyclidePoint p{0.3, -0.2, 0.4, mod}, p2{0.3, -0.2, 0.4 + 0.9, mod};
      const cplx a = eval_harmonic({m, 1, kind}, p), b = eval_harmonic({m, 1, kind}, p2);
      CHECK(std::abs(b - a * std::polar(1.0, m * 0.9)) <= 1e-12 * std::abs(a));
      CHECK(std::abs(eval_harmonic({-m, 1, kind}, p) - std::conj(a)) <= 1e-15 * std::abs(a));
    }
}

TEST_CASE("axis values and singular segments") {
  const Modulus mod(0.7);
  const double b = mod.b();
  struct Case {
    HarmonicKind kind;
    std::vector<double> regular, singular;
  };
  const std::vector<Case> cases = {
      {HarmonicKind::internal1, {-3.0 / b, -0.5 * b, 0.0, 0.7, 0.5 * (b + 1 / b), 2.0 / b}, {-0.5 * (b + 1 / b)}},
      {HarmonicKind::external1, {-2.0 / b, -0.5 * (b + 1 / b), 0.3 * b, 3.0 / b}, {0.5 * (b + 1 / b)}},
      {HarmonicKind::internal2, {-0.5 * (b + 1 / b), 0.0, 0.5 * b, 0.5 * (b + 1 / b)}, {3.0 / b, -2.0 / b}},
      {HarmonicKind::external2, {-2.0 / b, -0.5 * (b + 1 / b), 0.5 * (b + 1 / b), 3.0 / b}, {0.5 * b, -0.2 * b}},
  };
  for (const Case& c : cases)
    for (int n : {0, 1, 2}) {
      for (double z : c.regular) {
        const cplx axis = eval_harmonic({0, n, c.kind}, CartesianPoint{0, 0, z}, mod);
        const cplx near = eval_harmonic({0, n, c.kind}, CartesianPoint{1e-7, 0, z}, mod);
        CHECK(std::abs(axis - near) <= 1e-5 * std::max(1.0, std::abs(axis)));
        CHECK(eval_harmonic({1, n, c.kind}, CartesianPoint{0, 0, z}, mod) == cplx(0.0));
      }
      for (double z : c.singular)
        CHECK_THROWS_AS(eval_harmonic({0, n, c.kind}, CartesianPoint{0, 0, z}, mod), DomainError);
    }
  // Boundedness of internal1 along rays towards the regular segments.
  for (double z : {-3.0 / b, 0.0, 0.5 * (b + 1 / b), 3.0 / b}) {
    double worst = 0.0;
    for (double R = 1e-1; R > 1e-9; R /= 10)
      worst = std::max(worst, std::abs(eval_harmonic({0, 1, HarmonicKind::internal1}, CartesianPoint{R, 0, z}, mod)));
    CHECK(worst < 1e6);
  }
  // Growth towards the singular segment is caught by the guard.
  CHECK_THROWS_AS(eval_harmonic({0, 0, HarmonicKind::internal1},
                                BiCyclidePoint{0.1, -mod.bigKprime() + 1e-8, 0.0, mod}),
                  DomainError);
  CHECK_THROWS_AS(eval_harmonic({0, -1, HarmonicKind::internal1}, BiCyclidePoint{0.1, 0.1, 0.0, mod}),
                  DomainError);
}
