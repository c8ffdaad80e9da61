#include <doctest.h>

#include <cmath>

#include "bicyclide/errors.hpp"
#include "bicyclide/greens.hpp"

using namespace bicyclide;
using cplx = std::complex<double>;

TEST_CASE("expansion: serial and parallel paths agree bit for bit") {
  const Modulus mod(0.7);
  const double K = mod.bigK(), Kp = mod.bigKprime();
  const CartesianPoint q = to_cartesian({0.2 * K, 0.5 * Kp, 0.3, mod});
  const CartesianPoint qs = to_cartesian({-0.3 * K, -0.4 * Kp, -1.0, mod});
  for (ExpansionKind kind : {ExpansionKind::first, ExpansionKind::second}) {
    const CartesianPoint& a = kind == ExpansionKind::first ? q : qs;
    const CartesianPoint& b = kind == ExpansionKind::first ? qs : q;
    const SeriesResult s = expand_distance(a, b, kind, mod, 8, 12, Execution::serial);
    const SeriesResult p = expand_distance(a, b, kind, mod, 8, 12, Execution::parallel);
    CHECK(s.value == p.value);
    CHECK(s.tail_estimate == p.tail_estimate);
    CHECK(s.term_magnitudes == p.term_magnitudes);
    CHECK(s.shell_sums == p.shell_sums);
    const SeriesResult again = expand_distance(a, b, kind, mod, 8, 12, Execution::serial);
    CHECK(again.value == s.value);
  }
}

TEST_CASE("boundary quadratures: serial and parallel paths agree bit for bit") {
  const Modulus mod(0.7);
  const double Kp = mod.bigKprime();
  const double t0 = 0.3 * Kp;
  const BoundaryData g = [](double s, double phi) { return cplx(std::cos(s) + 0.3 * std::sin(2.0 * phi), s * std::cos(phi)); };
  const DirichletCoefficients s = dirichlet_coefficients(g, t0, mod, 4, 6, {}, Execution::serial);
  const DirichletCoefficients p = dirichlet_coefficients(g, t0, mod, 4, 6, {}, Execution::parallel);
  CHECK(s.c == p.c);
  CHECK(s.d == p.d);

  const CartesianPoint qs = to_cartesian({0.1 * mod.bigK(), 0.1 * Kp, 0.4, mod});
  const double t1 = 0.5 * Kp;
  for (const auto& [m, n] : {std::pair{0, 0}, {2, 1}}) {
    const cplx a = external_from_integral(m, n, t1, qs, mod, {}, Execution::serial);
    const cplx b = external_from_integral(m, n, t1, qs, mod, {}, Execution::parallel);
    CHECK(a == b);
  }
}

TEST_CASE("exceptions raised inside the parallel region reach the caller") {
  const Modulus mod(0.7);
  const BoundaryData bad = [](double, double) -> cplx { throw NumericError("boundary data failed"); };
  CHECK_THROWS_AS(dirichlet_coefficients(bad, 0.3 * mod.bigKprime(), mod, 2, 2, {}, Execution::parallel),
                  NumericError);
}
