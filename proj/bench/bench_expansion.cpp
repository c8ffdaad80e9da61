// Serial vs OpenMP timing for the expansion term table and the boundary
// coefficient quadrature. Eigen-solutions are warmed up before timing.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <omp.h>

#include "bicyclide/greens.hpp"

using namespace bicyclide;

namespace {

template <class F>
double seconds(F&& f, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

}  // namespace

int main() {
  const Modulus mod(0.7);
  const double K = mod.bigK(), Kp = mod.bigKprime();
  const CartesianPoint q = to_cartesian(BiCyclidePoint{0.2 * K, 0.5 * Kp, 0.3, mod});
  const CartesianPoint qs = to_cartesian(BiCyclidePoint{-0.3 * K, -0.4 * Kp, -1.0, mod});
  const int m_max = 8, n_max = 12;

  double serial_value = 0, parallel_value = 0;
  auto run_expand = [&](Execution e, double& v) {
    return [&, e] { v = expand_distance(q, qs, ExpansionKind::first, mod, m_max, n_max, e).value; };
  };
  run_expand(Execution::serial, serial_value)();
  const double t_serial = seconds(run_expand(Execution::serial, serial_value), 5);
  const double t_parallel = seconds(run_expand(Execution::parallel, parallel_value), 5);
  std::printf("threads %d\n", omp_get_max_threads());
  std::printf("expand_distance      serial %.4f s  parallel %.4f s  |diff| %.3g\n", t_serial,
              t_parallel, std::abs(serial_value - parallel_value));

  const double t0 = 0.2 * Kp;
  const BoundaryData g = [&](double s, double phi) {
    const BiCyclidePoint b{s, t0, phi, mod};
    return std::complex<double>(std::sqrt(to_cylindrical(b).R) * direct_distance(to_cartesian(b), qs));
  };
  QuadSpec quad;
  quad.max_doublings = 2;
  quad.tol = 1.0;
  std::complex<double> cs, cp;
  auto run_coeffs = [&](Execution e, std::complex<double>& c) {
    return [&, e] { c = dirichlet_coefficients(g, t0, mod, 8, 10, quad, e).c.at({1, 1}); };
  };
  run_coeffs(Execution::serial, cs)();
  const double c_serial = seconds(run_coeffs(Execution::serial, cs), 3);
  const double c_parallel = seconds(run_coeffs(Execution::parallel, cp), 3);
  std::printf("dirichlet_coefficients serial %.4f s  parallel %.4f s  |diff| %.3g\n", c_serial,
              c_parallel, std::abs(cs - cp));
  return 0;
}
