#pragma once

#include <complex>
#include <functional>
#include <string>

#include "bicyclide/coords.hpp"

namespace bicyclide {

enum class HarmonicKind { internal1, external1, internal2, external2 };

HarmonicKind parse_harmonic_kind(const std::string& name);

/// Harmonic index (m, n); the Lame-Wangerin degree is |m| - 1/2.
struct HarmonicIndex {
  int m;
  int n;
  HarmonicKind kind;
};

/// Default guard distance to a singular axis segment, in (s,t) space.
inline constexpr double kSingularGuard = 1e-6;

/// Bi-cyclide harmonic at q, with the edge-profile phase convention C = 1.
///
/// First kind: R^{-1/2} W(s) (-1)^n w(K' -+ t) e^{im phi} (internal / external).
/// Second kind: R^{-1/2} (-1)^n w~(K +- s) W~(t) e^{im phi} with the modulus-k'
/// solution family. Points on the z-axis use the analytic limit.
std::complex<double> eval_harmonic(const HarmonicIndex& idx, const CartesianPoint& q,
                                   const Modulus& modulus,
                                   double guard = kSingularGuard);

/// Same, for a point already given in bi-cyclide coordinates.
std::complex<double> eval_harmonic(const HarmonicIndex& idx, const BiCyclidePoint& p,
                                   double guard = kSingularGuard);

using HarmonicEvaluator = std::function<std::complex<double>(const CartesianPoint&)>;

HarmonicEvaluator make_evaluator(const HarmonicIndex& idx, const Modulus& modulus);

/// u -> |r|^{-1} u(r / |r|^2).
HarmonicEvaluator kelvin_transform(HarmonicEvaluator u);

}  // namespace bicyclide
