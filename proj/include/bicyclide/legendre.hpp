#pragma once

namespace bicyclide {

/// Ferrers function P_l^m(x) on (-1,1), including the (-1)^m phase.
double ferrers_P(int l, int m, double x);

struct LegendrePQ {
  double P;
  double Q;
};

/// Associated Legendre functions on (1,inf) in the real convention
/// P_l^m = (x^2-1)^{m/2} d^m P_l/dx^m, Q_l^m = (x^2-1)^{m/2} d^m Q_l/dx^m.
LegendrePQ legendre_PQ(int l, int m, double x);

/// Toroidal function Q_{m-1/2}(chi) for chi > 1.
double toroidal_Q(int m, double chi);

}  // namespace bicyclide
