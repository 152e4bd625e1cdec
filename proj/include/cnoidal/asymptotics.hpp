#pragma once
#include <string>
#include <vector>

#include "cnoidal/elliptic.hpp"

namespace cnoidal {

// An approximate value together with the magnitude of the small parameter
// that controls it.
template <class T>
struct Approx {
  T value;
  double small;
};

// k/c for |V| >> 1: (K^2 V - 2 K zeta(K)) / (6 pi^2); small = 1/|V|
Approx<double> k_large_V(double m, double V);

// V on the level curve k/c = -n^2/24 for n >> K; small = K/n
Approx<double> exceptional_V_asymptote(int n, double m);

enum class WedgeBoundary { lower, upper };
// Square-root law for k/c just outside a wedge boundary; small = distance to it.
Approx<double> k_near_wedge(double m, double V, WedgeBoundary side);

// 1 - m on a level curve with k/c < -1/24 as V -> -2/3; small = |V + 2/3|
Approx<double> one_minus_m_nonperturbative(double kc, double V);

// V on a level curve with k/c > -1/24 as m -> 1; small = 1 - m
Approx<double> V_near_m1(double kc, double m);

// V on a level curve as m -> 0; small = m. `unreliable` marks k/c within 1e-3
// of -1/24, where the next coefficient blows up.
struct SmallMApprox {
  double value;
  double small;
  bool unreliable;
};
SmallMApprox V_near_m0(double kc, double m);

enum class DegenerateEnd { m_to_0, m_to_1 };
// Trigonometric / hyperbolic forms of wp and zeta when one period diverges,
// with the first exponentially small correction; small = that correction's size.
Approx<cplx> degenerate_wp(cplx z, double m, DegenerateEnd end);
Approx<cplx> degenerate_zeta(cplx z, double m, DegenerateEnd end);

struct KAsymptotes {
  double K;       // K(m)
  double Kcomp;   // K(1 - m)
  double small;   // 1 - m
};
KAsymptotes K_asymptotes(double m);

// Error of one approximation against the exact modules at a ladder of small
// parameters; each rung is compared with the rung at half the parameter.
struct ConvergenceCheck {
  std::string name;
  std::string parameter;
  std::vector<double> params;  // pairs (s, s/2) at successive decades
  std::vector<double> errors;
  std::vector<double> ratios;  // error(s) / error(s/2)
  double lo, hi;               // accepted ratio band
  bool pass;
};
std::vector<ConvergenceCheck> convergence_report();

}  // namespace cnoidal
