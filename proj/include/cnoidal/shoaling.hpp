#pragma once
#include <optional>
#include <vector>

#include "cnoidal/orbit.hpp"

namespace cnoidal {

// SI units throughout: lengths in m, times in s, F in N, rho in kg/m^3, g in m/s^2.
struct WaveTrain {
  double h;       // average depth
  double lambda;  // wavelength
  double m;
  double T;    // period
  double F;    // energy transport
  double rho;
  double g;

  double epsilon() const { return h * h / (lambda * lambda); }
  bool shallow_warning() const { return epsilon() > 0.05; }
};

// V = 2E/K - (4 - 2m)/3, the cnoidal waves of vanishing mean
double zero_average_V(double m);

// Fixed point of m -> 2E(m)/K(m) - 1 + m, where E/K = 1/2.
double critical_m();

// lambda = sqrt(g h) T
double wavelength(double h, double T, double g);

// (m - 1) K^4 / 3 + (4 - 2m) E K^3 / 3 - E^2 K^2; vanishes at m = 0
double transport_bracket(double m);

// F = (256/9) rho g h^6 / lambda^3 * transport_bracket(m)
double energy_transport(const WaveTrain& w);

// Depth at which a train of period T and transport F has pointedness m.
double depth_from_m(double m, double T, double F, double rho, double g);
// Inverse of depth_from_m by bracketed root finding in m.
double m_from_depth(double h, double T, double F, double rho, double g);

// h* = (g T^6 F^2 / rho^2)^(1/9) (3 / (4 K(m*)^(4/3)))^(2/3)
double critical_depth(double T, double F, double rho, double g);
double critical_depth_coefficient();

// Free-surface height D(X, t) of the cnoidal train.
double depth_profile_D(double X, double t, const WaveTrain& w);

struct ShoalPoint {
  double h, lambda, m, V;
  cplx kc;
  OrbitClass orbit;
  bool in_wedge;
  double epsilon;
  double speed;  // sqrt(g h), leading order
};

struct ShoalPath {
  std::vector<ShoalPoint> points;
  std::optional<std::size_t> wedge_entry;  // first index past m*
  std::optional<double> crossing_depth;    // depth where m = m*
};

ShoalPath shoaling_path(const std::vector<double>& h_values, double T, double F, double rho, double g);

}  // namespace cnoidal
