#pragma once
#include <array>
#include <vector>

namespace cnoidal {

// V = (2m + 2)/3 - energy
double velocity_from_energy(double energy, double m);
double energy_from_velocity(double V, double m);

struct BandPoint {
  double energy;
  bool in_gap;           // kappa has an imaginary part
  double kappa_ell;      // reduced to [0, pi]; NaN in a gap
  double kappa_extended; // extended-zone value, 6k/c = -(kappa_extended / 2 pi)^2
};

BandPoint crystal_momentum(double energy, double m);

// (m, 1, m + 1): valence band [m, 1], gap (1, m + 1), conduction band above.
std::array<double, 3> band_edges(double m);

struct EnergyAsymptote {
  double energy;
  double validity;  // n / K(m); large means reliable
};
EnergyAsymptote exceptional_energy_asymptote(int n, double m);
// E = (2 hbar^2 K^2 / (M l^2)) * energy
double dimensionful_energy(double energy, double m, double hbar, double mass, double ell);

struct GapInterval {
  double lo, hi;
};

// Floquet trace of the N-gap Lame profile at energy (c = 1).
double lame_profile_trace(int N, double m, double energy);

// Intervals with |Tr| > 2 between allowed bands, by scanning energy in steps of
// min(1e-3, m/10) (or `step` if positive) and bisecting edges to 1e-8.
std::vector<GapInterval> numeric_band_gaps(int N, double m, double E_max, double step = 0.0);

}  // namespace cnoidal
