#include "cnoidal/band.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cnoidal/elliptic.hpp"
#include "cnoidal/errors.hpp"
#include "cnoidal/hill.hpp"
#include "cnoidal/orbit.hpp"

namespace cnoidal {
namespace {
constexpr double pi = std::numbers::pi;
}

double velocity_from_energy(double energy, double m) { return (2.0 * m + 2.0) / 3.0 - energy; }
double energy_from_velocity(double V, double m) { return (2.0 * m + 2.0) / 3.0 - V; }

BandPoint crystal_momentum(double energy, double m) {
  if (!(m >= 0.0) || m >= 1.0) throw DomainError("parameter m out of range [0,1)");
  const double V = velocity_from_energy(energy, m);
  const Region r = region_of(m, V);
  BandPoint b{energy, false, 0.0, 0.0};
  if (r == Region::Wedge || r == Region::Above) {
    b.in_gap = true;
    b.kappa_ell = b.kappa_extended = std::numeric_limits<double>::quiet_NaN();
    return b;
  }
  // X = i theta in the allowed bands, kappa l = 2 |theta| up to 2 pi n
  const cplx X = trace_exponent(m, V);
  b.kappa_extended = 2.0 * std::fabs(X.imag());
  double k = std::fmod(b.kappa_extended, 2.0 * pi);
  if (k > pi) k = 2.0 * pi - k;
  b.kappa_ell = k;
  return b;
}

std::array<double, 3> band_edges(double m) {
  if (!(m >= 0.0) || m >= 1.0) throw DomainError("parameter m out of range [0,1)");
  return {m, 1.0, m + 1.0};
}

EnergyAsymptote exceptional_energy_asymptote(int n, double m) {
  if (n < 1) throw DomainError("n must be >= 1");
  const double K = ellint_K(m);
  return {pi * pi * n * n / (4.0 * K * K) + (2.0 * m + 2.0) / 3.0, n / K};
}

double dimensionful_energy(double energy, double m, double hbar, double mass, double ell) {
  const double K = ellint_K(m);
  return 2.0 * hbar * hbar * K * K / (mass * ell * ell) * energy;
}

double lame_profile_trace(int N, double m, double energy) {
  const double K = ellint_K(m);
  const double a = K * K / (6.0 * pi * pi), nn = N * (N + 1.0) * m;
  const Profile p = Profile::from_function([=](double x) {
    const double s = jacobi(K / pi * x, m).sn;
    return a * (nn * s * s - energy);
  });
  return floquet_monodromy(p, 1.0).trace();
}

std::vector<GapInterval> numeric_band_gaps(int N, double m, double E_max, double step) {
  if (N < 1) throw DomainError("N must be >= 1");
  if (!(m >= 0.0) || m >= 1.0) throw DomainError("parameter m out of range [0,1)");
  if (m == 0.0) return {};
  if (step <= 0.0) step = std::min(1e-3, m / 10.0);
  // gap n opens like m^n for small m; refuse scans that would step over the narrowest
  const double narrowest = std::pow(m / 4.0, N) * 4.0;
  if (step > narrowest) throw NumericalError("scan step exceeds the smallest expected gap");

  auto excess = [&](double E) { return std::fabs(lame_profile_trace(N, m, E)) - 2.0; };
  auto refine = [&](double lo, double hi, double flo) {
    while (hi - lo > 1e-8) {
      const double mid = 0.5 * (lo + hi);
      const double fm = excess(mid);
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  // start below the potential minimum, where the spectrum is forbidden
  double E = -0.1;
  double f = excess(E);
  std::vector<GapInterval> gaps;
  bool in_band = false;
  double gap_lo = 0.0;
  while (E < E_max) {
    const double En = std::min(E + step, E_max);
    const double fn = excess(En);
    if ((f > 0.0) != (fn > 0.0)) {
      const double edge = refine(E, En, f);
      if (fn > 0.0) {
        gap_lo = edge;
        in_band = false;
      } else {
        if (!in_band && gap_lo != 0.0) gaps.push_back({gap_lo, edge});
        in_band = true;
      }
    }
    E = En;
    f = fn;
  }
  return gaps;
}

}  // namespace cnoidal
