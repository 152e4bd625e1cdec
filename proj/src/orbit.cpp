#include "cnoidal/orbit.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "cnoidal/errors.hpp"

namespace cnoidal {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double snap_tol = 1e-9;

void require_m(double m) {
  if (!(m >= 0.0) || m >= 1.0) throw DomainError("parameter m out of range [0,1)");
}

bool is_elliptic_region(Region r) {
  return r == Region::BelowWedge || r == Region::LowerBoundary || r == Region::UpperBoundary ||
         r == Region::Middle;
}

}  // namespace

std::string to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::Elliptic: return "Elliptic";
    case OrbitKind::Hyperbolic: return "Hyperbolic";
    case OrbitKind::Parabolic: return "Parabolic";
    default: return "Exceptional";
  }
}

std::string to_string(const OrbitClass& oc) {
  return to_string(oc.kind) + "(" + std::to_string(oc.winding) + ")";
}

Region region_of(double m, double V, double tol) {
  require_m(m);
  if (!std::isfinite(V)) throw DomainError("V must be finite");
  const double e1 = (2.0 - m) / 3.0, e2 = -(m + 1.0) / 3.0, e3 = (2.0 * m - 1.0) / 3.0;
  if (std::fabs(V - e2) <= tol) return Region::LowerBoundary;
  if (std::fabs(V - e3) <= tol) return Region::UpperBoundary;
  if (std::fabs(V - e1) <= tol) return Region::ParabolicLine;
  if (V < e2) return Region::BelowWedge;
  if (V < e3) return Region::Wedge;
  if (V < e1) return Region::Middle;
  return Region::Above;
}

double cnoidal_speed(const CnoidalParams& p) {
  const double K = ellint_K(p.m);
  return p.c * K * K * p.V / (2.0 * pi * pi);
}

double cnoidal_profile(const CnoidalParams& p, double x, double tau) {
  require_m(p.m);
  if (p.c == 0.0) throw DomainError("central charge c must be non-zero");
  const double K = ellint_K(p.m);
  const double sn = jacobi(K / pi * (x - cnoidal_speed(p) * tau), p.m).sn;
  return p.c * K * K / (3.0 * pi * pi) * (p.V / 2.0 - (p.m + 1.0) / 3.0 + p.m * sn * sn);
}

cplx trace_exponent(double m, double V) {
  const Region r = region_of(m, V);
  if (m == 0.0) {
    // constant profile: X^2 = (pi^2 / 4) (V - 2/3)
    const double s = V - 2.0 / 3.0;
    return s >= 0.0 ? cplx(pi / 2.0 * std::sqrt(s), 0.0) : cplx(0.0, pi / 2.0 * std::sqrt(-s));
  }
  const RectLattice L = lattice(m);
  const cplx a = wp_inverse(V, L);
  const cplx X = L.omega1 * zeta(a, L) - L.eta1 * a;
  const double scale = snap_tol * (1.0 + std::abs(X));
  // on a bifurcation line X is 0 or -i pi/2 up to the V tolerance
  if (r == Region::ParabolicLine) return 0.0;
  if (r == Region::LowerBoundary || r == Region::UpperBoundary)
    return {0.0, std::nearbyint(X.imag() / (pi / 2.0)) * pi / 2.0};
  if (is_elliptic_region(r)) {
    if (std::fabs(X.real()) > scale) throw NumericalError("trace exponent not imaginary");
    return {0.0, X.imag()};
  }
  const double q = std::nearbyint(X.imag() / (pi / 2.0));
  if (std::fabs(X.imag() - q * pi / 2.0) > scale)
    throw NumericalError("trace exponent imaginary part not a multiple of pi/2");
  return {X.real(), q * pi / 2.0};
}

double monodromy_trace(double m, double V) {
  const cplx X = trace_exponent(m, V);
  // after snapping sinh(2x) sin(2y) vanishes
  return 2.0 * std::cosh(2.0 * X.real()) * std::cos(2.0 * X.imag());
}

Representative uniform_representative(double m, double V) {
  const Region r = region_of(m, V);
  const cplx X = trace_exponent(m, V);
  const cplx value = X * X / (6.0 * pi * pi);
  if (r == Region::Wedge) return {value, false};
  return {cplx(value.real(), 0.0), true};
}

double constant_trace(double kc) {
  if (kc >= 0.0) return 2.0 * std::cosh(2.0 * pi * std::sqrt(6.0 * kc));
  return 2.0 * std::cos(2.0 * pi * std::sqrt(-6.0 * kc));
}

double kc_from_trace(double trace, int n) {
  if (n < 0) throw DomainError("winding must be non-negative");
  if (trace > 2.0) {
    if (n != 0) throw DomainError("trace > 2 with non-zero winding has no rest frame");
    const double s = std::acosh(trace / 2.0) / (2.0 * pi);
    return s * s / 6.0;
  }
  if (trace < -2.0) throw DomainError("trace < -2 has no rest frame");
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  const double s = (n + 1) / 2 + sign / (2.0 * pi) * std::acos(trace / 2.0);
  return -s * s / 6.0;
}

OrbitClass classify(double m, double V) {
  switch (region_of(m, V)) {
    case Region::BelowWedge:
      return {OrbitKind::Elliptic, winding_from_kc(std::min(0.0, uniform_representative(m, V).value.real()))};
    case Region::LowerBoundary:
    case Region::UpperBoundary: return {OrbitKind::Exceptional, 1};
    case Region::Wedge: return {OrbitKind::Hyperbolic, 1};
    case Region::Middle: return {OrbitKind::Elliptic, 0};
    case Region::ParabolicLine: return {OrbitKind::Parabolic, 0};
    default: return {OrbitKind::Hyperbolic, 0};
  }
}

int winding_from_kc(double kc) {
  if (!(kc <= 0.0)) throw DomainError("winding_from_kc requires kc <= 0");
  return static_cast<int>(std::floor(std::sqrt(24.0 * -kc)));
}

double dk_dV_parabolic(double m) {
  require_m(m);
  if (m == 0.0) return 1.0 / 24.0;
  const double E = ellint_E(m);
  return E * E / (6.0 * pi * pi * (1.0 - m));
}

double dk_dV(double m, double V) {
  require_m(m);
  if (m == 0.0) return 1.0 / 24.0;
  switch (region_of(m, V)) {
    case Region::Wedge: throw DomainError("dk_dV is undefined inside the wedge");
    case Region::LowerBoundary:
    case Region::UpperBoundary: return std::numeric_limits<double>::infinity();
    case Region::ParabolicLine: return dk_dV_parabolic(m);
    default: break;
  }
  const RectLattice L = lattice(m);
  const cplx a = wp_inverse(V, L);
  const cplx X = trace_exponent(m, V);
  const cplx d = -X * (L.omega1 * V + L.eta1) / (3.0 * pi * pi * wp_prime(a, L));
  return d.real();
}

double level_curve(double target_kc, double m, WedgeSide side) {
  require_m(m);
  if (!std::isfinite(target_kc)) throw DomainError("target must be finite");
  const double e2 = -(m + 1.0) / 3.0, e3 = (2.0 * m - 1.0) / 3.0, e1 = (2.0 - m) / 3.0;
  const double wedge_k = -1.0 / 24.0;
  auto f = [&](double V) { return uniform_representative(m, V).value.real() - target_kc; };
  double lo, hi;
  if (side == WedgeSide::below_wedge) {
    if (target_kc > wedge_k) throw DomainError("no solution: below_wedge requires kc <= -1/24");
    if (target_kc == wedge_k) return e2;
    hi = e2;
    double step = 1.0;
    lo = e2 - step;
    while (f(lo) > 0.0) {
      step *= 2.0;
      lo = e2 - step;
      if (step > 1e12) throw NumericalError("level_curve: cannot bracket");
    }
  } else {
    if (target_kc < wedge_k) throw DomainError("no solution: above_wedge requires kc >= -1/24");
    if (target_kc == wedge_k) return e3;
    lo = e3;
    double step = 1.0;
    hi = e1 + step;
    while (f(hi) < 0.0) {
      step *= 2.0;
      hi = e1 + step;
      if (step > 1e12) throw NumericalError("level_curve: cannot bracket");
    }
  }
  boost::uintmax_t iters = 300;
  const auto br = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  double V = 0.5 * (br.first + br.second);
  if (std::fabs(f(V)) >= 1e-10) throw NumericalError("level_curve: residual above tolerance");
  return V;
}

}  // namespace cnoidal
