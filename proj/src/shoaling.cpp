#include "cnoidal/shoaling.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "cnoidal/elliptic.hpp"
#include "cnoidal/errors.hpp"

namespace cnoidal {
namespace {

constexpr double pi = std::numbers::pi;

void check_m(double m) {
  if (!(m >= 0.0) || m >= 1.0) throw DomainError("parameter m out of range [0,1)");
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

}  // namespace

double zero_average_V(double m) {
  check_m(m);
  return 2.0 * ellint_E(m) / ellint_K(m) - (4.0 - 2.0 * m) / 3.0;
}

double critical_m() {
  static const double value = [] {
    double m = 0.5;
    for (int i = 0; i < 100000; ++i) {
      const double next = 2.0 * ellint_E(m) / ellint_K(m) - 1.0 + m;
      const bool done = std::fabs(next - m) < 1e-15;
      m = next;
      if (done) return m;
    }
    throw NumericalError("critical m iteration did not converge");
  }();
  return value;
}

double wavelength(double h, double T, double g) {
  check_positive(h, "depth");
  check_positive(T, "period");
  check_positive(g, "gravity");
  return std::sqrt(g * h) * T;
}

double transport_bracket(double m) {
  check_m(m);
  const double K = ellint_K(m), E = ellint_E(m);
  return K * K * ((m - 1.0) * K * K / 3.0 + (4.0 - 2.0 * m) * E * K / 3.0 - E * E);
}

double energy_transport(const WaveTrain& w) {
  check_positive(w.h, "depth");
  check_positive(w.lambda, "wavelength");
  check_positive(w.rho, "density");
  check_positive(w.g, "gravity");
  return 256.0 / 9.0 * w.rho * w.g * std::pow(w.h, 6) / std::pow(w.lambda, 3) * transport_bracket(w.m);
}

double depth_from_m(double m, double T, double F, double rho, double g) {
  check_m(m);
  check_positive(T, "period");
  check_positive(F, "energy transport");
  check_positive(rho, "density");
  check_positive(g, "gravity");
  const double b = 3.0 * transport_bracket(m);
  if (!(b > 0.0)) throw DomainError("transport bracket vanishes at m = 0");
  return std::pow(27.0 / 256.0 * std::sqrt(g) / rho * T * T * T * F / b, 2.0 / 9.0);
}

double m_from_depth(double h, double T, double F, double rho, double g) {
  check_positive(h, "depth");
  // below m ~ 1e-4 the bracket loses digits to cancellation (it is O(m^2))
  const double lo = 1e-4, hi = 1.0 - 1e-15;
  const double hlo = depth_from_m(lo, T, F, rho, g), hhi = depth_from_m(hi, T, F, rho, g);
  if (h > hlo) throw NumericalError("depth exceeds the small-m range of the depth relation");
  if (h < hhi) throw NumericalError("depth below the m -> 1 range of the depth relation");
  const double lh = std::log(h);
  auto f = [&](double m) { return std::log(depth_from_m(m, T, F, rho, g)) - lh; };
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      f, lo, hi, [](double a, double b) { return std::fabs(b - a) < 1e-15; }, iters);
  return 0.5 * (r.first + r.second);
}

double critical_depth_coefficient() {
  return std::pow(3.0 / (4.0 * std::pow(ellint_K(critical_m()), 4.0 / 3.0)), 2.0 / 3.0);
}

double critical_depth(double T, double F, double rho, double g) {
  check_positive(T, "period");
  check_positive(F, "energy transport");
  check_positive(rho, "density");
  check_positive(g, "gravity");
  return std::pow(g * std::pow(T, 6) * F * F / (rho * rho), 1.0 / 9.0) * critical_depth_coefficient();
}

double depth_profile_D(double X, double t, const WaveTrain& w) {
  check_positive(w.h, "depth");
  check_positive(w.lambda, "wavelength");
  check_positive(w.g, "gravity");
  check_m(w.m);
  const double K = ellint_K(w.m), E = ellint_E(w.m);
  const double dn = jacobi(2.0 * K * (X - std::sqrt(w.g * w.h) * t) / w.lambda, w.m).dn;
  return w.h + 16.0 / 3.0 * std::pow(w.h, 3) / (w.lambda * w.lambda) * K * K * (dn * dn - E / K);
}

ShoalPath shoaling_path(const std::vector<double>& h_values, double T, double F, double rho, double g) {
  for (std::size_t i = 1; i < h_values.size(); ++i)
    if (!(h_values[i] < h_values[i - 1])) throw DomainError("depths must be strictly decreasing");
  const double ms = critical_m();
  ShoalPath path;
  for (double h : h_values) {
    ShoalPoint p{};
    p.h = h;
    p.lambda = wavelength(h, T, g);
    p.m = m_from_depth(h, T, F, rho, g);
    p.V = zero_average_V(p.m);
    p.kc = uniform_representative(p.m, p.V).value;
    p.orbit = classify(p.m, p.V);
    p.in_wedge = p.m > ms;
    p.epsilon = h * h / (p.lambda * p.lambda);
    p.speed = std::sqrt(g * h);
    if (p.in_wedge && !path.wedge_entry) path.wedge_entry = path.points.size();
    path.points.push_back(p);
  }
  if (path.wedge_entry && *path.wedge_entry > 0) {
    const auto& a = path.points[*path.wedge_entry - 1];
    const auto& b = path.points[*path.wedge_entry];
    // linear in m for a first guess, then bisection in h
    const double guess = a.h + (ms - a.m) / (b.m - a.m) * (b.h - a.h);
    double lo = b.h, hi = a.h;  // m(lo) > m*, m(hi) <= m*
    if (m_from_depth(guess, T, F, rho, g) > ms) lo = guess; else hi = guess;
    while (hi - lo > 1e-13 * hi) {
      const double mid = 0.5 * (lo + hi);
      (m_from_depth(mid, T, F, rho, g) > ms ? lo : hi) = mid;
    }
    path.crossing_depth = 0.5 * (lo + hi);
  }
  return path;
}

}  // namespace cnoidal
