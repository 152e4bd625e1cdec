#include "cnoidal/weierstrass.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "cnoidal/errors.hpp"

namespace cnoidal {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
using GK = boost::math::quadrature::gauss_kronrod<double, 21>;

// Disc around the origin where the Laurent expansion is used directly.
double laurent_radius(const RectLattice& lat) {
  return 0.3 * std::min(2.0 * lat.omega1, 2.0 * lat.omega2_im);
}

cplx zeta_laurent(cplx z, const RectLattice& lat) {
  const cplx z2 = z * z;
  cplx pw = z, acc = 0.0;  // pw = z^(2k-1)
  for (int k = 2; k < static_cast<int>(lat.laurent.size()); ++k) {
    pw *= z2;
    acc += lat.laurent[k] * pw / double(2 * k - 1);
  }
  return 1.0 / z - acc;
}

cplx wp_laurent(cplx z, const RectLattice& lat) {
  const cplx z2 = z * z;
  cplx pw = 1.0, acc = 0.0;  // pw = z^(2k-2)
  for (int k = 2; k < static_cast<int>(lat.laurent.size()); ++k) {
    pw *= z2;
    acc += lat.laurent[k] * pw;
  }
  return 1.0 / z2 + acc;
}

cplx wp_prime_laurent(cplx z, const RectLattice& lat) {
  const cplx z2 = z * z;
  cplx pw = z, acc = 0.0;  // pw = z^(2k-3)
  for (int k = 2; k < static_cast<int>(lat.laurent.size()); ++k) {
    acc += double(2 * k - 2) * lat.laurent[k] * pw;
    pw *= z2;
  }
  return -2.0 / (z2 * z) + acc;
}

// log(sigma(z)/z)
cplx log_sigma_over_z_laurent(cplx z, const RectLattice& lat) {
  const cplx z2 = z * z;
  cplx pw = z2, acc = 0.0;  // pw = z^(2k)
  for (int k = 2; k < static_cast<int>(lat.laurent.size()); ++k) {
    pw *= z2;
    acc += lat.laurent[k] * pw / double((2 * k - 1) * 2 * k);
  }
  return -acc;
}

// Integral of wp(w0 + t (w - w0)) * weight(t) over t in [0,1].
template <class Weight>
cplx integrate_wp(cplx w0, cplx w, const RectLattice& lat, Weight weight) {
  const cplx d = w - w0;
  auto f = [&](double t) { return wp(w0 + t * d, lat) * weight(t); };
  double err = 0.0;
  const cplx r = GK::integrate(f, 0.0, 1.0, 10, 1e-14, &err);
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
    throw NumericalError("zeta: quadrature failed");
  return r;
}

struct Reduced {
  cplx w;
  double p, q;  // z = w + 2 p omega1 + 2 q omega2
};

Reduced reduce(cplx z, const RectLattice& lat) {
  const double p = std::nearbyint(z.real() / (2.0 * lat.omega1));
  const double q =
      std::isfinite(lat.omega2_im) ? std::nearbyint(z.imag() / (2.0 * lat.omega2_im)) : 0.0;
  const double im = q == 0.0 ? z.imag() : z.imag() - 2.0 * q * lat.omega2_im;
  const cplx w(z.real() - 2.0 * p * lat.omega1, im);
  return {w, p, q};
}

void reject_lattice_point(cplx w) {
  if (std::abs(w) < kPoleTolerance) throw DomainError("argument at a lattice point");
}

}  // namespace

RectLattice lattice(double m) {
  if (!(m >= 0.0) || m >= 1.0) throw DomainError("lattice: parameter m out of range");
  RectLattice L{};
  L.m = m;
  L.omega1 = ellint_K(m);
  L.omega2_im = m == 0.0 ? inf : ellint_K(1.0 - m);
  L.E = ellint_E(m);
  L.g2 = 4.0 / 3.0 * (m * m - m + 1.0);
  L.g3 = 4.0 / 27.0 * (2.0 * m * m * m - 3.0 * m * m - 3.0 * m + 2.0);
  L.e1 = (2.0 - m) / 3.0;
  L.e2 = -(m + 1.0) / 3.0;
  L.e3 = (2.0 * m - 1.0) / 3.0;
  L.eta1 = L.E - L.e1 * L.omega1;
  L.eta2_im = m == 0.0 ? inf : (L.omega2_im * L.eta1 - pi / 2.0) / L.omega1;
  auto& c = L.laurent;
  c[0] = c[1] = 0.0;
  c[2] = L.g2 / 20.0;
  c[3] = L.g3 / 28.0;
  for (int k = 4; k < static_cast<int>(c.size()); ++k) {
    double s = 0.0;
    for (int j = 2; j <= k - 2; ++j) s += c[j] * c[k - j];
    c[k] = 3.0 * s / ((2.0 * k + 1.0) * (k - 3.0));
  }
  return L;
}

cplx wp(cplx z, const RectLattice& lat) {
  const cplx w = reduce(z, lat).w;
  reject_lattice_point(w);
  if (std::abs(w) <= laurent_radius(lat)) return wp_laurent(w, lat);
  if (lat.m == 0.0) {
    const cplx s = std::sin(z);
    return 1.0 / (s * s) - 1.0 / 3.0;
  }
  const cplx s = jacobi_complex(z - lat.omega2(), lat.m, JacobiKind::sn);
  return lat.m * s * s - (lat.m + 1.0) / 3.0;
}

cplx wp_prime(cplx z, const RectLattice& lat) {
  const cplx w = reduce(z, lat).w;
  reject_lattice_point(w);
  if (std::abs(w) <= laurent_radius(lat)) return wp_prime_laurent(w, lat);
  if (lat.m == 0.0) {
    const cplx s = std::sin(z);
    return -2.0 * std::cos(z) / (s * s * s);
  }
  const JacobiComplex j = jacobi_complex(z - lat.omega2(), lat.m);
  return 2.0 * lat.m * j.sn * j.cn * j.dn;
}

cplx wp_second(cplx z, const RectLattice& lat) {
  const cplx p = wp(z, lat);
  return 6.0 * p * p - lat.g2 / 2.0;
}

cplx zeta(cplx z, const RectLattice& lat) {
  const Reduced r = reduce(z, lat);
  reject_lattice_point(r.w);
  const double r0 = laurent_radius(lat);
  cplx zw;
  if (std::abs(r.w) <= r0) {
    zw = zeta_laurent(r.w, lat);
  } else {
    const cplx w0 = r.w * (r0 / std::abs(r.w));
    zw = zeta_laurent(w0, lat) - (r.w - w0) * integrate_wp(w0, r.w, lat, [](double) { return 1.0; });
  }
  cplx shift = 2.0 * r.p * lat.eta1;
  if (r.q != 0.0) shift += 2.0 * r.q * lat.eta2();
  return zw + shift;
}

cplx sigma(cplx z, const RectLattice& lat) {
  const Reduced r = reduce(z, lat);
  const double r0 = laurent_radius(lat);
  cplx log_sw;  // log sigma(w), up to 2 pi i
  if (std::abs(r.w) <= r0) {
    if (r.w == 0.0) return 0.0;
    log_sw = std::log(r.w) + log_sigma_over_z_laurent(r.w, lat);
  } else {
    const cplx w0 = r.w * (r0 / std::abs(r.w));
    const cplx d = r.w - w0;
    log_sw = std::log(w0) + log_sigma_over_z_laurent(w0, lat) + d * zeta_laurent(w0, lat) -
             d * d * integrate_wp(w0, r.w, lat, [](double t) { return 1.0 - t; });
  }
  if (r.p == 0.0 && r.q == 0.0) return std::exp(log_sw);
  // sigma(w + 2 Omega) = (-1)^(p+q+pq) exp(2 eta_Omega (w + Omega)) sigma(w)
  const cplx Omega = r.p * lat.omega1 + (r.q != 0.0 ? r.q * lat.omega2() : cplx(0.0));
  const cplx etaO = r.p * lat.eta1 + (r.q != 0.0 ? r.q * lat.eta2() : cplx(0.0));
  const long long parity = static_cast<long long>(std::fabs(r.p + r.q + r.p * r.q)) % 2;
  const double sign = parity ? -1.0 : 1.0;
  return sign * std::exp(log_sw + 2.0 * etaO * (r.w + Omega));
}

cplx wp_inverse(double V, const RectLattice& lat) {
  if (!std::isfinite(V)) throw DomainError("wp_inverse: non-finite V");
  const double K = lat.omega1, Kp = lat.omega2_im;
  const cplx I(0.0, 1.0);
  const double tol = 1e-15 * std::max(1.0, std::fabs(V));

  if (lat.m == 0.0 && std::fabs(V - lat.e2) <= tol)
    throw DomainError("wp_inverse: corner at infinity for m = 0");
  if (std::fabs(V - lat.e1) <= tol) return K;
  if (std::fabs(V - lat.e2) <= tol) return I * Kp;
  if (std::fabs(V - lat.e3) <= tol) return K + I * Kp;

  // Segment start, direction, length, and whether wp increases along it.
  cplx start, dir;
  double len;
  if (V > lat.e1) {
    start = 0.0, dir = 1.0, len = K;
  } else if (V > lat.e3) {
    start = K, dir = I, len = Kp;
  } else if (V > lat.e2) {
    start = I * Kp, dir = 1.0, len = K;
  } else {
    start = 0.0, dir = I, len = Kp;
  }
  auto g = [&](double t) { return wp(start + t * dir, lat).real() - V; };

  // near a corner wp(c + h) = e + wp''(c) h^2 / 2 + O(h^4)
  const double quad_window = 1e-8;
  auto corner = [&](double e, double w2, double t_corner, double sgn) -> cplx {
    const double h = std::sqrt(2.0 * (V - e) / w2);
    return start + (t_corner + sgn * h) * dir;
  };
  const double m = lat.m;
  if (V > lat.e1 && V - lat.e1 < quad_window) return corner(lat.e1, 2.0 * (1.0 - m), K, -1.0);
  if (V < lat.e1 && V > lat.e3 && lat.e1 - V < quad_window)
    return corner(lat.e1, -2.0 * (1.0 - m), 0.0, 1.0);
  if (V > lat.e3 && V < lat.e1 && V - lat.e3 < quad_window && std::isfinite(Kp))
    return corner(lat.e3, -2.0 * m * (m - 1.0), Kp, -1.0);
  if (V < lat.e3 && V > lat.e2 && lat.e3 - V < quad_window)
    return corner(lat.e3, 2.0 * m * (m - 1.0), K, -1.0);
  if (V > lat.e2 && V < lat.e3 && V - lat.e2 < quad_window)
    return corner(lat.e2, 2.0 * m, 0.0, 1.0);
  if (V < lat.e2 && lat.e2 - V < quad_window && std::isfinite(Kp))
    return corner(lat.e2, -2.0 * m, Kp, -1.0);

  double lo = 0.0, hi = len;
  if (start == cplx(0.0)) {
    // pole at the origin: shrink the lower end until wp - V has the pole's sign
    lo = 0.5 * std::min(std::isfinite(len) ? len : 1.0, 1.0 / std::sqrt(std::fabs(V) + 1.0));
    const double pole_sign = dir == cplx(1.0) ? 1.0 : -1.0;
    while (g(lo) * pole_sign <= 0.0) {
      lo *= 0.5;
      if (lo < 1e-300) return start;
    }
  }
  if (!std::isfinite(hi)) {
    hi = 1.0;
    while (g(hi) * g(lo) > 0.0) hi *= 2.0;
  }
  const double glo = g(lo), ghi = g(hi);
  if (glo == 0.0) return start + lo * dir;
  if (ghi == 0.0) return start + hi * dir;
  if (glo * ghi > 0.0) throw NumericalError("wp_inverse: failed to bracket root");
  boost::uintmax_t iters = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), iters);
  return start + 0.5 * (bracket.first + bracket.second) * dir;
}

}  // namespace cnoidal
