#include "cnoidal/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cnoidal/errors.hpp"

namespace cnoidal {
namespace {

constexpr double pi = std::numbers::pi;

void require_parameter(double m, bool allow_one, const char* who) {
  if (!(m >= 0.0) || m > 1.0 || (!allow_one && m == 1.0))
    throw DomainError(std::string(who) + ": parameter m out of range: " + std::to_string(m));
}

// AGM(1, sqrt(mc)) where mc = 1 - m.
double agm_from_complement(double mc) {
  double a = 1.0, b = std::sqrt(mc);
  for (int i = 0; i < 64 && std::fabs(a - b) > 1e-15 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return a;
}

double K_from_complement(double mc) { return pi / (2.0 * agm_from_complement(mc)); }

// Landen/AGM scheme; m and mc = 1 - m are passed separately so the
// complementary parameter keeps full precision.
JacobiTriple jacobi_impl(double u, double m, double mc) {
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (mc == 0.0) {
    const double s = 1.0 / std::cosh(u);
    return {std::tanh(u), s, s};
  }
  // reduce to [-K, K] using sn(u+2K) = -sn(u), cn(u+2K) = -cn(u)
  const double K = K_from_complement(mc);
  const double n = std::nearbyint(u / (2.0 * K));
  const double ur = u - n * 2.0 * K;
  const bool flip = std::fmod(std::fabs(n), 2.0) == 1.0;

  double a[70], c[70];
  a[0] = 1.0;
  double b = std::sqrt(mc);
  c[0] = std::sqrt(m);
  int N = 0;
  while (std::fabs(c[N]) > 1e-16 * a[N] && N < 68) {
    a[N + 1] = 0.5 * (a[N] + b);
    c[N + 1] = 0.5 * (a[N] - b);
    b = std::sqrt(a[N] * b);
    ++N;
  }
  double phi = std::ldexp(a[N] * ur, N);
  for (int i = N; i > 0; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  double sn = std::sin(phi), cn = std::cos(phi);
  const double dn = std::sqrt(mc + m * cn * cn);
  if (flip) {
    sn = -sn;
    cn = -cn;
  }
  return {sn, cn, dn};
}

}  // namespace

double ellint_K(double m) {
  require_parameter(m, false, "ellint_K");
  return K_from_complement(1.0 - m);
}

double ellint_E(double m) {
  require_parameter(m, true, "ellint_E");
  if (m == 1.0) return 1.0;
  double a = 1.0, b = std::sqrt(1.0 - m), c = std::sqrt(m);
  double sum = 0.5 * m, pow2 = 0.5;
  for (int i = 0; i < 64 && std::fabs(c) > 1e-15 * a; ++i) {
    const double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    sum += pow2 * c * c;
  }
  return pi / (2.0 * a) * (1.0 - sum);
}

JacobiTriple jacobi(double u, double m) {
  require_parameter(m, false, "jacobi");
  if (!std::isfinite(u)) throw DomainError("jacobi: non-finite argument");
  return jacobi_impl(u, m, 1.0 - m);
}

JacobiComplex jacobi_complex(cplx z, double m) {
  require_parameter(m, false, "jacobi_complex");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("jacobi_complex: non-finite argument");
  if (m == 0.0) return {std::sin(z), std::cos(z), cplx(1.0, 0.0)};
  const double mc = 1.0 - m;
  const double K = K_from_complement(mc), Kp = K_from_complement(m);
  // common periods 4K and 4iK'
  double x = z.real() - 4.0 * K * std::nearbyint(z.real() / (4.0 * K));
  double y = z.imag() - 4.0 * Kp * std::nearbyint(z.imag() / (4.0 * Kp));

  // poles at 2nK + i(2n'+1)K'
  const double dx = x - 2.0 * K * std::nearbyint(x / (2.0 * K));
  const double dy = std::fabs(y) - Kp;
  if (std::hypot(dx, dy) < kPoleTolerance)
    throw DomainError("jacobi_complex: argument at a pole");

  const JacobiTriple r = jacobi_impl(x, m, mc);
  const JacobiTriple i = jacobi_impl(y, mc, m);
  const double s = r.sn, c = r.cn, d = r.dn;
  const double s1 = i.sn, c1 = i.cn, d1 = i.dn;
  const double den = c1 * c1 + m * s * s * s1 * s1;
  return {cplx(s * d1, c * d * s1 * c1) / den, cplx(c * c1, -s * d * s1 * d1) / den,
          cplx(d * c1 * d1, -m * s * c * s1) / den};
}

cplx jacobi_complex(cplx z, double m, JacobiKind which) {
  const JacobiComplex j = jacobi_complex(z, m);
  switch (which) {
    case JacobiKind::sn: return j.sn;
    case JacobiKind::cn: return j.cn;
    default: return j.dn;
  }
}

double dn_power_integral(int N, double m) {
  if (N < 0 || N % 2 != 0) throw DomainError("dn_power_integral: N must be even and non-negative");
  require_parameter(m, false, "dn_power_integral");
  const double I0 = 2.0 * ellint_K(m);
  if (N == 0) return I0;
  double prev = I0, cur = 2.0 * ellint_E(m);
  // (n+1) I_{n+2} = (2-m) n I_n - (n-1)(1-m) I_{n-2}
  for (int n = 2; n < N; n += 2) {
    const double next = ((2.0 - m) * n * cur - (n - 1) * (1.0 - m) * prev) / (n + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace cnoidal
