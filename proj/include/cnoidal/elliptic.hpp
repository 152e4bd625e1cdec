#pragma once
#include <complex>

namespace cnoidal {

using cplx = std::complex<double>;

struct JacobiTriple {
  double sn, cn, dn;
};

enum class JacobiKind { sn, cn, dn };

// Complete elliptic integrals, parameter m = k^2.
double ellint_K(double m);  // 0 <= m < 1
double ellint_E(double m);  // 0 <= m <= 1

// Real Jacobi functions by descending Landen transformation.
JacobiTriple jacobi(double u, double m);

// All three functions at once; throws DomainError near a pole.
struct JacobiComplex {
  cplx sn, cn, dn;
};
JacobiComplex jacobi_complex(cplx z, double m);
cplx jacobi_complex(cplx z, double m, JacobiKind which);

// I_N = int_0^{2K} dn^N du for even N >= 0.
double dn_power_integral(int N, double m);

inline constexpr double kPoleTolerance = 1e-9;

}  // namespace cnoidal
