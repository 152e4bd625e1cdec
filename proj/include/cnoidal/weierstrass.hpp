#pragma once
#include <array>
#include <complex>

#include "cnoidal/elliptic.hpp"

namespace cnoidal {

// Rectangular lattice with half-periods omega1 = K(m), omega2 = i K(1-m).
struct RectLattice {
  double m;
  double omega1;     // K(m)
  double omega2_im;  // K(1-m); +inf when m == 0
  double E;          // E(m)
  double g2, g3;
  double e1, e2, e3;
  double eta1;       // zeta(omega1)
  double eta2_im;    // zeta(omega2) / i, from the Legendre relation
  std::array<double, 24> laurent;  // c_k, k >= 2: wp = z^-2 + sum c_k z^(2k-2)

  cplx omega2() const { return {0.0, omega2_im}; }
  cplx eta2() const { return {0.0, eta2_im}; }
};

RectLattice lattice(double m);

cplx wp(cplx z, const RectLattice& lat);
cplx wp_prime(cplx z, const RectLattice& lat);
// wp'' = 6 wp^2 - g2/2
cplx wp_second(cplx z, const RectLattice& lat);

cplx zeta(cplx z, const RectLattice& lat);
cplx sigma(cplx z, const RectLattice& lat);

// Unique point on the boundary of [0,K] x [0,K'] with wp = V.
cplx wp_inverse(double V, const RectLattice& lat);

}  // namespace cnoidal
