#pragma once
#include <complex>
#include <string>

#include "cnoidal/weierstrass.hpp"

namespace cnoidal {

// One cnoidal wave of wavelength 2 pi: pointedness m, rescaled velocity V, central charge c.
struct CnoidalParams {
  double m;
  double V;
  double c;
};

enum class OrbitKind { Elliptic, Hyperbolic, Parabolic, Exceptional };

struct OrbitClass {
  OrbitKind kind;
  int winding;
  bool operator==(const OrbitClass&) const = default;
};

std::string to_string(OrbitKind kind);
std::string to_string(const OrbitClass& oc);  // e.g. "Elliptic(2)"

// k/c; complex with has_rest_frame == false inside the wedge.
struct Representative {
  cplx value;
  bool has_rest_frame;
};

enum class Region { BelowWedge, LowerBoundary, Wedge, UpperBoundary, Middle, ParabolicLine, Above };
Region region_of(double m, double V, double tol = 1e-12);

double cnoidal_profile(const CnoidalParams& p, double x, double tau);
double cnoidal_speed(const CnoidalParams& p);

// K zeta(a) - zeta(K) a at a = wp^{-1}(V), imaginary part snapped per region.
cplx trace_exponent(double m, double V);

double monodromy_trace(double m, double V);
Representative uniform_representative(double m, double V);
double constant_trace(double kc);
// Inverse of constant_trace on the winding-n shell; n = 0 with Tr >= 2 gives kc >= 0.
double kc_from_trace(double trace, int n);
OrbitClass classify(double m, double V);
int winding_from_kc(double kc);
// +inf on the wedge boundaries; DomainError inside the wedge.
double dk_dV(double m, double V);
// Closed-form value of dk_dV on the line V = (2-m)/3.
double dk_dV_parabolic(double m);

enum class WedgeSide { below_wedge, above_wedge };
double level_curve(double target_kc, double m, WedgeSide side);

}  // namespace cnoidal
