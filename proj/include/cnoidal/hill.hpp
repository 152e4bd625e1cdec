#pragma once
#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "cnoidal/elliptic.hpp"

namespace cnoidal {

// A 2 pi-periodic real profile, either analytic or given by uniform samples
// on [0, 2 pi) and evaluated through its trigonometric interpolant.
class Profile {
 public:
  static Profile from_function(std::function<double(double)> f);
  static Profile from_samples(std::vector<double> samples);
  static Profile constant(double k);

  double operator()(double x) const;
  std::vector<double> sample(int n) const;
  bool is_sampled() const { return !samples_.empty(); }
  const std::vector<double>& samples() const { return samples_; }

 private:
  std::function<double(double)> f_;
  std::vector<double> samples_;
  std::vector<std::complex<double>> coeffs_;  // half spectrum, scaled
};

// d^order/dx^order of a uniformly sampled periodic signal (Nyquist mode dropped
// for odd orders).
std::vector<double> spectral_derivative(const std::vector<double>& samples, int order);

// Transfer matrix over one period of -(c/6) psi'' + p psi = 0.
struct MonodromyMatrix {
  std::array<std::array<double, 2>, 2> a;
  double trace() const { return a[0][0] + a[1][1]; }
  double det() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
};

struct FloquetResult {
  MonodromyMatrix M;
  double angle;  // accumulated angle of (psi1, psi2) over the period
  int winding;
};

FloquetResult floquet(const Profile& p, double c, double tol = 1e-10);
MonodromyMatrix floquet_monodromy(const Profile& p, double c);
int winding_number(const Profile& p, double c);

// Closed-form Lame solutions checked against their ODE and monodromy.
struct LameCheck {
  double residual;          // max relative residual of -phi'' + 2 wp phi + V phi
  double factor_mismatch;   // |numerical z -> z + 2K factor / closed form - 1|, both solutions
  std::complex<double> factor_plus, factor_minus;
  double trace;             // factor_plus + factor_minus
};
LameCheck lame_exact_residual(double m, double V, const std::vector<std::complex<double>>& zs);

// Pseudo-spectral integration of p_t + 3 p p_x - (c/12) p_xxx = 0.
Profile kdv_evolve(const Profile& p, double c, double tau, int steps, int resolution = 512);

}  // namespace cnoidal
