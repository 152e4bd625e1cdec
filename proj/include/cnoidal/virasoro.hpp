#pragma once
#include <functional>
#include <vector>

#include "cnoidal/hill.hpp"

namespace cnoidal {

// Orientation-preserving map of the circle lifted to R: f'(x) > 0 and
// f(x + 2 pi) = f(x) + 2 pi.
class CircleDiffeo {
 public:
  using Fn = std::function<double(double)>;

  static CircleDiffeo identity();
  static CircleDiffeo shift(double a);
  // x + sum_k a_k sin(k x + phi_k), k = 1..n; requires sum k |a_k| < 1
  static CircleDiffeo fourier(std::vector<double> amps, std::vector<double> phases);
  // user map; missing derivatives fall back to finite differences, a missing
  // inverse to guarded Newton
  static CircleDiffeo from_function(Fn f, Fn df = {}, Fn d2f = {}, Fn d3f = {}, Fn inv = {});

  double operator()(double x) const { return f_(x); }
  double d1(double x) const;
  double d2(double x) const;
  double d3(double x) const;
  double inverse(double y) const;

  // (*this) o g
  CircleDiffeo compose(const CircleDiffeo& g) const;

 private:
  Fn f_, d1_, d2_, d3_, inv_;
};

double schwarzian(const CircleDiffeo& f, double x);

// (f . p)(f(x)) = [p(x) + (c/12) S[f](x)] / f'(x)^2 sampled on a uniform grid.
// resolution > 0 fixes the grid; -1 doubles from 512 until the interpolant is
// accurate to 1e-9 between nodes; 0 evaluates pointwise.
Profile coadjoint(const Profile& p, const CircleDiffeo& f, double c, int resolution = -1);

// -xi p' - 2 xi' p + (c/12) xi''' by spectral differentiation.
Profile infinitesimal_coadjoint(const Profile& p, const Profile& xi, double c, int resolution = 512);

// (f . psi)(f(x)) = f'(x)^(-h) psi(x)
std::function<double(double)> density_transform(std::function<double(double)> psi,
                                                const CircleDiffeo& f, double h);

}  // namespace cnoidal
