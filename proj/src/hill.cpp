#include "cnoidal/hill.hpp"

#include <fftw3.h>

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "cnoidal/errors.hpp"
#include "cnoidal/weierstrass.hpp"

namespace cnoidal {
namespace {

constexpr double pi = std::numbers::pi;
using cvec = std::vector<cplx>;

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class RealFFT {
 public:
  explicit RealFFT(int n) : n_(n), real_(n), spec_(n / 2 + 1) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_r2c_1d(n, real_.data(), reinterpret_cast<fftw_complex*>(spec_.data()),
                                FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(spec_.data()), real_.data(),
                                FFTW_ESTIMATE);
  }
  ~RealFFT() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }
  RealFFT(const RealFFT&) = delete;
  RealFFT& operator=(const RealFFT&) = delete;

  cvec forward(const std::vector<double>& x) {
    real_ = x;
    fftw_execute(fwd_);
    return spec_;
  }
  // unnormalized inverse
  std::vector<double> backward(const cvec& s) {
    spec_ = s;
    fftw_execute(bwd_);
    return real_;
  }

 private:
  int n_;
  std::vector<double> real_;
  cvec spec_;
  fftw_plan fwd_, bwd_;
};

}  // namespace

Profile Profile::from_function(std::function<double(double)> f) {
  Profile p;
  p.f_ = std::move(f);
  return p;
}

Profile Profile::constant(double k) {
  return from_function([k](double) { return k; });
}

Profile Profile::from_samples(std::vector<double> samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 4 || n % 2 != 0) throw DomainError("profile needs an even number (>= 4) of samples");
  Profile p;
  RealFFT fft(n);
  cvec c = fft.forward(samples);
  for (int k = 0; k <= n / 2; ++k) c[k] *= (k == 0 || k == n / 2 ? 1.0 : 2.0) / n;
  p.coeffs_ = std::move(c);
  p.samples_ = std::move(samples);
  return p;
}

double Profile::operator()(double x) const {
  if (f_) return f_(x);
  const cplx step = std::polar(1.0, x);
  cplx e = 1.0;
  double s = 0.0;
  for (const cplx& a : coeffs_) {
    s += (a * e).real();
    e *= step;
  }
  return s;
}

std::vector<double> Profile::sample(int n) const {
  if (!f_ && static_cast<int>(samples_.size()) == n) return samples_;
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = (*this)(2.0 * pi * j / n);
  return out;
}

std::vector<double> spectral_derivative(const std::vector<double>& samples, int order) {
  const int n = static_cast<int>(samples.size());
  if (n < 4 || n % 2 != 0) throw DomainError("spectral derivative needs an even number (>= 4) of samples");
  if (order < 0) throw DomainError("negative derivative order");
  RealFFT fft(n);
  cvec s = fft.forward(samples);
  const cplx i(0.0, 1.0);
  for (int k = 0; k <= n / 2; ++k) {
    cplx f = 1.0 / double(n);
    for (int j = 0; j < order; ++j) f *= i * double(k);
    s[k] *= f;
  }
  if (order % 2 == 1) s[n / 2] = 0.0;
  return fft.backward(s);
}

FloquetResult floquet(const Profile& p, double c, double tol) {
  if (c == 0.0 || !std::isfinite(c)) throw DomainError("Hill's equation needs c != 0");
  namespace ode = boost::numeric::odeint;
  using State = std::array<double, 4>;  // psi1, psi1', psi2, psi2'
  const double q = 6.0 / c;
  auto rhs = [&](const State& y, State& dy, double x) {
    const double w = q * p(x);
    dy = {y[1], w * y[0], y[3], w * y[2]};
  };

  double max_dt = 2.0 * pi / 64.0;
  for (int attempt = 0; attempt < 12; ++attempt, max_dt /= 4.0) {
    State y{1.0, 0.0, 0.0, 1.0};
    double angle = 0.0, last = 0.0, last_x = 0.0;
    bool coarse = false;
    auto observe = [&](const State& s, double x) {
      if (!std::isfinite(s[0]) || !std::isfinite(s[2]))
        throw NumericalError("Floquet integration diverged at x = " + std::to_string(last_x));
      const double th = std::atan2(s[2], s[0]);
      double d = th - last;
      d -= 2.0 * pi * std::nearbyint(d / (2.0 * pi));
      if (std::fabs(d) >= pi / 2.0) coarse = true;
      angle += d;
      last = th;
      last_x = x;
    };
    auto stepper = ode::make_controlled(tol, tol, max_dt, ode::runge_kutta_dopri5<State>());
    ode::integrate_adaptive(stepper, rhs, y, 0.0, 2.0 * pi, std::min(1e-3, max_dt), observe);
    if (coarse) continue;

    FloquetResult r;
    r.M.a = {{{y[0], y[2]}, {y[1], y[3]}}};
    r.angle = angle;
    const double tr = r.M.trace(), w = angle / pi;
    if (std::fabs(tr) < 2.0 - 1e-8) {
      r.winding = static_cast<int>(std::floor(w));
    } else {
      // the fixed direction advances by exactly n pi, n even iff Tr > 0; any
      // other solution stays within pi of it, so take the nearest such n
      const int parity = tr > 0.0 ? 0 : 1;
      const int n = 2 * static_cast<int>(std::lround((w - parity) / 2.0)) + parity;
      r.winding = std::max(n, 0);
    }
    return r;
  }
  throw NumericalError("Floquet integration could not resolve the winding angle");
}

MonodromyMatrix floquet_monodromy(const Profile& p, double c) { return floquet(p, c).M; }

int winding_number(const Profile& p, double c) { return floquet(p, c).winding; }

LameCheck lame_exact_residual(double m, double V, const std::vector<cplx>& zs) {
  const RectLattice L = lattice(m);
  const cplx a = wp_inverse(V, L);
  const cplx za = zeta(a, L), sa = sigma(a, L);
  auto lattice_dist = [&](cplx z) {
    const double x = z.real() - 2.0 * L.omega1 * std::nearbyint(z.real() / (2.0 * L.omega1));
    const double y = std::isfinite(L.omega2_im)
                         ? z.imag() - 2.0 * L.omega2_im * std::nearbyint(z.imag() / (2.0 * L.omega2_im))
                         : z.imag();
    return std::hypot(x, y);
  };
  auto phi = [&](cplx z, double s) { return s * sigma(z + s * a, L) / (sigma(z, L) * sa) * std::exp(-s * za * z); };

  LameCheck out{0.0, 0.0, 0.0, 0.0, 0.0};
  for (const cplx& z : zs) {
    if (lattice_dist(z) < 1e-6 || lattice_dist(z + a) < 1e-6 || lattice_dist(z - a) < 1e-6)
      throw DomainError("evaluation point too close to a zero of sigma");
    const double h = 1e-4 * std::max(1.0, std::abs(z));
    const cplx P = wp(z, L);
    for (double s : {1.0, -1.0}) {
      const cplx f0 = phi(z, s);
      const cplx d2 = (-phi(z + 2.0 * h, s) + 16.0 * phi(z + h, s) - 30.0 * f0 + 16.0 * phi(z - h, s) -
                       phi(z - 2.0 * h, s)) /
                      (12.0 * h * h);
      const double res = std::abs(-d2 + 2.0 * P * f0 + V * f0) / (std::abs(f0) * (1.0 + 2.0 * std::abs(P) + std::fabs(V)));
      out.residual = std::max(out.residual, res);
    }
  }
  const cplx X = 2.0 * L.omega1 * za - 2.0 * L.eta1 * a;
  out.factor_plus = std::exp(-X);
  out.factor_minus = std::exp(X);
  if (!zs.empty()) {
    const cplx z = zs.front();
    for (double s : {1.0, -1.0}) {
      const cplx num = phi(z + 2.0 * L.omega1, s) / phi(z, s);
      const cplx ref = s > 0 ? out.factor_plus : out.factor_minus;
      out.factor_mismatch = std::max(out.factor_mismatch, std::abs(num / ref - 1.0));
    }
  }
  out.trace = (out.factor_plus + out.factor_minus).real();
  return out;
}

Profile kdv_evolve(const Profile& p, double c, double tau, int steps, int resolution) {
  if (steps <= 0) throw DomainError("kdv_evolve needs a positive step count");
  if (resolution < 16 || resolution % 2 != 0) throw DomainError("resolution must be even and >= 16");
  const int n = resolution, half = n / 2, cutoff = n / 3;
  const double dt = tau / steps;
  RealFFT fft(n);
  std::vector<double> u = p.sample(n);

  double umax = 0.0;
  for (double v : u) umax = std::max(umax, std::fabs(v));
  if (std::fabs(dt) * 3.0 * umax * cutoff > 2.5)
    throw NumericalError("kdv_evolve: time step violates the nonlinear stability limit");

  cvec E(half + 1), Eh(half + 1);
  for (int k = 0; k <= half; ++k) {
    const double kk = k;
    const cplx L(0.0, -c * kk * kk * kk / 12.0);
    E[k] = std::exp(L * dt);
    Eh[k] = std::exp(L * (dt / 2.0));
  }
  auto truncate = [&](cvec& s) {
    for (int k = cutoff + 1; k <= half; ++k) s[k] = 0.0;
  };
  // -(3/2) d/dx (u^2) in spectral space
  auto N = [&](const cvec& s) {
    cvec t = s;
    truncate(t);
    std::vector<double> x = fft.backward(t);
    for (double& v : x) v = v / n * (v / n);
    cvec q = fft.forward(x);
    for (int k = 0; k <= half; ++k) q[k] *= cplx(0.0, -1.5 * k);
    truncate(q);
    return q;
  };

  cvec s = fft.forward(u);
  s[half] = 0.0;
  const double mean = s[0].real();
  cvec tmp(half + 1);
  for (int it = 0; it < steps; ++it) {
    const cvec a = N(s);
    for (int k = 0; k <= half; ++k) tmp[k] = Eh[k] * (s[k] + dt * a[k] / 2.0);
    const cvec b = N(tmp);
    for (int k = 0; k <= half; ++k) tmp[k] = Eh[k] * s[k] + dt * b[k] / 2.0;
    const cvec cc = N(tmp);
    for (int k = 0; k <= half; ++k) tmp[k] = E[k] * s[k] + dt * Eh[k] * cc[k];
    const cvec d = N(tmp);
    for (int k = 0; k <= half; ++k)
      s[k] = E[k] * s[k] + dt * (E[k] * a[k] + 2.0 * Eh[k] * (b[k] + cc[k]) + d[k]) / 6.0;
    s[0] = mean;
    if (!std::isfinite(s[1].real())) throw NumericalError("kdv_evolve: solution blew up");
  }
  std::vector<double> out = fft.backward(s);
  for (double& v : out) v /= n;
  return Profile::from_samples(std::move(out));
}

}  // namespace cnoidal
