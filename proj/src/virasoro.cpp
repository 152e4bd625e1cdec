#include "cnoidal/virasoro.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cnoidal/errors.hpp"

namespace cnoidal {
namespace {

constexpr double pi = std::numbers::pi;

// Guarded Newton on a monotone g with bracket [lo, hi], bisection when a step leaves it.
template <class G, class DG>
double monotone_root(G g, DG dg, double lo, double hi) {
  double glo = g(lo), ghi = g(hi);
  for (int i = 0; i < 200 && !(glo <= 0.0 && ghi >= 0.0); ++i) {
    const double w = hi - lo;
    if (glo > 0.0) lo -= w, glo = g(lo);
    if (ghi < 0.0) hi += w, ghi = g(hi);
  }
  if (!(glo <= 0.0 && ghi >= 0.0)) throw NumericalError("diffeo inverse: no bracket");
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    const double gx = g(x);
    if (gx == 0.0) return x;
    (gx < 0.0 ? lo : hi) = x;
    const double d = dg(x);
    double xn = d > 0.0 ? x - gx / d : 0.5 * (lo + hi);
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::fabs(xn - x) < 1e-13 * std::max(1.0, std::fabs(x)) || hi - lo < 1e-12) return xn;
    x = xn;
  }
  throw NumericalError("diffeo inverse did not converge");
}

}  // namespace

CircleDiffeo CircleDiffeo::identity() { return shift(0.0); }

CircleDiffeo CircleDiffeo::shift(double a) {
  CircleDiffeo d;
  d.f_ = [a](double x) { return x + a; };
  d.d1_ = [](double) { return 1.0; };
  d.d2_ = d.d3_ = [](double) { return 0.0; };
  d.inv_ = [a](double y) { return y - a; };
  return d;
}

CircleDiffeo CircleDiffeo::fourier(std::vector<double> amps, std::vector<double> phases) {
  if (amps.size() != phases.size()) throw DomainError("amplitude and phase counts differ");
  double slope = 0.0, reach = 0.0;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    slope += (k + 1.0) * std::fabs(amps[k]);
    reach += std::fabs(amps[k]);
  }
  if (slope >= 1.0) throw DomainError("sum k|a_k| must stay below 1 for f' > 0");
  // derivative j of sum a_k sin(k x + phi_k) is sum a_k k^j sin(k x + phi_k + j pi/2)
  auto series = [amps, phases](int j) {
    return [=](double x) {
      double s = 0.0;
      for (std::size_t k = 0; k < amps.size(); ++k) {
        const double kk = k + 1.0;
        s += amps[k] * std::pow(kk, j) * std::sin(kk * x + phases[k] + j * pi / 2);
      }
      return s;
    };
  };
  CircleDiffeo d;
  d.f_ = [s = series(0)](double x) { return x + s(x); };
  d.d1_ = [s = series(1)](double x) { return 1.0 + s(x); };
  d.d2_ = series(2);
  d.d3_ = series(3);
  d.inv_ = [f = d.f_, df = d.d1_, reach](double y) {
    return monotone_root([&](double x) { return f(x) - y; }, df, y - reach - 1e-12, y + reach + 1e-12);
  };
  return d;
}

CircleDiffeo CircleDiffeo::from_function(Fn f, Fn df, Fn d2f, Fn d3f, Fn inv) {
  if (!f) throw DomainError("diffeo needs an evaluator");
  CircleDiffeo d;
  d.f_ = std::move(f);
  d.d1_ = std::move(df);
  d.d2_ = std::move(d2f);
  d.d3_ = std::move(d3f);
  d.inv_ = std::move(inv);
  return d;
}

// Finite-difference fallbacks. Steps balance truncation against roundoff for each order.
double CircleDiffeo::d1(double x) const {
  if (d1_) return d1_(x);
  const double h = 1e-5;
  return (f_(x - 2 * h) - 8 * f_(x - h) + 8 * f_(x + h) - f_(x + 2 * h)) / (12 * h);
}

double CircleDiffeo::d2(double x) const {
  if (d2_) return d2_(x);
  const double h = 1e-3;
  return (-f_(x - 2 * h) + 16 * f_(x - h) - 30 * f_(x) + 16 * f_(x + h) - f_(x + 2 * h)) / (12 * h * h);
}

double CircleDiffeo::d3(double x) const {
  if (d3_) return d3_(x);
  const double h = 1e-2;
  return (f_(x - 3 * h) - 8 * f_(x - 2 * h) + 13 * f_(x - h) - 13 * f_(x + h) + 8 * f_(x + 2 * h) -
          f_(x + 3 * h)) /
         (8 * h * h * h);
}

double CircleDiffeo::inverse(double y) const {
  if (inv_) return inv_(y);
  const double x0 = y - (f_(0.0));
  return monotone_root([&](double x) { return f_(x) - y; }, [&](double x) { return d1(x); }, x0 - pi,
                       x0 + pi);
}

CircleDiffeo CircleDiffeo::compose(const CircleDiffeo& g) const {
  const CircleDiffeo f = *this;
  CircleDiffeo h;
  h.f_ = [f, g](double x) { return f(g(x)); };
  h.d1_ = [f, g](double x) { return f.d1(g(x)) * g.d1(x); };
  h.d2_ = [f, g](double x) {
    const double y = g(x), g1 = g.d1(x);
    return f.d2(y) * g1 * g1 + f.d1(y) * g.d2(x);
  };
  h.d3_ = [f, g](double x) {
    const double y = g(x), g1 = g.d1(x), g2 = g.d2(x);
    return f.d3(y) * g1 * g1 * g1 + 3 * f.d2(y) * g1 * g2 + f.d1(y) * g.d3(x);
  };
  h.inv_ = [f, g](double y) { return g.inverse(f.inverse(y)); };
  return h;
}

double schwarzian(const CircleDiffeo& f, double x) {
  const double a = f.d1(x);
  if (!(a > 0.0)) throw DomainError("diffeo is not orientation preserving here");
  const double r = f.d2(x) / a;
  return f.d3(x) / a - 1.5 * r * r;
}

Profile coadjoint(const Profile& p, const CircleDiffeo& f, double c, int resolution) {
  auto at = [p, f, c](double y) {
    const double x = f.inverse(y), a = f.d1(x);
    return (p(x) + c / 12.0 * schwarzian(f, x)) / (a * a);
  };
  if (resolution == 0) return Profile::from_function(at);
  auto sampled = [&](int n) {
    std::vector<double> q(n);
    for (int j = 0; j < n; ++j) q[j] = at(2.0 * pi * j / n);
    return Profile::from_samples(std::move(q));
  };
  if (resolution > 0) {
    if (resolution < 4 || resolution % 2 != 0) throw DomainError("resolution must be even and >= 4");
    return sampled(resolution);
  }
  // automatic: double until the interpolant matches the exact transform between nodes
  for (int n = 512;; n *= 2) {
    Profile q = sampled(n);
    double err = 0.0, scale = 1.0;
    for (int j = 0; j < n; j += std::max(1, n / 256)) {
      const double y = 2.0 * pi * (j + 0.5) / n, v = at(y);
      err = std::max(err, std::fabs(q(y) - v));
      scale = std::max(scale, std::fabs(v));
    }
    if (err <= 1e-9 * scale) return q;
    if (n >= 16384) throw NumericalError("coadjoint transform under-resolved at 16384 samples");
  }
}

Profile infinitesimal_coadjoint(const Profile& p, const Profile& xi, double c, int resolution) {
  if (resolution < 8 || resolution % 2 != 0) throw DomainError("resolution must be even and >= 8");
  const auto ps = p.sample(resolution), xs = xi.sample(resolution);
  // the interpolants must reproduce the inputs between nodes
  for (const Profile* q : {&p, &xi}) {
    if (q->is_sampled()) continue;
    const Profile interp = Profile::from_samples(q->sample(resolution));
    double err = 0.0, scale = 1.0;
    for (int j = 0; j < resolution; ++j) {
      const double x = 2.0 * pi * (j + 0.5) / resolution, v = (*q)(x);
      err = std::max(err, std::fabs(interp(x) - v));
      scale = std::max(scale, std::fabs(v));
    }
    if (err > 1e-9 * scale) throw NumericalError("profile under-resolved at this resolution");
  }
  const auto dp = spectral_derivative(ps, 1), dx = spectral_derivative(xs, 1),
             d3x = spectral_derivative(xs, 3);
  std::vector<double> out(resolution);
  for (int j = 0; j < resolution; ++j)
    out[j] = -xs[j] * dp[j] - 2.0 * dx[j] * ps[j] + c / 12.0 * d3x[j];
  return Profile::from_samples(std::move(out));
}

std::function<double(double)> density_transform(std::function<double(double)> psi, const CircleDiffeo& f,
                                                double h) {
  return [psi = std::move(psi), f, h](double y) {
    const double x = f.inverse(y);
    return std::pow(f.d1(x), -h) * psi(x);
  };
}

}  // namespace cnoidal
