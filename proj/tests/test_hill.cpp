#include <cmath>
#include <numbers>
#include <random>

#include "cnoidal/errors.hpp"
#include "cnoidal/hill.hpp"
#include "cnoidal/orbit.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cnoidal;
using std::numbers::pi;

TEST_CASE("Floquet monodromy of constant profiles") {
  const auto zero = floquet(Profile::constant(0.0), 1.0);
  CHECK(std::fabs(zero.M.trace() - 2.0) < 1e-10);
  CHECK(std::fabs(zero.M.a[1][0]) < 1e-10);
  CHECK(std::fabs(zero.M.a[0][1] - 2 * pi) < 1e-9);
  for (double c : {1.0, -3.0, 24.0})
    for (double kc : {0.2, 0.01, -0.01, -0.04, -0.1, -1.0 / 6, -0.4}) {
      const auto r = floquet(Profile::constant(kc * c), c);
      CHECK(std::fabs(r.M.trace() - constant_trace(kc)) < 1e-9 * std::max(1.0, std::fabs(r.M.trace())));
      CHECK(std::fabs(r.M.det() - 1.0) < 1e-8);
    }
  CHECK(winding_number(Profile::constant(-1.0 / 6), 1.0) == 2);
  CHECK(winding_number(Profile::constant(1.0), 1.0) == 0);
  CHECK(winding_number(Profile::constant(-1.0 / 24), 1.0) == 1);
  CHECK(winding_number(Profile::constant(-0.5), 1.0) == winding_from_kc(-0.5));
  CHECK_THROWS_AS(floquet(Profile::constant(1.0), 0.0), DomainError);
}

TEST_CASE("Floquet monodromy of cnoidal profiles") {
  const CnoidalParams P{0.5, -0.2, 1.0};
  const auto prof = Profile::from_function([&](double x) { return cnoidal_profile(P, x, 0.0); });
  const auto r = floquet(prof, 1.0);
  CHECK(r.M.trace() < -2.0);
  CHECK(std::fabs(r.M.trace() / monodromy_trace(0.5, -0.2) - 1.0) < 1e-6);
  CHECK(r.winding == 1);
  // independent RK4 integration
  const auto o = oracle::floquet_rk4(prof, 1.0);
  CHECK(std::fabs(r.M.trace() - o.trace) < 1e-7 * std::fabs(o.trace));
  CHECK(std::fabs(r.angle - o.angle) < 1e-6);
  // winding parity follows the trace sign outside the elliptic range
  for (double m : {0.3, 0.7})
    for (double V : {-0.9, -0.3, 0.0, 0.2, 0.8, 1.5}) {
      const CnoidalParams Q{m, V, 1.0};
      const auto f = floquet(Profile::from_function([&](double x) { return cnoidal_profile(Q, x, 0.0); }), 1.0);
      if (std::fabs(f.M.trace()) > 2.0) CHECK((f.winding % 2 == 1) == (f.M.trace() < 0.0));
      CHECK(f.winding == classify(m, V).winding);
    }
}

TEST_CASE("sampled profiles interpolate spectrally") {
  const CnoidalParams P{0.4, 0.3, 2.0};
  const auto f = Profile::from_function([&](double x) { return cnoidal_profile(P, x, 0.0); });
  const auto s = Profile::from_samples(f.sample(256));
  for (double x : {0.01, 1.3, 3.9, 6.2}) CHECK(std::fabs(s(x) - f(x)) < 1e-12);
  CHECK(std::fabs(floquet(s, 2.0).M.trace() - floquet(f, 2.0).M.trace()) < 1e-8);
}

TEST_CASE("exact Lame solutions") {
  std::vector<cplx> zs;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.2, 1.6);
  for (int i = 0; i < 20; ++i) zs.emplace_back(U(rng), U(rng) * 0.8);
  const auto r = lame_exact_residual(0.5, 1.0, zs);
  CHECK(r.residual < 1e-6);
  CHECK(std::abs(r.factor_plus * r.factor_minus - 1.0) < 1e-8);
  CHECK(r.factor_mismatch < 1e-8);
  CHECK(std::fabs(r.trace - monodromy_trace(0.5, 1.0)) < 1e-8 * std::fabs(r.trace));
  for (double V : {-1.0, -0.2, 0.2}) {
    const auto q = lame_exact_residual(0.5, V, {cplx(0.4, 0.3), cplx(1.0, 0.9)});
    CHECK(q.residual < 1e-6);
    CHECK(std::fabs(q.trace - monodromy_trace(0.5, V)) < 1e-8 * std::max(2.0, std::fabs(q.trace)));
  }
  CHECK_THROWS_AS(lame_exact_residual(0.5, 1.0, {cplx(0.0, 0.0)}), DomainError);
}

TEST_CASE("KdV evolution") {
  const auto c0 = kdv_evolve(Profile::constant(0.7), 1.0, 0.1, 50);
  for (double v : c0.samples()) CHECK(std::fabs(v - 0.7) < 1e-12);

  const double c = -32 * pi * pi * pi, tau = 1e-4;
  const CnoidalParams P{0.5, 0.4, c};
  const auto p0 = Profile::from_function([&](double x) { return cnoidal_profile(P, x, 0.0); });
  const auto p1 = kdv_evolve(p0, c, tau, 200);
  double err = 0.0, mean0 = 0.0, mean1 = 0.0;
  const auto s0 = p0.sample(512);
  for (int j = 0; j < 512; ++j) {
    const double x = 2 * pi * j / 512;
    err = std::max(err, std::fabs(p1.samples()[j] - cnoidal_profile(P, x, tau)));
    mean0 += s0[j] / 512;
    mean1 += p1.samples()[j] / 512;
  }
  CHECK(err < 1e-6);
  CHECK(std::fabs(mean0 - mean1) < 1e-12);
  // the evolved wave stays on its orbit
  CHECK(std::fabs(floquet(p1, c).M.trace() - floquet(p0, c).M.trace()) < 1e-5);
  CHECK_THROWS_AS(kdv_evolve(p0, c, 1.0, 1), NumericalError);
}
