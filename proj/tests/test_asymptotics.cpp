#include <cmath>
#include <numbers>

#include "cnoidal/asymptotics.hpp"
#include "cnoidal/errors.hpp"
#include "cnoidal/orbit.hpp"
#include "cnoidal/weierstrass.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cnoidal;
using std::numbers::pi;

namespace {
double exact_kc(double m, double V) { return uniform_representative(m, V).value.real(); }
}  // namespace

TEST_CASE("linear law at large |V|") {
  const double m = 0.5;
  for (double V : {100.0, -100.0}) {
    const double e = exact_kc(m, V);
    CHECK(std::fabs(k_large_V(m, V).value / e - 1.0) < 1e-3);
    CHECK(k_large_V(m, V).small == doctest::Approx(0.01));
  }
  double lo = 1e300, hi = 0.0;
  for (double V = 50; V <= 1600; V *= 2) {
    const double s = std::fabs(k_large_V(m, V).value - exact_kc(m, V)) * V;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(hi / lo < 1.5);
}

TEST_CASE("exceptional level curves at large n") {
  const double m = 0.2;
  auto rel = [&](int n) {
    const double exact = level_curve(-n * n / 24.0, m, WedgeSide::below_wedge);
    return std::fabs(exceptional_V_asymptote(n, m).value / exact - 1.0);
  };
  CHECK(rel(30) < 0.01);
  CHECK(rel(40) < rel(10));
  CHECK_THROWS_AS(exceptional_V_asymptote(0, m), DomainError);
}

TEST_CASE("square-root law near the wedge boundaries") {
  const double m = 0.5, lower = -(m + 1) / 3, upper = (2 * m - 1) / 3;
  const double nu = 1e-6;
  CHECK(std::fabs(k_near_wedge(m, lower - nu, WedgeBoundary::lower).value - exact_kc(m, lower - nu)) < 1e-4);
  CHECK(std::fabs(k_near_wedge(m, upper + nu, WedgeBoundary::upper).value - exact_kc(m, upper + nu)) < 1e-4);
  CHECK(k_near_wedge(m, lower, WedgeBoundary::lower).value == doctest::Approx(-1.0 / 24).epsilon(1e-15));
  CHECK(k_near_wedge(m, upper, WedgeBoundary::upper).value == doctest::Approx(-1.0 / 24).epsilon(1e-15));
  CHECK_THROWS_AS(k_near_wedge(m, lower + 0.01, WedgeBoundary::lower), DomainError);
  CHECK_THROWS_AS(k_near_wedge(m, upper - 0.01, WedgeBoundary::upper), DomainError);
  // leading correction is linear in nu
  auto err = [&](double n) {
    return std::fabs(k_near_wedge(m, lower - n, WedgeBoundary::lower).value - exact_kc(m, lower - n));
  };
  const double r = err(1e-4) / err(5e-5);
  CHECK(r > 1.5);
  CHECK(r < 3.0);
}

TEST_CASE("non-perturbative approach to m = 1") {
  const double kc = -4.0 / 24;
  // exponent rate pi (n - 1) for n = 2
  const double d1 = 0.04, d2 = 0.01;
  const double a1 = one_minus_m_nonperturbative(kc, -2.0 / 3 - d1).value;
  const double a2 = one_minus_m_nonperturbative(kc, -2.0 / 3 - d2).value;
  CHECK(std::log(a1 / a2) / (1 / std::sqrt(d2) - 1 / std::sqrt(d1)) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(one_minus_m_nonperturbative(kc, -2.0 / 3 - 1e-6).value < 1e-300);
  CHECK_THROWS_AS(one_minus_m_nonperturbative(-1.0 / 24, -0.7), DomainError);

  // invert the exact level curve for m, parametrised by t = -log(1 - m)
  const double V = -2.0 / 3 - 0.01;
  const double t = oracle::bisect(
      [&](double t) { return level_curve(kc, 1 - std::exp(-t), WedgeSide::below_wedge) - V; }, 1.0, 36.0, 1e-14);
  const double m = 1 - std::exp(-t);
  const double pred = one_minus_m_nonperturbative(kc, level_curve(kc, m, WedgeSide::below_wedge)).value;
  CHECK(std::fabs(pred / (1 - m) - 1) < 0.1);
}

TEST_CASE("finite slope approach to m = 1") {
  for (double m : {0.9, 0.99})
    CHECK(std::fabs(V_near_m1(0.0, m).value - (2 - m) / 3) < 1e-15);
  auto slope = [](double kc) { return (V_near_m1(kc, 0.99).value - 1.0 / 3) / 0.01; };
  CHECK(slope(-1.0 / 24 + 1e-9) == doctest::Approx(-2.0 / 3).epsilon(1e-6));
  for (double kc : {-0.03, -0.01, 0.0, 0.02, 0.1}) CHECK(slope(kc) > slope(-1.0 / 24 + 1e-9));
  const double m = 0.999;
  CHECK(std::fabs(V_near_m1(0.05, m).value - level_curve(0.05, m, WedgeSide::above_wedge)) < 1e-4);
  CHECK_THROWS_AS(V_near_m1(-1.0 / 24, 0.99), DomainError);
}

TEST_CASE("linear approach to m = 0") {
  CHECK(V_near_m0(0.3, 0.0).value == doctest::Approx(24 * 0.3 + 2.0 / 3));
  for (double m : {0.01, 0.1}) CHECK(std::fabs(V_near_m0(0.0, m).value - (2 - m) / 3) < 1e-15);
  CHECK(std::fabs(V_near_m0(0.1, 0.05).value - level_curve(0.1, 0.05, WedgeSide::above_wedge)) < 1e-3);
  CHECK(V_near_m0(-1.0 / 24 + 1e-4, 0.01).unreliable);
  CHECK_FALSE(V_near_m0(0.1, 0.01).unreliable);
}

TEST_CASE("degenerate Weierstrass functions") {
  {
    const double m = 1e-3;
    const auto L = lattice(m);
    const auto z = degenerate_zeta(L.omega1, m, DegenerateEnd::m_to_0);
    CHECK(std::abs(z.value - zeta(L.omega1, L)) < 1e-6);
    CHECK(std::fabs(z.value.real() - pi * pi / (12 * L.omega1)) < 1e-5);
  }
  {
    const double m = 1e-4;
    const auto L = lattice(m);
    double err = 0.0;
    for (int j = 1; j <= 10; ++j) {
      const cplx z(0.17 * j, 0.05 * j);
      err = std::max(err, std::abs(degenerate_wp(z, m, DegenerateEnd::m_to_0).value - wp(z, L)));
    }
    CHECK(err < 1e-6);
  }
  {
    const double m = 1 - 1e-3;
    const auto L = lattice(m);
    const double Kp = L.omega2_im;
    const cplx iKp(0.0, Kp);
    const auto z = degenerate_zeta(iKp, m, DegenerateEnd::m_to_1);
    CHECK(std::abs(z.value - zeta(iKp, L)) < 1e-6);
    CHECK(std::abs(z.value - cplx(0.0, -pi * pi / (12 * Kp))) < 1e-6);
    // Legendre relation carries this to zeta(K)
    const double K = L.omega1;
    const double n20t = pi / (2 * Kp) - pi * pi * K / (12 * Kp * Kp);
    CHECK(std::fabs(L.eta1 - n20t) < 1e-5 * K);
    double err = 0.0;
    for (int j = 1; j <= 10; ++j) {
      const cplx w(0.3 * j, 0.1 * j);
      err = std::max(err, std::abs(degenerate_wp(w, m, DegenerateEnd::m_to_1).value - wp(w, L)));
    }
    CHECK(err < 1e-6);
  }
}

TEST_CASE("complete integrals near m = 1") {
  {
    const double m = 1 - 1e-10;
    CHECK(std::fabs(K_asymptotes(m).K - ellint_K(m)) < 1e-8);
  }
  {
    const double m = 1 - 1e-4;
    CHECK(std::fabs(K_asymptotes(m).Kcomp - ellint_K(1 - m)) < 1e-8);
  }
  // remainder ~ (1-m) log(1-m) / 8
  for (double mc : {1e-3, 1e-5, 1e-7}) {
    const double m = 1 - mc, d = 1 - m;
    const double r = (ellint_K(m) - K_asymptotes(m).K) / (d * std::fabs(std::log(d)));
    CHECK(r > 0.1);
    CHECK(r < 0.3);
  }
}

TEST_CASE("level curves converge to V = -2/3 or 1/3 as m -> 1") {
  for (double kc : {-0.1, -1.0 / 6, 0.05, -0.02, 0.3}) {
    const bool below = kc < -1.0 / 24;
    const double limit = below ? -2.0 / 3 : 1.0 / 3;
    double prev = 1e300, first = 0.0;
    for (int j = 2; j <= 6; ++j) {
      const double m = 1 - std::pow(10.0, -j);
      const double d = std::fabs(level_curve(kc, m, below ? WedgeSide::below_wedge : WedgeSide::above_wedge) - limit);
      CHECK(d < prev);
      if (j == 2) first = d;
      prev = d;
    }
    // below the wedge the approach is only logarithmic in 1 - m
    CHECK(prev < 0.5 * first);
  }
}

TEST_CASE("convergence orders against the exact modules") {
  for (const auto& c : convergence_report()) {
    INFO(c.name);
    CHECK(c.pass);
  }
}
