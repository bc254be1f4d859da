#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qbat/model.hpp"

using namespace qbat;

namespace {

// Independent eigenvalue oracle: textbook quadratic formula on the explicit
// 2x2 first-moment matrix [[omega_b - i gamma/2, g], [g, omega_b]].
std::pair<Complex, Complex> eigen_oracle(const BatteryParams& p) {
  const Complex tr = Complex(2.0 * p.omega_b, -0.5 * p.gamma);
  const Complex det = Complex(p.omega_b, -0.5 * p.gamma) * p.omega_b - p.g * p.g;
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

bool close(Complex a, Complex b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(BatteryParams(1.0, 0.0, 0.0, 0.0));
  CHECK_THROWS_AS(BatteryParams(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BatteryParams(-1.0, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BatteryParams(1.0, -0.1, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BatteryParams(1.0, 1.0, -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BatteryParams(1.0, 1.0, 1.0, -0.1), std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(BatteryParams(1.0, nan, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("regime classification") {
  SUBCASE("exactly at the EP: g = gamma/4") {
    const RegimeData r = classify_regime(BatteryParams(1.0, 0.25, 1.0, 1.0));
    CHECK(r.regime == Regime::AtEP);
    CHECK(r.w == 0.0);
    CHECK(r.G == 0.0);
    CHECK(r.Gamma == 0.0);
    CHECK(r.g_ep == 0.25);
  }
  SUBCASE("uncoupled limit: g = 0") {
    const RegimeData r = classify_regime(BatteryParams(1.0, 0.0, 1.0, 1.0));
    CHECK(r.regime == Regime::BelowEP);
    CHECK(r.Gamma == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(std::isnan(r.G));
  }
  SUBCASE("above: g = gamma") {
    const RegimeData r = classify_regime(BatteryParams(1.0, 1.0, 1.0, 1.0));
    CHECK(r.regime == Regime::AboveEP);
    // G = sqrt(15)/4
    CHECK(r.G == doctest::Approx(std::sqrt(15.0) / 4.0).epsilon(1e-15));
    CHECK(r.G == doctest::Approx(0.9682458366).epsilon(1e-9));
    CHECK(std::isnan(r.Gamma));
  }
  SUBCASE("renormalized-rate identities") {
    const RegimeData above = classify_regime(BatteryParams(2.0, 0.7, 1.3, 0.5));
    CHECK(above.G * above.G + 0.25 * 1.3 * 0.25 * 1.3 ==
          doctest::Approx(0.7 * 0.7).epsilon(1e-14));
    const RegimeData below = classify_regime(BatteryParams(2.0, 0.2, 1.3, 0.5));
    CHECK(below.Gamma * below.Gamma + 0.2 * 0.2 ==
          doctest::Approx(0.25 * 1.3 * 0.25 * 1.3).epsilon(1e-14));
  }
  SUBCASE("scale covariance: (g, gamma) -> (lambda g, lambda gamma)") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const double g = std::pow(10.0, -2.0 + 4.0 * unif(rng));
      const double lambda = std::pow(10.0, -3.0 + 6.0 * unif(rng));
      const Regime base = classify_regime(BatteryParams(1.0, g, 1.0, 1.0)).regime;
      const Regime scaled =
          classify_regime(BatteryParams(1.0, lambda * g, lambda, 1.0)).regime;
      CHECK(base == scaled);
    }
  }
}

TEST_CASE("eigenvalues") {
  SUBCASE("decoupled modes") {
    const EigenPair e = eigenvalues(BatteryParams(5.0, 0.0, 1.0, 1.0));
    CHECK(e.eps_plus == Complex(5.0, 0.0));
    CHECK(e.eps_minus == Complex(5.0, -0.5));
  }
  SUBCASE("doubly degenerate at the EP") {
    const EigenPair e = eigenvalues(BatteryParams(3.0, 0.25, 1.0, 1.0));
    CHECK(e.eps_plus == e.eps_minus);
    CHECK(e.eps_plus == Complex(3.0, -0.25));
  }
  SUBCASE("g = gamma = 1, omega_b = 5") {
    const EigenPair e = eigenvalues(BatteryParams(5.0, 1.0, 1.0, 1.0));
    CHECK(close(e.eps_plus, Complex(5.0 + std::sqrt(15.0) / 4.0, -0.25), 1e-14));
    CHECK(close(e.eps_minus, Complex(5.0 - std::sqrt(15.0) / 4.0, -0.25), 1e-14));
  }
  SUBCASE("trace/determinant invariants and quadratic-formula oracle, 1000 draws") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double wb = 0.5 + 9.5 * unif(rng);
      const double g = std::pow(10.0, -2.0 + 4.0 * unif(rng));
      const double gam = std::pow(10.0, -1.0 + 2.0 * unif(rng));
      const BatteryParams p(wb, g, gam, 1.0);
      const EigenPair e = eigenvalues(p);

      const Complex tr_expect(2.0 * wb, -0.5 * gam);
      const Complex det_expect = Complex(wb, -0.5 * gam) * wb - g * g;
      // rounding units scale with the operand magnitudes (|eps_pm| >> |tr|
      // for strong coupling), four roundings each side
      const double eps4 = 4.0 * std::numeric_limits<double>::epsilon();
      const double mag = std::abs(e.eps_plus) + std::abs(e.eps_minus);
      CHECK(std::abs(e.eps_plus + e.eps_minus - tr_expect) <= eps4 * mag);
      CHECK(std::abs(e.eps_plus * e.eps_minus - det_expect) <=
            eps4 * (std::abs(e.eps_plus) * std::abs(e.eps_minus) +
                    std::abs(det_expect)));
      CHECK(e.eps_plus.imag() <= 1e-18);
      CHECK(e.eps_minus.imag() <= 1e-18);

      auto [o1, o2] = eigen_oracle(p);
      if (std::abs(e.eps_plus - o1) > std::abs(e.eps_plus - o2)) std::swap(o1, o2);
      CHECK(close(e.eps_plus, o1, 1e-12));
      CHECK(close(e.eps_minus, o2, 1e-12));
    }
  }
}

TEST_CASE("stable evaluators") {
  SUBCASE("spot values") {
    CHECK(stable_S(0.0, 3.0) == 3.0);
    CHECK(stable_S(1.0, std::numbers::pi / 2) == doctest::Approx(1.0).epsilon(1e-15));
    // sinh(1)/0.25 with w = -(1/16)
    CHECK(stable_S(-0.0625, 4.0) ==
          doctest::Approx(std::sinh(1.0) / 0.25).epsilon(1e-15));
    CHECK(stable_S(-0.0625, 4.0) == doctest::Approx(4.7008047746).epsilon(1e-10));
    CHECK(stable_C(0.0, 123.0) == 1.0);
    CHECK(stable_C(1.0, std::numbers::pi) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(stable_C(-1.0, 1.0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-15));
    CHECK(stable_C(-1.0, 1.0) == doctest::Approx(1.5430806348).epsilon(1e-10));
  }
  SUBCASE("series and direct paths agree inside the switch window") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
      const double t = 0.1 + 10.0 * unif(rng);
      const double mag = detail::series_switch * (0.2 + 0.79 * unif(rng));
      const double w = (unif(rng) < 0.5 ? -1.0 : 1.0) * mag / (t * t);
      CHECK(detail::stable_S_series(w, t) ==
            doctest::Approx(detail::stable_S_direct(w, t)).epsilon(1e-12));
      CHECK(detail::stable_C_series(w, t) ==
            doctest::Approx(detail::stable_C_direct(w, t)).epsilon(1e-12));
    }
  }
  SUBCASE("continuity through w = 0") {
    for (double t : {0.5, 2.0, 7.0}) {
      // w t^2 ~ 5e-15: the w-dependence itself is below 1e-12 here
      CHECK(stable_S(1e-16, t) == doctest::Approx(t).epsilon(1e-12));
      CHECK(stable_S(-1e-16, t) == doctest::Approx(t).epsilon(1e-12));
      CHECK(stable_C(1e-16, t) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(stable_C(-1e-16, t) == doctest::Approx(1.0).epsilon(1e-12));
      // and the two signs agree to first order in w
      CHECK(std::abs(stable_S(1e-14, t) - stable_S(-1e-14, t)) <= 1e-12 * t);
    }
  }
}
