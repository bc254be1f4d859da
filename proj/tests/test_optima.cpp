#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "qbat/energetics.hpp"
#include "qbat/optima.hpp"

using namespace qbat;
namespace nums = std::numbers;

namespace {

BatteryParams at_g(double g, double gamma = 1.0) {
  return BatteryParams(1.0, g, gamma, 1.0);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("transcendental constants") {
  const TranscendentalConstants tc = solve_transcendental_constants();
  // 20-digit references: Z = 1.1655611852072113068, zeta = 2.512862417252339354
  CHECK(std::abs(tc.Z - 1.1655611852072113) <= 1e-12);
  CHECK(std::abs(tc.zeta - 2.5128624172523394) <= 1e-11);
  CHECK(std::abs(std::tan(tc.Z) - 2.0 * tc.Z) <= 1e-10);
  const double x = 0.25 * tc.zeta;
  CHECK(std::abs(2.0 * x - std::tanh(x) * (1.0 + 2.0 * x)) <= 1e-11);
}

TEST_CASE("optimal energy time") {
  CHECK(optimal_energy_time(at_g(0.25)) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(optimal_energy_time(at_g(1.0)) ==
        doctest::Approx(1.36134442503459).epsilon(1e-13));
  CHECK(optimal_energy_time(at_g(0.1)) ==
        doctest::Approx(6.83807247830964).epsilon(1e-13));
  CHECK(optimal_energy_time(BatteryParams(1.0, 0.7, 0.0, 1.0)) ==
        doctest::Approx(nums::pi / 1.4).epsilon(1e-15));
  CHECK_THROWS_AS(optimal_energy_time(at_g(0.0)), std::domain_error);
}

TEST_CASE("optimal energy value") {
  CHECK(optimal_energy_value(at_g(0.25)) ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(optimal_energy_value(at_g(1.0)) ==
        doctest::Approx(0.50627655251863).epsilon(1e-12));
  CHECK(optimal_energy_value(at_g(0.1)) ==
        doctest::Approx(0.0327439771000729).epsilon(1e-12));
  CHECK(optimal_energy_value(BatteryParams(2.0, 1.0, 0.0, 1.5)) ==
        doctest::Approx(2.0 * 1.5 * 1.5).epsilon(1e-15));
  // Eq-24 equivalence: value is stored_energy at the optimal time
  for (double g : {0.03, 0.2, 0.25, 0.6, 20.0}) {
    const BatteryParams p = at_g(g);
    CHECK(rel(stored_energy(p, optimal_energy_time(p)), optimal_energy_value(p)) <=
          1e-12);
  }
}

TEST_CASE("optimal instantaneous power time") {
  SUBCASE("EP and lossless closed values") {
    CHECK(optimal_inst_power_time(at_g(0.25)) ==
          doctest::Approx(2.0 * (2.0 - std::sqrt(2.0))).epsilon(1e-14));
    CHECK(optimal_inst_power_time(BatteryParams(1.0, 2.0, 0.0, 1.0)) ==
          doctest::Approx(nums::pi / 8.0).epsilon(1e-15));
    CHECK_THROWS_AS(optimal_inst_power_time(at_g(0.0)), std::domain_error);
  }
  SUBCASE("weak-coupling bound ln(4)/gamma") {
    CHECK(optimal_inst_power_time(at_g(1e-5)) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-8));
  }
  SUBCASE("g = gamma = 1 (frozen) and maximizer agreement") {
    CHECK(optimal_inst_power_time(at_g(1.0)) ==
          doctest::Approx(0.582484600359457).epsilon(1e-13));
    for (double g : {0.05, 0.2, 0.25, 0.5, 1.0, 10.0}) {
      const BatteryParams p = at_g(g);
      const MaxResult m = numeric_optimum(p, TargetQuantity::InstPower);
      CHECK(rel(optimal_inst_power_time(p), m.x) <= 1e-8);
    }
  }
  SUBCASE("printed arctan argument stays positive and matches, g > gamma/4") {
    // numerator and denominator of the arctan argument change sign together
    // at 16 g^2 = 3 gamma^2; the sweep asserts positivity of the printed
    // form and its agreement with the regular rationalized evaluation.
    for (double lg = -0.59; lg <= 2.0; lg += 0.07) {
      const double g = std::pow(10.0, lg);
      if (std::abs(16.0 * g * g - 3.0) < 1e-6) continue;
      const double G = classify_regime(at_g(g)).G;
      const double arg =
          (std::sqrt(256.0 * g * g * g * g - 1.0) - 8.0 * G) / (16.0 * g * g - 3.0);
      CHECK(arg > 0.0);
      CHECK(rel(std::atan(arg) / G, optimal_inst_power_time(at_g(g))) <= 1e-9);
    }
  }
  SUBCASE("continuity at g = sqrt(3) gamma / 4") {
    const double gs = std::sqrt(3.0) / 4.0;
    const double tm = optimal_inst_power_time(at_g(gs * (1.0 - 1e-9)));
    const double t0 = optimal_inst_power_time(at_g(gs));
    const double tp = optimal_inst_power_time(at_g(gs * (1.0 + 1e-9)));
    CHECK(rel(tm, t0) <= 1e-8);
    CHECK(rel(tp, t0) <= 1e-8);
  }
}

TEST_CASE("optimal instantaneous power value") {
  CHECK(optimal_inst_power_value(at_g(0.25)) ==
        doctest::Approx(0.0576448490009004).epsilon(1e-12));
  CHECK(optimal_inst_power_value(BatteryParams(1.0, 3.0, 0.0, 1.0)) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(optimal_inst_power_value(at_g(1.0)) ==
        doctest::Approx(0.583501205237144).epsilon(1e-12));
  // strong coupling approaches omega_b Omega^2 g (1 - (pi+2)gamma/8g)
  const double g = 300.0;
  CHECK(optimal_inst_power_value(at_g(g)) ==
        doctest::Approx(g * (1.0 - (nums::pi + 2.0) / (8.0 * g))).epsilon(1e-4));
}

TEST_CASE("optimal average power time") {
  SUBCASE("EP, weak limit, lossless") {
    CHECK(optimal_avg_power_time(at_g(0.25)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(optimal_avg_power_time(at_g(1e-4)) ==
          doctest::Approx(2.512862417252339).epsilon(1e-7));
    const TranscendentalConstants& tc = transcendental_constants();
    CHECK(optimal_avg_power_time(BatteryParams(1.0, 2.0, 0.0, 1.0)) ==
          doctest::Approx(tc.Z / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(optimal_avg_power_time(at_g(0.0)), std::domain_error);
  }
  SUBCASE("g = gamma = 1 root (frozen) and maximizer agreement") {
    CHECK(optimal_avg_power_time(at_g(1.0)) ==
          doctest::Approx(0.909153787940138).epsilon(1e-11));
    for (double g : {0.02, 0.25, 0.7, 5.0}) {
      const BatteryParams p = at_g(g);
      const MaxResult m = numeric_optimum(p, TargetQuantity::AvgPower);
      CHECK(rel(optimal_avg_power_time(p), m.x) <= 1e-7);
    }
  }
  SUBCASE("turning-point equation residual is zero at the root") {
    for (double g : {0.05, 0.18, 0.4, 3.0}) {
      const BatteryParams p = at_g(g);
      const double t = optimal_avg_power_time(p);
      const RegimeData r = classify_regime(p);
      if (r.regime == Regime::BelowEP) {
        const double x = r.Gamma * t;
        CHECK(std::abs(2.0 * x - std::tanh(x) * (1.0 + 0.5 / r.Gamma * x)) <= 1e-10);
      } else {
        const double y = r.G * t;
        CHECK(std::abs(2.0 * y - std::tan(y) * (1.0 + 0.5 / r.G * y)) <= 1e-10);
      }
    }
  }
  SUBCASE("continuous through the EP, including the shrunk-bracket window") {
    const double t0 = optimal_avg_power_time(at_g(0.25));
    for (double eps : {1e-8, 1e-7, 3e-7}) {
      CHECK(rel(optimal_avg_power_time(at_g(0.25 * (1.0 + eps))), t0) <= 1e-6);
      CHECK(rel(optimal_avg_power_time(at_g(0.25 * (1.0 - eps))), t0) <= 1e-6);
    }
  }
}

TEST_CASE("optimal average power value") {
  CHECK(optimal_avg_power_value(at_g(1.0)) ==
        doctest::Approx(0.4425779762753).epsilon(1e-11));
  // lossless peak 0.72 omega_b Omega^2 g
  CHECK(optimal_avg_power_value(BatteryParams(1.0, 2.0, 0.0, 1.0)) / 2.0 ==
        doctest::Approx(0.724611353776708).epsilon(1e-12));
}

TEST_CASE("approximate average power time") {
  CHECK(approx_avg_power_time(at_g(0.25)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(approx_avg_power_time(at_g(0.01)) ==
        doctest::Approx(2.50875951791432).epsilon(1e-12));
  CHECK(approx_avg_power_time(at_g(100.0)) ==
        doctest::Approx(0.0115811998494067).epsilon(1e-12));
  // stays within a fraction of a percent of the exact root away from the EP
  CHECK(rel(approx_avg_power_time(at_g(0.01)), optimal_avg_power_time(at_g(0.01))) <=
        2e-3);
  CHECK(rel(approx_avg_power_time(at_g(100.0)), optimal_avg_power_time(at_g(100.0))) <=
        5e-3);
  CHECK_THROWS_AS(approx_avg_power_time(BatteryParams(1.0, 1.0, 0.0, 1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(approx_avg_power_time(at_g(0.0)), std::domain_error);
}

TEST_CASE("compute_optima self-consistency and methods") {
  for (double g : {0.05, 0.25, 1.0}) {
    const BatteryParams p = at_g(g);
    const OptimaResult o = compute_optima(p);
    CHECK(rel(stored_energy(p, o.t_E), o.E_at_tE) <= 1e-10);
    CHECK(rel(instantaneous_power(p, o.t_Pinst), o.Pinst_max) <= 1e-10);
    CHECK(rel(average_power(p, o.t_Pavg), o.Pavg_max) <= 1e-10);
    CHECK(o.t_E > 0.0);
    CHECK(o.t_Pinst > 0.0);
    CHECK(o.t_Pavg > 0.0);
    CHECK(o.method_E == OptMethod::ClosedForm);
    CHECK(o.method_Pinst == OptMethod::ClosedForm);
  }
  CHECK(compute_optima(at_g(0.25)).method_Pavg == OptMethod::ClosedForm);
  CHECK(compute_optima(at_g(1.0)).method_Pavg == OptMethod::RootFound);
  CHECK(compute_optima(BatteryParams(1.0, 1.0, 0.0, 1.0)).method_Pavg ==
        OptMethod::RootFound);
}

TEST_CASE("oracle sweep (reduced) and monotonicity") {
  double prev_tE = 0, prev_tPi = 0, prev_tPa = 0;
  double prev_vE = 0, prev_vPi = 0, prev_vPa = 0;
  bool first = true;
  for (double lg = -2.0; lg <= 2.0; lg += 0.21) {
    const BatteryParams p = at_g(std::pow(10.0, lg));
    const double tE = optimal_energy_time(p);
    const double tPi = optimal_inst_power_time(p);
    const double tPa = optimal_avg_power_time(p);
    CHECK(rel(numeric_optimum(p, TargetQuantity::StoredEnergy).x, tE) <= 1e-6);
    CHECK(rel(numeric_optimum(p, TargetQuantity::InstPower).x, tPi) <= 1e-6);
    CHECK(rel(numeric_optimum(p, TargetQuantity::AvgPower).x, tPa) <= 1e-6);
    const double vE = optimal_energy_value(p);
    const double vPi = optimal_inst_power_value(p);
    const double vPa = optimal_avg_power_value(p);
    if (!first) {
      CHECK(tE < prev_tE);
      CHECK(tPi < prev_tPi);
      CHECK(tPa < prev_tPa);
      CHECK(vE > prev_vE);
      CHECK(vPi > prev_vPi);
      CHECK(vPa > prev_vPa);
    }
    first = false;
    prev_tE = tE, prev_tPi = tPi, prev_tPa = tPa;
    prev_vE = vE, prev_vPi = vPi, prev_vPa = vPa;
  }
}

TEST_CASE("asymptotics table") {
  SUBCASE("prefactors") {
    const BatteryParams p = at_g(0.5);
    const AsymptoticsTable a = asymptotics(p);
    CHECK(a.Pavg_opt_weak / ((4 * 0.5) * (4 * 0.5)) ==
          doctest::Approx(0.0509080471986342).epsilon(1e-12));
    CHECK(a.Pavg_opt_strong / 0.5 ==
          doctest::Approx(0.724611353776708).epsilon(1e-12));
  }
  SUBCASE("strong-coupling t_E within 1% at g = 10 gamma") {
    const BatteryParams p = at_g(10.0);
    const AsymptoticsTable a = asymptotics(p);
    CHECK(rel(a.t_E_strong, optimal_energy_time(p)) <= 0.01);
  }
  SUBCASE("5% agreement at the sweep ends") {
    {
      const BatteryParams p = at_g(1e-2);
      const AsymptoticsTable a = asymptotics(p);
      CHECK(rel(a.t_E_weak, optimal_energy_time(p)) <= 0.05);
      CHECK(rel(a.E_opt_weak, optimal_energy_value(p)) <= 0.05);
      CHECK(rel(a.t_Pinst_weak, optimal_inst_power_time(p)) <= 0.05);
      CHECK(rel(a.Pinst_opt_weak, optimal_inst_power_value(p)) <= 0.05);
      CHECK(rel(a.Pavg_opt_weak, optimal_avg_power_value(p)) <= 0.05);
    }
    {
      const BatteryParams p = at_g(1e2);
      const AsymptoticsTable a = asymptotics(p);
      CHECK(rel(a.t_E_strong, optimal_energy_time(p)) <= 0.05);
      CHECK(rel(a.E_opt_strong, optimal_energy_value(p)) <= 0.05);
      CHECK(rel(a.t_Pinst_strong, optimal_inst_power_time(p)) <= 0.05);
      CHECK(rel(a.Pinst_opt_strong, optimal_inst_power_value(p)) <= 0.05);
      CHECK(rel(a.Pavg_opt_strong, optimal_avg_power_value(p)) <= 0.05);
    }
  }
  CHECK_THROWS_AS(asymptotics(BatteryParams(1.0, 1.0, 0.0, 1.0)),
                  std::domain_error);
}

TEST_CASE("dissipationless average power peak") {
  const AvgPowerPeak peak = dissipationless_avg_power_peak();
  CHECK(peak.z_approx == doctest::Approx(1.16522112532711).epsilon(1e-12));
  CHECK(std::round(peak.z_approx * 100.0) / 100.0 == 1.17);
  CHECK(std::abs(peak.z_approx - peak.z_exact) < 0.01);
  CHECK(peak.peak_exact == doctest::Approx(0.72).epsilon(0.01));
  CHECK(peak.peak_exact == doctest::Approx(0.724611353776708).epsilon(1e-12));
}
