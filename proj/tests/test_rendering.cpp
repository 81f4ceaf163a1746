#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hapbench/device_model.hpp"
#include "hapbench/errors.hpp"
#include "hapbench/rendering.hpp"
#include "support/oracles.hpp"

using namespace hapbench;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rel(double a, double b) { return std::abs(a / b - 1.0); }

GeometrySpec bench_geometry(int rotors) { return {0.0511, 0.007, 0.17, 0.04, rotors}; }

SystemDescription mr_system() {
  SystemDescription s;
  s.name = "mr";
  s.actuator = {"Proposed drum clutch", 0.4, 2.7e-7, 0.4, 1.0, 0.085, Technology::MR};
  s.geometry = bench_geometry(2);
  s.plant = oracle::kMr;
  s.delay_T = 0.001;
  return s;
}

SystemDescription em_system(const PlantParams& p, double rated, double inertia) {
  SystemDescription s;
  s.name = "em";
  s.actuator = {"em", rated, inertia, 2.0 * rated, p.b1, 0.5, Technology::EM};
  s.geometry = bench_geometry(1);
  s.plant = p;
  return s;
}

const auto kGrid = freq_grid(0.1, 500.0, 2000);

}  // namespace

TEST_CASE("maximum renderable stiffness") {
  CHECK(k_max(0.7, bench_geometry(1), 0.04) == doctest::Approx(751.5).epsilon(1e-4));
  CHECK(k_max(0.4, bench_geometry(2), 0.04) == doctest::Approx(429.4).epsilon(1e-4));
  CHECK(k_max(0.4, bench_geometry(2), 0.08) == 0.5 * k_max(0.4, bench_geometry(2), 0.04));
  CHECK_THROWS_AS(k_max(0.4, bench_geometry(2), 0.0), ValidationError);
}

TEST_CASE("analytic rendering bandwidth") {
  CHECK(rendering_bandwidth_analytic(200.0, 0.0155) == doctest::Approx(113.59).epsilon(1e-4));
  CHECK(std::abs(rendering_bandwidth_analytic(200.0, 0.0155) / kTwoPi - 18.08) <= 0.005);
  CHECK(rendering_bandwidth_analytic(200.0, 0.0448) == doctest::Approx(66.82).epsilon(1e-4));
  CHECK(std::abs(rendering_bandwidth_analytic(200.0, 0.0448) / kTwoPi - 10.63) <= 0.005);
  CHECK(rendering_bandwidth_analytic(800.0, 0.0155) == doctest::Approx(2.0 * rendering_bandwidth_analytic(200.0, 0.0155)));
  CHECK_THROWS_AS(rendering_bandwidth_analytic(0.0, 0.0155), ValidationError);
}

TEST_CASE("detected rendering bandwidth") {
  const auto mr = closed_loop_impedance(oracle::kMr, {200.0, 0.0, 17.18}, kGrid);
  const double w_mr = rendering_bandwidth_detected(mr);
  CHECK(rel(w_mr, 113.59) < 0.05);

  const auto em = closed_loop_impedance(oracle::kEm136209, {200.0, 0.0, 30.06}, kGrid);
  const double w_em = rendering_bandwidth_detected(em);
  CHECK(rel(w_em, 66.82) < 0.05);
  CHECK(w_em < w_mr);

  const auto passive = closed_loop_impedance(oracle::kMr, {0.0, 0.0, 17.18}, kGrid);
  CHECK_THROWS_AS(rendering_bandwidth_detected(passive), NoInteriorExtremum);
}

TEST_CASE("anti-resonance precedes the system resonance") {
  const auto em = closed_loop_impedance(oracle::kEm136209, {200.0, 0.0, 30.06}, kGrid);
  const auto peak = detect_system_resonance(em);
  REQUIRE(peak.has_value());
  CHECK(rendering_bandwidth_detected(em) < *peak);
  CHECK_FALSE(detect_system_resonance(closed_loop_impedance(oracle::kMr, {200.0, 0.0, 17.18}, kGrid)).has_value());
}

TEST_CASE("detection agrees with the analytic law in the stiff, lightly damped regime") {
  const double K = 200.0;
  int checked = 0;
  for (double m1 : {0.75e-3, 1.5e-3, 3e-3})
    for (double m2 : {7e-3, 14e-3, 28e-3})
      for (double k : {2000.0, 4000.0, 8000.0}) {
        const double m = m1 + m2;
        const double b1 = 0.1 * std::sqrt(K * m);
        REQUIRE(k >= 10.0 * K);
        const PlantParams p{m1, b1, m2, k, 20.0};
        const auto cl = closed_loop_impedance(p, {K, 0.0, 1e3}, kGrid);
        CHECK(rel(rendering_bandwidth_detected(cl), rendering_bandwidth_analytic(K, m)) < 0.05);
        ++checked;
      }
  CHECK(checked == 27);
}

TEST_CASE("effective decomposition of pure elements") {
  const auto spring = frequency_response(RationalTF(Polynomial({200.0}), Polynomial({0.0, 1.0})), kGrid);
  const auto e = effective_decomposition(spring);
  for (std::size_t i = 0; i < kGrid.size(); ++i) {
    REQUIRE(e.k_eff[i].has_value());
    CHECK(*e.k_eff[i] == doctest::Approx(200.0).epsilon(1e-14));
    CHECK(e.b_eff[i] == 0.0);
    CHECK_FALSE(e.m_eff[i].has_value());
  }
  const auto mass = frequency_response(RationalTF(Polynomial({0.0, 0.0155}), Polynomial({1.0})), kGrid);
  const auto em = effective_decomposition(mass);
  for (std::size_t i = 0; i < kGrid.size(); ++i) {
    REQUIRE(em.m_eff[i].has_value());
    CHECK(*em.m_eff[i] == doctest::Approx(0.0155).epsilon(1e-14));
    CHECK(em.b_eff[i] == 0.0);
    CHECK_FALSE(em.k_eff[i].has_value());
  }
}

TEST_CASE("effective decomposition of the MR closed loop") {
  const std::vector<double> w{kTwoPi * 0.1, kTwoPi * 1.0, kTwoPi * 100.0};
  const auto cl = effective_decomposition(closed_loop_impedance(oracle::kMr, {200.0, 0.001, 17.18}, w));
  REQUIRE(cl.k_eff[1].has_value());
  CHECK(rel(*cl.k_eff[1], 200.0) < 0.05);
  REQUIRE(cl.m_eff[2].has_value());
  CHECK(rel(*cl.m_eff[2], 0.0155) < 0.10);
  const auto passive = effective_decomposition(closed_loop_impedance(oracle::kMr, {0.0, 0.0, 17.18}, w));
  CHECK(rel(passive.b_eff[0], 1.0) < 1e-3);
}

TEST_CASE("stiffness hands off to mass at the anti-resonance") {
  for (const auto& p : {oracle::kMr, oracle::kEm136209, oracle::kEm118890}) {
    const auto fr = closed_loop_impedance(p, {200.0, 0.0, 1e3}, kGrid);
    const auto e = effective_decomposition(fr);
    std::size_t cross = 0;
    for (std::size_t i = 1; i < kGrid.size(); ++i)
      if (e.k_eff[i - 1] && e.m_eff[i]) {
        cross = i;
        break;
      }
    REQUIRE(cross > 0);
    const double w_dip = rendering_bandwidth_detected(fr);
    CHECK(w_dip >= kGrid[cross - 2]);
    CHECK(w_dip <= kGrid[cross + 1]);
  }
}

TEST_CASE("rendering area") {
  const auto zero = rendering_area(oracle::kMr, {0.0, 0.001, 17.18}, kGrid);
  CHECK(zero.area_metric == 0.0);
  CHECK(zero.passive_curve.value == zero.closed_curve.value);
  CHECK_FALSE(zero.omega_s_analytic.has_value());

  const double km = k_max(0.4, bench_geometry(2), 0.04);
  const auto at_max = rendering_area(oracle::kMr, {km, 0.001, 17.18}, kGrid);
  CHECK(at_max.area_metric > 0.0);
  REQUIRE(at_max.omega_s_detected.has_value());
  CHECK(rel(*at_max.omega_s_detected, 166.4) < 0.05);
  CHECK(rel(*at_max.omega_s_analytic, 166.4) < 1e-3);
  CHECK(at_max.transmission_mode == doctest::Approx(1718.2).epsilon(1e-4));

  double previous = 0.0;
  for (double K : {50.0, 100.0, 200.0, 400.0}) {
    const double a = rendering_area(oracle::kMr, {K, 0.001, 17.18}, kGrid).area_metric;
    CHECK(a >= previous);
    previous = a;
  }
}

TEST_CASE("area at K_max exceeds the area at half of it") {
  const SystemDescription systems[] = {mr_system(), em_system(oracle::kEm118890, 0.046, 20e-7),
                                       em_system(oracle::kEm136209, 0.35, 209e-7)};
  for (const auto& s : systems) {
    const double km = s.k_max();
    const auto full = rendering_area(s.plant, {km, s.delay_T, s.f_max()}, kGrid);
    const auto half = rendering_area(s.plant, {0.5 * km, s.delay_T, s.f_max()}, kGrid);
    CHECK(full.area_metric > half.area_metric);
    CHECK(half.area_metric >= 0.0);
  }
}

TEST_CASE("log area between curves") {
  FrequencyResponse a{{1.0, 10.0, 100.0}, {1.0, 1.0, 1.0}, std::nullopt};
  FrequencyResponse b{{1.0, 10.0, 100.0}, {10.0, 10.0, 10.0}, std::nullopt};
  CHECK(log_area_between(a, b) == doctest::Approx(2.0));
  CHECK(log_area_between(b, a) == 0.0);
}

TEST_CASE("gearing sweep") {
  const std::vector<double> g{1.0, 2.0, 4.0};
  const auto rows = sweep(mr_system(), SweepAxis::gearing, g);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].m_total == doctest::Approx(0.0155).epsilon(1e-12));
  CHECK(rows[1].m_total == doctest::Approx(0.0200).epsilon(1e-12));
  CHECK(rows[2].m_total == doctest::Approx(0.0380).epsilon(1e-12));
  CHECK(rows[0].b_total_dc == 1.0);
  CHECK(rows[2].b_total_dc == 16.0);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].value == g[i]);
  CHECK(rows[2].k_max == doctest::Approx(4.0 * rows[0].k_max));

  const std::vector<double> dense{0.5, 0.8, 1.0, 1.3, 2.0, 3.0, 4.0, 6.0};
  const auto many = sweep(mr_system(), SweepAxis::gearing, dense);
  for (std::size_t i = 1; i < many.size(); ++i) CHECK(many[i].omega_s_analytic <= many[i - 1].omega_s_analytic);

  const std::vector<double> reversed{4.0, 1.0, 2.0};
  const auto rev = sweep(mr_system(), SweepAxis::gearing, reversed);
  CHECK(rev[0].value == 4.0);
  CHECK(rev[1].m_total == rows[0].m_total);
}

TEST_CASE("scaling sweep") {
  const auto rows = sweep(mr_system(), SweepAxis::scaling, std::vector<double>{1.0, 2.0});
  CHECK(rows[0].m_total == doctest::Approx(0.0155).epsilon(1e-12));
  CHECK(rows[1].m_total == doctest::Approx(0.0170).epsilon(1e-12));
  CHECK(rows[1].m_total / rows[0].m_total - 1.0 == doctest::Approx(0.097).epsilon(0.01));
  CHECK(rows[1].b_total_dc == rows[0].b_total_dc);
  CHECK(rows[1].k_max == doctest::Approx(2.0 * rows[0].k_max));
  CHECK_THROWS_AS(sweep(mr_system(), SweepAxis::scaling, std::vector<double>{}), ValidationError);
  CHECK_THROWS_AS(sweep(mr_system(), SweepAxis::gearing, std::vector<double>{-1.0}), ValidationError);
}

TEST_CASE("comparison") {
  const auto mr = mr_system();
  const auto em = em_system(oracle::kEm136209, 0.35, 209e-7);
  const auto self = compare(mr, mr, 200.0);
  CHECK(self.bandwidth_ratio == 1.0);
  CHECK(self.dc_damping_ratio == 1.0);
  CHECK(self.mass_ratio == 1.0);

  const auto c = compare(mr, em, 200.0);
  CHECK(c.bandwidth_ratio == doctest::Approx(std::sqrt(0.0448 / 0.0155)).epsilon(1e-12));
  CHECK(std::abs(c.bandwidth_ratio - 1.70) < 0.01);
  CHECK(c.dc_damping_ratio == doctest::Approx(1.0 / 1.1));
  CHECK(c.k_max_A == doctest::Approx(429.4).epsilon(1e-4));
  CHECK(c.k_max_B == doctest::Approx(751.5).epsilon(1e-4));
  CHECK(std::abs(c.bandwidth_ratio * compare(em, mr, 200.0).bandwidth_ratio - 1.0) < 1e-12);
}

TEST_CASE("shorter lever cuts the detected bandwidth of geared-down motors") {
  for (const auto& p : {oracle::kEm136209, oracle::kEm118890}) {
    const double base = rendering_bandwidth_detected(closed_loop_impedance(p, {200.0, 0.0, 1e3}, kGrid));
    const auto shorter = with_lever_length(p, 0.17, 0.075);
    const double cut = rendering_bandwidth_detected(closed_loop_impedance(shorter, {200.0, 0.0, 1e3}, kGrid));
    const double analytic = rendering_bandwidth_analytic(200.0, shorter.solid_body_mass()) /
                            rendering_bandwidth_analytic(200.0, p.solid_body_mass());
    CHECK(cut < base);
    CHECK(rel(cut / base, analytic) < 0.05);
    if (p.m1 > p.m2) CHECK(1.0 - cut / base >= 0.40);
  }
}

TEST_CASE("bandwidth advantage over an EM system grows with its actuation mass") {
  const auto mr = mr_system();
  double last = 0.0;
  for (double m1 : {0.005, 0.010, 0.0102, 0.015, 0.0308, 0.06}) {
    PlantParams p = oracle::kEm136209;
    p.m1 = m1;
    const double adv = compare(mr, em_system(p, 0.35, 209e-7), 200.0).bandwidth_ratio - 1.0;
    CHECK(adv == doctest::Approx(std::sqrt((m1 + 0.014) / 0.0155) - 1.0).epsilon(1e-12));
    CHECK(adv > last);
    last = adv;
  }
}
