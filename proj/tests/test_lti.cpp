#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "hapbench/errors.hpp"
#include "hapbench/lti.hpp"
#include "support/oracles.hpp"

using namespace hapbench;

namespace {

double phase_deg(Complex z) { return std::arg(z) * 180.0 / std::numbers::pi; }

}  // namespace

TEST_CASE("polynomial storage is ascending and trimmed") {
  const Polynomial p({1.0, 2.0, 3.0, 0.0, 0.0});
  CHECK(p.degree() == 2);
  CHECK(p[0] == 1.0);
  CHECK(p[2] == 3.0);
  CHECK(Polynomial({0.0, 0.0}).is_zero());
  CHECK_THROWS_AS(Polynomial(std::vector<double>{}), std::invalid_argument);

  const Polynomial q({-1.0, 1.0});
  CHECK((p * q) == Polynomial({-1.0, -1.0, -1.0, 3.0}));
  CHECK((p + q) == Polynomial({0.0, 3.0, 3.0}));
  CHECK((2.0 * q) == Polynomial({-2.0, 2.0}));
}

TEST_CASE("Horner matches the naive power sum on random polynomials") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-5.0, 5.0), w(0.01, 100.0);
  std::uniform_int_distribution<int> deg(0, 6);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = coef(rng);
    if (c.back() == 0.0) c.back() = 1.0;
    const Polynomial p(c);
    const Complex s(0.0, w(rng));
    const Complex ref = oracle::power_sum(c, s);
    double scale = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) scale += std::abs(c[i]) * std::pow(std::abs(s), static_cast<double>(i));
    CHECK(std::abs(p(s) - ref) <= 1e-12 * scale);
    CHECK(poly_eval(p, s) == p(s));
  }
}

TEST_CASE("conjugate symmetry of tf_eval") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coef(0.1, 3.0), w(0.1, 1000.0);
  for (int trial = 0; trial < 200; ++trial) {
    const RationalTF tf(Polynomial({coef(rng), coef(rng), coef(rng)}), Polynomial({coef(rng), coef(rng), coef(rng)}));
    const double omega = w(rng);
    const Complex pos = tf_eval(tf, omega);
    const Complex neg = tf.num()(Complex(0.0, -omega)) / tf.den()(Complex(0.0, -omega));
    CHECK(std::abs(neg - std::conj(pos)) <= 1e-14 * std::abs(pos));
  }
}

TEST_CASE("pure elements have exact phase") {
  const auto grid = freq_grid(0.1, 500.0, 300);
  const auto spring = frequency_response(RationalTF(Polynomial({200.0}), Polynomial({0.0, 1.0})), grid);
  const auto mass = frequency_response(RationalTF(Polynomial({0.0, 0.0155}), Polynomial({1.0})), grid);
  const auto damper = frequency_response(RationalTF(Polynomial({3.0}), Polynomial({1.0})), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(phase_deg(spring.value[i]) == -90.0);
    CHECK(phase_deg(mass.value[i]) == 90.0);
    CHECK(phase_deg(damper.value[i]) == 0.0);
    CHECK(std::abs(spring.value[i]) == doctest::Approx(200.0 / grid[i]).epsilon(1e-15));
  }
}

TEST_CASE("frequency grid endpoints and band checks") {
  const auto g = freq_grid(0.1, 500.0, 2000);
  CHECK(g.size() == 2000);
  CHECK(g.front() == 2.0 * std::numbers::pi * 0.1);
  CHECK(g.back() == 2.0 * std::numbers::pi * 500.0);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  const auto lin = freq_grid(1.0, 2.0, 3, Spacing::linear);
  CHECK(lin[1] == doctest::Approx(2.0 * std::numbers::pi * 1.5));
  CHECK_THROWS_AS(freq_grid(0.0, 10.0, 10), InvalidBand);
  CHECK_THROWS_AS(freq_grid(10.0, 1.0, 10), InvalidBand);
  CHECK_THROWS_AS(freq_grid(1.0, 10.0, 1), InvalidBand);
}

TEST_CASE("pole on the grid is reported") {
  const RationalTF integrator(Polynomial({1.0}), Polynomial({0.0, 1.0}));
  CHECK_THROWS_AS(tf_eval(integrator, 0.0), PoleOnGrid);
  CHECK_THROWS_AS(RationalTF(Polynomial({1.0}), Polynomial({0.0})), std::invalid_argument);
}

TEST_CASE("spring-mass minimum found within 0.5%") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lk(1.0, 4.0), lm(-3.0, -1.0), pad(1.0, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    const double K = std::pow(10.0, lk(rng));
    const double m = std::pow(10.0, lm(rng));
    const double w0 = std::sqrt(K / m);
    const double f0 = w0 / (2.0 * std::numbers::pi);
    const auto grid = freq_grid(f0 / std::pow(10.0, pad(rng)), f0 * std::pow(10.0, pad(rng)), 200);
    const RationalTF z(Polynomial({K, 0.0, m}), Polynomial({0.0, 1.0}));
    const auto ex = find_extremum(frequency_response(z, grid), ExtremumKind::min);
    CHECK(std::abs(ex.omega / w0 - 1.0) < 0.005);
  }
}

TEST_CASE("maximum of a resonance and missing extrema") {
  const double wn = 100.0, zeta = 0.05;
  const RationalTF h(Polynomial({wn * wn}), Polynomial({wn * wn, 2.0 * zeta * wn, 1.0}));
  const auto fr = frequency_response(h, freq_grid(1.0, 100.0, 400));
  const auto ex = find_extremum(fr, ExtremumKind::max);
  CHECK(ex.omega == doctest::Approx(wn * std::sqrt(1.0 - 2.0 * zeta * zeta)).epsilon(0.005));

  const RationalTF lowpass(Polynomial({1.0}), Polynomial({1.0, 1.0}));
  const auto mono = frequency_response(lowpass, freq_grid(0.1, 10.0, 100));
  CHECK_THROWS_AS(find_extremum(mono, ExtremumKind::min), NoInteriorExtremum);
  CHECK_THROWS_AS(find_extremum(mono, ExtremumKind::max), NoInteriorExtremum);
  CHECK_THROWS_AS(find_extremum(fr, ExtremumKind::max, 1.0, 50.0), NoInteriorExtremum);
}
