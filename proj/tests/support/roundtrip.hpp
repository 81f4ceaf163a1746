#pragma once

// Shared identification protocol: blocked and compliance-loaded chirp runs at
// 10 kHz, whole-record rectangular FRF, blocked fit then full fit.

#include <algorithm>
#include <cmath>

#include "hapbench/identification.hpp"
#include "hapbench/timedomain.hpp"

namespace roundtrip {

using namespace hapbench;

constexpr double kCompliance = 500.0;  // N/m
constexpr std::size_t kRecord = std::size_t{1} << 21;

struct Runs {
  Trajectory blocked, full;
};

inline SimConfig config(double fixture_stiffness) {
  SimConfig c;
  c.dt = 2.5e-5;
  c.record_decimation = 4;
  c.duration = static_cast<double>(kRecord - 1) * 1e-4;
  c.fixture_stiffness = fixture_stiffness;
  return c;
}

inline ExcitationSpec excitation() {
  ExcitationSpec e;
  e.kind = ExcitationKind::chirp_then_impacts;
  e.f0 = 0.1;
  e.f1 = 500.0;
  e.chirp_duration = 120.0;
  e.impact_width = 0.005;
  e.impact_period = 1.0;
  return e;
}

inline Runs simulate_runs(const PlantParams& truth) {
  return {blocked_simulate(truth, config(0.0), excitation()), simulate(truth, 0.0, config(kCompliance), excitation())};
}

struct Outcome {
  PlantParams params;
  FitResult blocked, full;
};

// Runs both fits from 1.5x truth, adding noise to copies when noise > 0.
inline Outcome identify(const Runs& runs, const PlantParams& truth, double noise = 0.0, std::uint64_t seed = 0) {
  Trajectory b = runs.blocked, f = runs.full;
  if (noise > 0.0) {
    add_measurement_noise(b, noise, 100 + seed);
    add_measurement_noise(f, noise, 200 + seed);
  }
  FitOptions o;
  o.f_lo_hz = 0.1;
  o.f_hi_hz = 500.0;
  const auto fb = estimate_frf(b.f_a, b.f_h, 1e4, kRecord, 0.0, FrfMode::blocked_force_transfer, 0.9,
                               Window::rectangular);
  const auto rb = fit_blocked(fb, {1.5 * truth.m1, 1.5 * truth.b1, 1.5 * truth.k, 1.5 * truth.b}, o);
  const auto ff = estimate_frf(f.f_h, f.v2, 1e4, kRecord, 0.0, FrfMode::end_effector_impedance, 0.9,
                               Window::rectangular);
  const auto& q = rb.params;
  const auto rf = fit_full(ff, {q.m1, q.b1, q.k, q.b}, 1.5 * truth.m2, kCompliance, o);
  return {rf.params, rb, rf};
}

inline double worst_relative_error(const PlantParams& got, const PlantParams& truth) {
  const double e[] = {got.m1 / truth.m1, got.b1 / truth.b1, got.m2 / truth.m2, got.k / truth.k, got.b / truth.b};
  double w = 0.0;
  for (double r : e) w = std::max(w, std::abs(r - 1.0));
  return w;
}

}  // namespace roundtrip
