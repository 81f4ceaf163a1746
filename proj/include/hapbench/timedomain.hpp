#pragma once

// Fixed-step RK4 integration of the two-mass device with a delayed,
// saturated virtual-spring controller.

#include <cstdint>
#include <limits>
#include <vector>

#include "hapbench/device_model.hpp"

namespace hapbench {

struct SimConfig {
  double dt = 1e-4;        // s
  double duration = 1.0;   // s
  double delay_T = 0.0;    // s, integer multiple of dt
  double f_max = std::numeric_limits<double>::infinity();  // N, actuator saturation
  std::size_t record_decimation = 1;
  double fixture_stiffness = 0.0;  // N/m, known spring from lever to ground

  /// Throws ValidationError. Returns the delay in whole steps.
  std::size_t validate() const;
};

enum class ExcitationKind { none, log_chirp, impact_train, chirp_then_impacts };

struct ExcitationSpec {
  ExcitationKind kind = ExcitationKind::none;
  double amplitude = 1.0;        // N
  double f0 = 0.1;               // Hz
  double f1 = 500.0;             // Hz
  double chirp_duration = 60.0;  // s
  double impact_width = 0.005;   // s
  double impact_period = 1.0;    // s

  void validate() const;
};

/// Force of the excitation at time t. The chirp is silent after
/// chirp_duration; for chirp_then_impacts the impact train starts there.
double excitation_value(const ExcitationSpec& spec, double t);

/// Instantaneous chirp frequency in Hz (analytic phase derivative).
double chirp_frequency(const ExcitationSpec& spec, double t);

struct Trajectory {
  std::vector<double> t, x1, v1, x2, v2, f_a, f_h;

  std::size_t size() const noexcept { return t.size(); }
  double sample_rate() const;
};

/// Free lever driven by the excitation as hand force F_h, actuator rendering
/// F_a = clamp(-K x2(t - T), +-f_max). F_a is held over each step; F_h is
/// evaluated at the RK4 stage times. Throws NonFinite on divergence.
Trajectory simulate(const PlantParams& p, double K, const SimConfig& cfg, const ExcitationSpec& exc);

/// Lever held at x2 = 0, excitation applied as F_a. The force through the
/// transmission, k x1 + b v1, is recorded in the f_h slot.
Trajectory blocked_simulate(const PlantParams& p, const SimConfig& cfg, const ExcitationSpec& exc);

/// Adds zero-mean Gaussian noise with standard deviation relative_level *
/// rms(signal) to the measured channels (f_a, f_h, x2, v2). Seed-reproducible.
void add_measurement_noise(Trajectory& traj, double relative_level, std::uint64_t seed);

}  // namespace hapbench
