#pragma once

// Two-mass haptic device model: an actuator mass m1 with grounded damping b1,
// coupled through a transmission (k, b) to the lever mass m2 on which the
// user's hand acts. All quantities are linear and expressed at the
// end-effector, in SI units.

#include <optional>
#include <span>
#include <string>

#include "hapbench/lti.hpp"

namespace hapbench {

enum class Technology { EM, MR };

struct ActuatorSpec {
  std::string name;
  double rated_torque = 0.0;   // N*m
  double rotor_inertia = 0.0;  // kg*m^2
  double t_max = 0.0;          // N*m
  std::optional<double> rotary_damping_equivalent;  // N*s/m at the end-effector
  double mass = 0.0;           // kg
  Technology technology = Technology::EM;

  /// Throws ValidationError naming the violated invariant.
  void validate() const;
  friend bool operator==(const ActuatorSpec&, const ActuatorSpec&) = default;
};

struct GeometrySpec {
  double r_pulley = 0.0;    // m
  double r_actuator = 0.0;  // m
  double l_lever = 0.0;     // m
  double workspace_d = 0.0; // m
  int n_reflected_rotors = 1;

  double pulley_ratio() const noexcept { return r_pulley / r_actuator; }
  void validate() const;
  friend bool operator==(const GeometrySpec&, const GeometrySpec&) = default;
};

struct PlantParams {
  double m1 = 0.0;  // kg, actuation mass
  double b1 = 0.0;  // N*s/m, grounded actuator damping
  double m2 = 0.0;  // kg, lever mass
  double k = 0.0;   // N/m, transmission stiffness
  double b = 0.0;   // N*s/m, transmission damping

  double solid_body_mass() const noexcept { return m1 + m2; }
  void validate() const;
  friend bool operator==(const PlantParams&, const PlantParams&) = default;
};

struct VirtualEnvironment {
  double stiffness_K = 0.0;  // N/m
  double delay_T = 0.0;      // s
  double f_max = 0.0;        // N

  void validate() const;
};

/// Rotor inertia seen as a linear mass at the end-effector:
/// n * I * (r_pulley / r_actuator)^2 / l_lever^2.
double reflected_mass(const GeometrySpec& geometry, double rotor_inertia);

/// Largest end-effector force the actuator can produce: t_max * ratio / l.
double max_end_effector_force(const GeometrySpec& geometry, double t_max);

/// Z(s) = F_h / v2 with the actuator off.
RationalTF passive_impedance_tf(const PlantParams& p);

/// Force through the transmission over actuator force with the lever held.
RationalTF blocked_output_tf(const PlantParams& p);

/// Impedance at the end-effector while rendering a virtual spring.
///
/// The controller applies F_a = -K * x2(t - T) using the lever position.
/// From the actuator equation x1 = (F_a + (k + b s) x2) / D(s) with
/// D(s) = m1 s^2 + (b1 + b) s + k, the lever equation gives
///
///   Z_cl(jw) = Z_passive(jw) + K e^{-jwT} (k + jw b) / (jw D(jw)).
///
/// The delay enters exactly, without a rational approximation. K = 0 returns
/// the passive response unchanged.
FrequencyResponse closed_loop_impedance(const PlantParams& p, const VirtualEnvironment& ve,
                                        std::span<const double> grid);

struct GearedPlant {
  PlantParams plant;
  double f_max;
};

/// Gear ratio G between actuator and lever: reflected mass and damping grow
/// with G^2, available force with G.
GearedPlant gear(const PlantParams& p, double actuator_f_max, double G);

/// Size scaling of an actuator: torque and mass grow linearly with sigma,
/// rotor inertia with sigma^alpha.
ActuatorSpec scale(const ActuatorSpec& a, double sigma, double alpha = 1.0);

/// Rebuilds m1 for a lever of different length (m1 ~ 1 / l^2).
PlantParams with_lever_length(const PlantParams& p, double l_from, double l_to);

/// Undamped frequency at which the two masses oscillate against the
/// transmission spring, sqrt(k (1/m1 + 1/m2)).
double transmission_mode_frequency(const PlantParams& p) noexcept;

/// Undamped natural frequency of the blocked-output test, sqrt(k / m1).
double blocked_natural_frequency(const PlantParams& p) noexcept;

}  // namespace hapbench
