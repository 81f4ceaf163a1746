#include "hapbench/device_model.hpp"

#include <cmath>

#include "hapbench/errors.hpp"

namespace hapbench {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

void ActuatorSpec::validate() const {
  require(rated_torque > 0.0, "actuator: rated_torque must be > 0");
  require(rotor_inertia > 0.0, "actuator: rotor_inertia must be > 0");
  require(t_max >= rated_torque, "actuator: t_max must be >= rated_torque");
  require(mass >= 0.0, "actuator: mass must be >= 0");
  if (rotary_damping_equivalent) require(*rotary_damping_equivalent > 0.0, "actuator: damping must be > 0");
}

void GeometrySpec::validate() const {
  require(r_pulley > 0.0, "geometry: r_pulley must be > 0");
  require(r_actuator > 0.0, "geometry: r_actuator must be > 0");
  require(l_lever > 0.0, "geometry: l_lever must be > 0");
  require(workspace_d > 0.0, "geometry: workspace must be > 0");
  require(n_reflected_rotors == 1 || n_reflected_rotors == 2, "geometry: reflected_rotors must be 1 or 2");
}

void PlantParams::validate() const {
  require(m1 > 0.0, "plant: m1 must be > 0");
  require(b1 > 0.0, "plant: b1 must be > 0");
  require(m2 > 0.0, "plant: m2 must be > 0");
  require(k > 0.0, "plant: k must be > 0");
  require(b > 0.0, "plant: b must be > 0");
}

void VirtualEnvironment::validate() const {
  require(stiffness_K >= 0.0, "virtual environment: stiffness must be >= 0");
  require(delay_T >= 0.0, "virtual environment: delay must be >= 0");
  require(f_max > 0.0, "virtual environment: f_max must be > 0");
}

double reflected_mass(const GeometrySpec& geometry, double rotor_inertia) {
  geometry.validate();
  const double ratio = geometry.pulley_ratio();
  return geometry.n_reflected_rotors * rotor_inertia * ratio * ratio / (geometry.l_lever * geometry.l_lever);
}

double max_end_effector_force(const GeometrySpec& geometry, double t_max) {
  geometry.validate();
  return t_max * geometry.pulley_ratio() / geometry.l_lever;
}

RationalTF passive_impedance_tf(const PlantParams& p) {
  p.validate();
  // Coefficients written term by term in the order of the closed-form impedance.
  return RationalTF(Polynomial({p.b1 * p.k, p.b1 * p.b + p.m1 * p.k + p.m2 * p.k,
                                p.m2 * p.b1 + p.m1 * p.b + p.m2 * p.b, p.m1 * p.m2}),
                    Polynomial({p.k, p.b1 + p.b, p.m1}));
}

RationalTF blocked_output_tf(const PlantParams& p) {
  p.validate();
  // m1 x1'' = F_a - b1 x1' - k x1 - b x1', measured force = k x1 + b x1'.
  return RationalTF(Polynomial({p.k, p.b}), Polynomial({p.k, p.b1 + p.b, p.m1}));
}

FrequencyResponse closed_loop_impedance(const PlantParams& p, const VirtualEnvironment& ve,
                                        std::span<const double> grid) {
  if (!(ve.stiffness_K >= 0.0)) throw ValidationError("virtual environment: stiffness must be >= 0");
  if (!(ve.delay_T >= 0.0)) throw ValidationError("virtual environment: delay must be >= 0");
  FrequencyResponse fr = frequency_response(passive_impedance_tf(p), grid);
  if (ve.stiffness_K == 0.0) return fr;

  const Polynomial transmission({p.k, p.b});
  const Polynomial actuator_den({p.k, p.b1 + p.b, p.m1});
  for (std::size_t i = 0; i < fr.size(); ++i) {
    const double w = fr.omega[i];
    const Complex s{0.0, w};
    const Complex d = actuator_den(s);
    if (std::abs(s * d) < 1e-300) throw PoleOnGrid("closed-loop pole at omega = " + std::to_string(w));
    const Complex delay = std::polar(1.0, -w * ve.delay_T);
    fr.value[i] += ve.stiffness_K * delay * transmission(s) / (s * d);
  }
  return fr;
}

GearedPlant gear(const PlantParams& p, double actuator_f_max, double G) {
  if (!(G > 0.0)) throw ValidationError("gear: ratio must be > 0");
  GearedPlant out{p, actuator_f_max * G};
  const double g2 = G * G;
  out.plant.m1 = g2 * p.m1;
  out.plant.b1 = g2 * p.b1;
  return out;
}

ActuatorSpec scale(const ActuatorSpec& a, double sigma, double alpha) {
  if (!(sigma > 0.0)) throw ValidationError("scale: sigma must be > 0");
  if (!(alpha > 0.0)) throw ValidationError("scale: alpha must be > 0");
  ActuatorSpec out = a;
  out.rated_torque = sigma * a.rated_torque;
  out.t_max = sigma * a.t_max;
  out.rotor_inertia = std::pow(sigma, alpha) * a.rotor_inertia;
  out.mass = sigma * a.mass;
  return out;
}

PlantParams with_lever_length(const PlantParams& p, double l_from, double l_to) {
  if (!(l_from > 0.0) || !(l_to > 0.0)) throw ValidationError("lever length must be > 0");
  PlantParams out = p;
  const double r = l_from / l_to;
  out.m1 = p.m1 * r * r;
  return out;
}

double transmission_mode_frequency(const PlantParams& p) noexcept {
  return std::sqrt(p.k * (1.0 / p.m1 + 1.0 / p.m2));
}

double blocked_natural_frequency(const PlantParams& p) noexcept { return std::sqrt(p.k / p.m1); }

}  // namespace hapbench
