#include "hapbench/rendering.hpp"

#include <cmath>
#include <limits>

#include "hapbench/errors.hpp"

namespace hapbench {

const char* const kSweepHeader = "value,m_total,b_total_dc,k_max,omega_s_analytic,omega_s_detected,system_resonance";
const char* const kCompareHeader = "bandwidth_ratio,dc_damping_ratio,mass_ratio,k_max_A,k_max_B";

double k_max(double t_max, const GeometrySpec& geometry, double d) {
  if (!(d > 0.0)) throw ValidationError("k_max: workspace d must be > 0");
  return max_end_effector_force(geometry, t_max) / d;
}

double rendering_bandwidth_analytic(double K, double m_total) {
  if (!(K > 0.0) || !(m_total > 0.0)) throw ValidationError("rendering bandwidth: K and m must be > 0");
  return std::sqrt(K / m_total);
}

std::optional<double> detect_system_resonance(const FrequencyResponse& fr) {
  try {
    return find_extremum(fr, ExtremumKind::max).omega;
  } catch (const NoInteriorExtremum&) {
    return std::nullopt;
  }
}

double rendering_bandwidth_detected(const FrequencyResponse& fr_closed) {
  double upper = fr_closed.omega.back();
  if (const auto res = detect_system_resonance(fr_closed)) upper = *res;
  return find_extremum(fr_closed, ExtremumKind::min, fr_closed.omega.front(), upper).omega;
}

EffectiveImpedance effective_decomposition(const FrequencyResponse& fr) {
  fr.validate();
  EffectiveImpedance eff;
  eff.omega = fr.omega;
  const std::size_t n = fr.size();
  eff.k_eff.resize(n);
  eff.m_eff.resize(n);
  eff.b_eff.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = fr.omega[i];
    const Complex z = fr.value[i];
    eff.b_eff[i] = z.real();
    if (z.imag() <= 0.0)
      eff.k_eff[i] = -w * z.imag();
    else
      eff.m_eff[i] = z.imag() / w;
  }
  return eff;
}

double log_area_between(const FrequencyResponse& passive, const FrequencyResponse& closed) {
  if (passive.omega != closed.omega) throw std::invalid_argument("log_area_between: grids differ");
  double area = 0.0;
  double prev_x = 0.0;
  double prev_y = 0.0;
  for (std::size_t i = 0; i < passive.size(); ++i) {
    const double x = std::log10(passive.omega[i]);
    const double y = std::max(0.0, std::log10(std::abs(closed.value[i])) - std::log10(std::abs(passive.value[i])));
    if (i > 0) area += 0.5 * (x - prev_x) * (y + prev_y);
    prev_x = x;
    prev_y = y;
  }
  return area;
}

RenderingReport rendering_area(const PlantParams& p, const VirtualEnvironment& ve, std::span<const double> grid) {
  p.validate();
  RenderingReport r;
  r.k_max = ve.stiffness_K;
  r.transmission_mode = transmission_mode_frequency(p);
  r.passive_curve = frequency_response(passive_impedance_tf(p), grid);
  r.closed_curve = closed_loop_impedance(p, ve, grid);
  r.area_metric = log_area_between(r.passive_curve, r.closed_curve);
  r.system_resonance = detect_system_resonance(r.closed_curve);
  if (!r.system_resonance) r.notes.emplace_back("system_resonance: no |Z| peak on the grid (overdamped transmission)");

  if (ve.stiffness_K > 0.0) {
    r.omega_s_analytic = rendering_bandwidth_analytic(ve.stiffness_K, p.solid_body_mass());
    try {
      r.omega_s_detected = rendering_bandwidth_detected(r.closed_curve);
    } catch (const NoInteriorExtremum& e) {
      r.notes.emplace_back(std::string("omega_s_detected: ") + e.what());
    }
  } else {
    r.notes.emplace_back("omega_s: no virtual spring rendered (K = 0)");
  }
  return r;
}

double SystemDescription::f_max() const { return max_end_effector_force(geometry, actuator.t_max); }

double SystemDescription::k_max() const { return hapbench::k_max(actuator.t_max, geometry, geometry.workspace_d); }

namespace {

struct Transformed {
  PlantParams plant;
  double k_max;
};

Transformed apply_axis(const SystemDescription& base, SweepAxis axis, double value, double alpha) {
  if (!(value > 0.0)) throw ValidationError("sweep: values must be > 0");
  if (axis == SweepAxis::gearing) {
    const GearedPlant g = gear(base.plant, base.f_max(), value);
    return {g.plant, g.f_max / base.geometry.workspace_d};
  }
  const ActuatorSpec scaled = scale(base.actuator, value, alpha);
  PlantParams p = base.plant;
  // Reflected mass is linear in rotor inertia.
  p.m1 *= scaled.rotor_inertia / base.actuator.rotor_inertia;
  return {p, hapbench::k_max(scaled.t_max, base.geometry, base.geometry.workspace_d)};
}

}  // namespace

std::vector<SweepRow> sweep(const SystemDescription& base, SweepAxis axis, std::span<const double> values,
                            const SweepOptions& options) {
  if (values.empty()) throw ValidationError("sweep: no values given");
  const std::vector<double> grid = freq_grid(options.f_min_hz, options.f_max_hz, options.points);
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    const Transformed t = apply_axis(base, axis, v, options.alpha);
    SweepRow row;
    row.value = v;
    row.m_total = t.plant.solid_body_mass();
    row.b_total_dc = t.plant.b1;
    row.k_max = t.k_max;
    row.omega_s_analytic = rendering_bandwidth_analytic(base.rendered_stiffness, row.m_total);
    const VirtualEnvironment ve{base.rendered_stiffness, base.delay_T, std::numeric_limits<double>::max()};
    try {
      const FrequencyResponse closed = closed_loop_impedance(t.plant, ve, grid);
      row.system_resonance = detect_system_resonance(closed);
      row.omega_s_detected = rendering_bandwidth_detected(closed);
    } catch (const NumericError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Comparison compare(const SystemDescription& a, const SystemDescription& b, double K_common) {
  a.plant.validate();
  b.plant.validate();
  Comparison c;
  c.bandwidth_ratio = rendering_bandwidth_analytic(K_common, a.plant.solid_body_mass()) /
                      rendering_bandwidth_analytic(K_common, b.plant.solid_body_mass());
  c.dc_damping_ratio = a.plant.b1 / b.plant.b1;
  c.mass_ratio = a.plant.solid_body_mass() / b.plant.solid_body_mass();
  c.k_max_A = a.k_max();
  c.k_max_B = b.k_max();
  return c;
}

}  // namespace hapbench
