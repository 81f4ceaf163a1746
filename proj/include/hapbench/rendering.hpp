#pragma once

// Haptic quality metrics: maximum renderable stiffness, rendering bandwidth,
// effective impedance, rendering area, design sweeps and A/B comparison.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hapbench/device_model.hpp"
#include "hapbench/lti.hpp"

namespace hapbench {

/// Frequency-wise split of an impedance into spring, damper and mass parts.
/// At each frequency exactly one of k_eff / m_eff is set.
struct EffectiveImpedance {
  std::vector<double> omega;
  std::vector<std::optional<double>> k_eff;  // N/m, where Im Z <= 0
  std::vector<double> b_eff;                 // N*s/m
  std::vector<std::optional<double>> m_eff;  // kg, where Im Z > 0
};

struct RenderingReport {
  double k_max = 0.0;                         // N/m, rendered stiffness
  std::optional<double> omega_s_analytic;     // rad/s, absent when K = 0
  std::optional<double> omega_s_detected;     // rad/s, absent when not found
  std::optional<double> system_resonance;     // rad/s, |Z_cl| peak if present
  double transmission_mode = 0.0;             // rad/s, sqrt(k (1/m1 + 1/m2))
  FrequencyResponse passive_curve;
  FrequencyResponse closed_curve;
  double area_metric = 0.0;                   // decade * decade
  std::vector<std::string> notes;             // why a field is absent
};

/// Largest spring renderable over workspace d without force saturation.
double k_max(double t_max, const GeometrySpec& geometry, double d);

/// sqrt(K / m_total).
double rendering_bandwidth_analytic(double K, double m_total);

/// |Z| peak of a curve, if one exists (the blocked-end resonance of the
/// device; overdamped transmissions show none).
std::optional<double> detect_system_resonance(const FrequencyResponse& fr);

/// Anti-resonance of a closed-loop curve, searched below the detected
/// system resonance (or over the whole grid when no peak exists).
/// Throws NoInteriorExtremum when no minimum exists there.
double rendering_bandwidth_detected(const FrequencyResponse& fr_closed);

EffectiveImpedance effective_decomposition(const FrequencyResponse& fr);

/// Log-log area between closed-loop and passive magnitude curves on the
/// shared grid: integral of max(0, log10|Z_cl| - log10|Z_p|) d(log10 w).
double log_area_between(const FrequencyResponse& passive, const FrequencyResponse& closed);

RenderingReport rendering_area(const PlantParams& p, const VirtualEnvironment& ve, std::span<const double> grid);

/// Everything needed to place a device in the design space.
struct SystemDescription {
  std::string name;
  ActuatorSpec actuator;
  GeometrySpec geometry;
  PlantParams plant;
  double rendered_stiffness = 200.0;  // N/m, K used for bandwidth columns
  double delay_T = 0.0;               // s

  double k_max() const;
  double f_max() const;
};

enum class SweepAxis { gearing, scaling };

struct SweepRow {
  double value = 0.0;
  double m_total = 0.0;       // kg
  double b_total_dc = 0.0;    // N*s/m
  double k_max = 0.0;         // N/m
  double omega_s_analytic = 0.0;
  std::optional<double> omega_s_detected;
  std::optional<double> system_resonance;
  std::string error;          // detection failure recorded in-row
};

struct SweepOptions {
  double alpha = 1.0;  // inertia exponent for the scaling axis
  double f_min_hz = 0.1;
  double f_max_hz = 500.0;
  std::size_t points = 2000;
};

/// Rows are returned in input order. Bandwidth columns use the base
/// system's rendered stiffness so rows differ only by the transform.
std::vector<SweepRow> sweep(const SystemDescription& base, SweepAxis axis, std::span<const double> values,
                            const SweepOptions& options = {});

extern const char* const kSweepHeader;

struct Comparison {
  double bandwidth_ratio = 0.0;   // omega_s(A) / omega_s(B)
  double dc_damping_ratio = 0.0;  // b1(A) / b1(B)
  double mass_ratio = 0.0;        // m_total(A) / m_total(B)
  double k_max_A = 0.0;
  double k_max_B = 0.0;
};

Comparison compare(const SystemDescription& a, const SystemDescription& b, double K_common);

extern const char* const kCompareHeader;

}  // namespace hapbench
