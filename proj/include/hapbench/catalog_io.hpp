#pragma once

// Actuator catalog, scenario configuration files and unit conversion.
//
// Config files are line oriented: `[section]` headers, `key = value` pairs
// and `#` comments. Units are fixed per key (see fixtures/config_reference.txt);
// values are converted to SI on load. Unknown sections and keys are errors.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hapbench/device_model.hpp"
#include "hapbench/rendering.hpp"
#include "hapbench/timedomain.hpp"

namespace hapbench {

namespace units {
inline constexpr double kGcm2ToKgm2 = 1e-7;
inline constexpr double kGramToKg = 1e-3;
inline constexpr double kMmToM = 1e-3;
}  // namespace units

enum class CatalogSource { builtin, user };

struct CatalogEntry {
  ActuatorSpec spec;
  std::string overall_dimensions;
  CatalogSource source = CatalogSource::builtin;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

/// The four actuators of the comparison table. EM entries carry
/// t_max = 2 x rated torque, the MR clutch its rated (saturation) torque.
const std::vector<CatalogEntry>& builtin_catalog();

/// Case-insensitive exact name match, else a unique substring match.
/// Throws ValidationError when nothing or more than one entry matches.
const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog, const std::string& name);

std::string serialize_catalog(const std::vector<CatalogEntry>& catalog);
std::vector<CatalogEntry> parse_catalog(const std::string& text, const std::string& origin = "<catalog>");

struct DerivedColumns {
  double torque_to_inertia;  // N*m / (g*cm^2)
  double torque_density;     // N*m / g
};

/// Throws DivisionDomain when mass or inertia is zero.
DerivedColumns derived_columns(const CatalogEntry& e);

/// Mass of n_dof * motors_per_dof EM motors over the MR module mass.
double weight_compare(int n_dof, double mr_module_mass, const CatalogEntry& em_entry, int motors_per_dof);

/// Three significant digits in the catalog's printed style, e.g. "1.48e-1".
std::string format_sci3(double v);

/// Catalog row as printed in the actuator table.
std::string format_catalog_row(const CatalogEntry& e);

enum class SimTest { passive, closed, blocked };

struct SimulationBlock {
  SimTest test = SimTest::passive;
  SimConfig config;
  ExcitationSpec excitation;
  double noise = 0.0;
  std::uint64_t seed = 1;
};

struct ProvenanceItem {
  std::string quantity;
  std::string value;
  std::string source;
};

struct ScenarioConfig {
  std::string origin;
  std::optional<CatalogEntry> actuator;
  std::optional<GeometrySpec> geometry;
  bool geometry_assumed = false;
  PlantParams plant;
  bool plant_override = false;

  bool stiffness_is_kmax = false;
  double stiffness = 0.0;  // N/m, when not kmax
  double delay_T = 0.0;    // s
  bool workspace_assumed = false;

  std::optional<SimulationBlock> simulation;
  std::vector<ProvenanceItem> provenance;

  /// Largest stable stiffness for the delay; throws ValidationError without actuator and geometry.
  double k_max() const;
  /// The stiffness the virtual environment asks for, resolving "kmax".
  double rendered_stiffness() const;
  double f_max() const;
  /// Throws ValidationError without actuator and geometry.
  SystemDescription system() const;
};

ScenarioConfig parse_config(const std::string& text, const std::string& origin);
ScenarioConfig load_config(const std::string& path);

/// `key = value` lines listing where every resolved number came from.
std::string format_provenance(const ScenarioConfig& cfg);

}  // namespace hapbench
