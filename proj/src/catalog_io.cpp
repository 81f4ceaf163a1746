#include "hapbench/catalog_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "hapbench/errors.hpp"
#include "hapbench/format.hpp"

namespace hapbench {

namespace {

CatalogEntry make_entry(const char* name, Technology tech, double rated, double inertia_gcm2, double mass_g,
                        const char* dims) {
  CatalogEntry e;
  e.spec.name = name;
  e.spec.technology = tech;
  e.spec.rated_torque = rated;
  e.spec.t_max = tech == Technology::EM ? 2.0 * rated : rated;
  e.spec.rotor_inertia = inertia_gcm2 * units::kGcm2ToKgm2;
  e.spec.mass = mass_g * units::kGramToKg;
  e.overall_dimensions = dims;
  e.source = CatalogSource::builtin;
  return e;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

const char* tech_name(Technology t) { return t == Technology::EM ? "EM" : "MR"; }

// ---------------------------------------------------------------------------
// INI-style reader

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line;
};

struct Section {
  std::string name;
  std::size_t line;
  std::vector<KeyValue> items;
};

std::vector<Section> read_sections(const std::string& text, const std::string& origin) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(origin, line_no, "unterminated section header");
      sections.push_back({std::string(trim(line.substr(1, line.size() - 2))), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(origin, line_no, "expected 'key = value'");
    if (sections.empty()) throw ParseError(origin, line_no, "key outside of any [section]");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(origin, line_no, "empty key");
    if (value.empty()) throw ParseError(origin, line_no, "empty value for '" + key + "'");
    for (const auto& kv : sections.back().items)
      if (kv.key == key) throw ParseError(origin, line_no, "duplicate key '" + key + "'");
    sections.back().items.push_back({key, value, line_no});
  }
  return sections;
}

// Typed access to one section, with unknown-key detection.
class SectionReader {
 public:
  SectionReader(const Section& s, std::string origin, std::set<std::string> allowed)
      : s_(s), origin_(std::move(origin)) {
    for (const auto& kv : s.items)
      if (!allowed.count(kv.key)) throw ParseError(origin_, kv.line, "unknown key '" + kv.key + "' in [" + s.name + "]");
  }

  const KeyValue* find(const std::string& key) const {
    for (const auto& kv : s_.items)
      if (kv.key == key) return &kv;
    return nullptr;
  }

  std::optional<double> number(const std::string& key) const {
    const KeyValue* kv = find(key);
    if (!kv) return std::nullopt;
    try {
      return parse_double(kv->value);
    } catch (const std::invalid_argument&) {
      throw ParseError(origin_, kv->line, "'" + key + "' expects a number, got '" + kv->value + "'");
    }
  }

  std::optional<std::string> text(const std::string& key) const {
    const KeyValue* kv = find(key);
    return kv ? std::optional<std::string>(kv->value) : std::nullopt;
  }

  std::optional<bool> flag(const std::string& key) const {
    const KeyValue* kv = find(key);
    if (!kv) return std::nullopt;
    const std::string v = lower(kv->value);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ParseError(origin_, kv->line, "'" + key + "' expects true or false");
  }

  std::size_t line(const std::string& key) const {
    const KeyValue* kv = find(key);
    return kv ? kv->line : s_.line;
  }

  std::string where(const std::string& key) const { return origin_ + ":[" + s_.name + "] " + key; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ParseError(origin_, line(key), what);
  }

 private:
  const Section& s_;
  std::string origin_;
};

Technology parse_technology(const SectionReader& r, const std::string& v) {
  const std::string t = lower(v);
  if (t == "em") return Technology::EM;
  if (t == "mr") return Technology::MR;
  r.fail("technology", "technology must be EM or MR");
}

const std::set<std::string> kActuatorKeys = {"ref", "name", "technology", "rated_torque", "t_max",
                                             "rotor_inertia", "rotor_inertia_kgm2", "mass", "mass_kg", "damping",
                                             "dimensions"};

// Applies [actuator] keys over `e` (a catalog entry or a blank one).
void apply_actuator_keys(const SectionReader& r, CatalogEntry& e, std::vector<ProvenanceItem>* prov) {
  auto note = [&](const std::string& q, double v, const std::string& key) {
    if (prov) prov->push_back({q, format_double(v), r.where(key)});
  };
  if (auto v = r.text("name")) e.spec.name = *v;
  if (auto v = r.text("technology")) e.spec.technology = parse_technology(r, *v);
  if (auto v = r.number("rated_torque")) {
    e.spec.rated_torque = *v;
    note("rated_torque [N*m]", *v, "rated_torque");
  }
  if (auto v = r.number("rotor_inertia")) {
    e.spec.rotor_inertia = *v * units::kGcm2ToKgm2;
    note("rotor_inertia [kg*m^2]", e.spec.rotor_inertia, "rotor_inertia");
  }
  if (auto v = r.number("rotor_inertia_kgm2")) {
    e.spec.rotor_inertia = *v;
    note("rotor_inertia [kg*m^2]", *v, "rotor_inertia_kgm2");
  }
  if (auto v = r.number("mass")) e.spec.mass = *v * units::kGramToKg;
  if (auto v = r.number("mass_kg")) e.spec.mass = *v;
  if (auto v = r.number("damping")) {
    e.spec.rotary_damping_equivalent = *v;
    note("actuator damping [N*s/m]", *v, "damping");
  }
  if (auto v = r.text("dimensions")) e.overall_dimensions = *v;
  if (auto v = r.number("t_max")) {
    e.spec.t_max = *v;
    note("t_max [N*m]", *v, "t_max");
  } else if (r.find("rated_torque") || r.find("technology")) {
    // Documented default: EM twice the rated torque, MR the rated torque.
    e.spec.t_max = e.spec.technology == Technology::EM ? 2.0 * e.spec.rated_torque : e.spec.rated_torque;
  }
}

void validate_as(const SectionReader& r, const std::function<void()>& check, const std::string& where_key) {
  try {
    check();
  } catch (const ValidationError& e) {
    throw ValidationError(r.where(where_key) + ": " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Catalog

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = {
      make_entry("Proposed drum clutch", Technology::MR, 0.4, 2.7, 85, "30x30x40"),
      make_entry("Maxon 118890", Technology::EM, 0.046, 20, 270, "32x32x60"),
      make_entry("Maxon 136206", Technology::EM, 0.174, 119, 850, "45x50x111"),
      make_entry("Maxon 136209", Technology::EM, 0.35, 209, 1100, "45x50x145"),
  };
  return catalog;
}

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& catalog, const std::string& name) {
  const std::string needle = lower(name);
  for (const auto& e : catalog)
    if (lower(e.spec.name) == needle) return e;
  const CatalogEntry* hit = nullptr;
  for (const auto& e : catalog) {
    if (lower(e.spec.name).find(needle) == std::string::npos) continue;
    if (hit) throw ValidationError("catalog name '" + name + "' is ambiguous");
    hit = &e;
  }
  if (!hit) throw ValidationError("no catalog entry matches '" + name + "'");
  return *hit;
}

std::string serialize_catalog(const std::vector<CatalogEntry>& catalog) {
  std::ostringstream os;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const CatalogEntry& e = catalog[i];
    if (i) os << '\n';
    os << "[actuator]\n";
    os << "name = " << e.spec.name << '\n';
    os << "technology = " << tech_name(e.spec.technology) << '\n';
    os << "rated_torque = " << format_double(e.spec.rated_torque) << '\n';
    os << "t_max = " << format_double(e.spec.t_max) << '\n';
    os << "rotor_inertia_kgm2 = " << format_double(e.spec.rotor_inertia) << '\n';
    os << "mass_kg = " << format_double(e.spec.mass) << '\n';
    if (e.spec.rotary_damping_equivalent) os << "damping = " << format_double(*e.spec.rotary_damping_equivalent) << '\n';
    if (!e.overall_dimensions.empty()) os << "dimensions = " << e.overall_dimensions << '\n';
  }
  return os.str();
}

std::vector<CatalogEntry> parse_catalog(const std::string& text, const std::string& origin) {
  std::vector<CatalogEntry> out;
  for (const Section& s : read_sections(text, origin)) {
    if (s.name != "actuator") throw ParseError(origin, s.line, "catalog files contain only [actuator] sections");
    const SectionReader r(s, origin, kActuatorKeys);
    if (r.find("ref")) r.fail("ref", "'ref' is not allowed in a catalog file");
    CatalogEntry e;
    e.source = CatalogSource::user;
    apply_actuator_keys(r, e, nullptr);
    validate_as(r, [&] { e.spec.validate(); }, "name");
    out.push_back(std::move(e));
  }
  return out;
}

DerivedColumns derived_columns(const CatalogEntry& e) {
  if (e.spec.mass == 0.0) throw DivisionDomain("derived_columns: actuator mass is zero");
  if (e.spec.rotor_inertia == 0.0) throw DivisionDomain("derived_columns: rotor inertia is zero");
  const double inertia_gcm2 = e.spec.rotor_inertia / units::kGcm2ToKgm2;
  const double mass_g = e.spec.mass / units::kGramToKg;
  return {e.spec.rated_torque / inertia_gcm2, e.spec.rated_torque / mass_g};
}

double weight_compare(int n_dof, double mr_module_mass, const CatalogEntry& em_entry, int motors_per_dof) {
  if (n_dof <= 0 || motors_per_dof <= 0 || !(mr_module_mass > 0.0) || !(em_entry.spec.mass > 0.0))
    throw ValidationError("weight_compare: inputs must be positive");
  return static_cast<double>(n_dof) * static_cast<double>(motors_per_dof) * em_entry.spec.mass / mr_module_mass;
}

std::string format_sci3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  std::string s(buf);
  const auto e = s.find('e');
  std::string mant = s.substr(0, e);
  std::string exp = s.substr(e + 1);
  const char sign = exp[0];
  exp = exp.substr(1);
  while (exp.size() > 1 && exp[0] == '0') exp.erase(0, 1);
  return mant + "e" + (sign == '-' ? "-" : "") + exp;
}

std::string format_catalog_row(const CatalogEntry& e) {
  char buf[64];
  auto g = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  const DerivedColumns d = derived_columns(e);
  std::ostringstream os;
  os << "name = " << e.spec.name << '\n'
     << "technology = " << tech_name(e.spec.technology) << '\n'
     << "rated_torque_Nm = " << g(e.spec.rated_torque) << '\n'
     << "rotor_inertia_gcm2 = " << g(e.spec.rotor_inertia / units::kGcm2ToKgm2) << '\n'
     << "torque_to_inertia_Nm_per_gcm2 = " << format_sci3(d.torque_to_inertia) << '\n'
     << "torque_density_Nm_per_g = " << format_sci3(d.torque_density) << '\n'
     << "mass_g = " << g(e.spec.mass / units::kGramToKg) << '\n'
     << "overall_dimensions_mm = " << e.overall_dimensions << '\n'
     << "t_max_Nm = " << g(e.spec.t_max) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Scenario configuration

double ScenarioConfig::k_max() const {
  if (!actuator || !geometry) throw ValidationError(origin + ": K_max needs [actuator] and [geometry]");
  return hapbench::k_max(actuator->spec.t_max, *geometry, geometry->workspace_d);
}

double ScenarioConfig::rendered_stiffness() const { return stiffness_is_kmax ? k_max() : stiffness; }

double ScenarioConfig::f_max() const {
  if (!actuator || !geometry) return std::numeric_limits<double>::infinity();
  return max_end_effector_force(*geometry, actuator->spec.t_max);
}

SystemDescription ScenarioConfig::system() const {
  if (!actuator || !geometry) throw ValidationError(origin + ": system description needs [actuator] and [geometry]");
  SystemDescription s;
  s.name = origin;
  s.actuator = actuator->spec;
  s.geometry = *geometry;
  s.plant = plant;
  s.rendered_stiffness = rendered_stiffness();
  s.delay_T = delay_T;
  return s;
}

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
  static const std::map<std::string, std::set<std::string>> kKeys = {
      {"actuator", kActuatorKeys},
      {"geometry", {"r_pulley", "r_actuator", "lever_length", "reflected_rotors", "lever_mass", "assumed"}},
      {"transmission", {"k", "b"}},
      {"plant", {"m1", "b1", "m2", "k", "b"}},
      {"virtual_environment", {"stiffness", "delay", "workspace", "assumed"}},
      {"simulation",
       {"test", "dt", "duration", "record_decimation", "fixture_stiffness", "excitation", "amplitude", "f0", "f1",
        "chirp_duration", "impact_width", "impact_period", "noise", "seed"}},
  };

  const std::vector<Section> sections = read_sections(text, origin);
  std::map<std::string, const Section*> by_name;
  for (const Section& s : sections) {
    if (!kKeys.count(s.name)) throw ParseError(origin, s.line, "unknown section [" + s.name + "]");
    if (by_name.count(s.name)) throw ParseError(origin, s.line, "duplicate section [" + s.name + "]");
    by_name[s.name] = &s;
  }
  auto reader = [&](const std::string& name) -> std::optional<SectionReader> {
    const auto it = by_name.find(name);
    if (it == by_name.end()) return std::nullopt;
    return SectionReader(*it->second, origin, kKeys.at(name));
  };

  ScenarioConfig cfg;
  cfg.origin = origin;
  auto& prov = cfg.provenance;
  auto require_num = [&](const SectionReader& r, const std::string& key) {
    auto v = r.number(key);
    if (!v) throw ValidationError(r.where(key) + ": required key missing");
    return *v;
  };
  auto positive = [&](const SectionReader& r, const std::string& key, double v) {
    if (!(v > 0.0)) throw ValidationError(r.where(key) + ": must be > 0 (got " + format_double(v) + ")");
    return v;
  };

  // [actuator]
  if (auto r = reader("actuator")) {
    CatalogEntry e;
    e.source = CatalogSource::user;
    if (auto ref = r->text("ref")) {
      try {
        e = find_entry(builtin_catalog(), *ref);
      } catch (const ValidationError& err) {
        throw ValidationError(r->where("ref") + ": " + err.what());
      }
      prov.push_back({"actuator", e.spec.name, "builtin catalog"});
    }
    apply_actuator_keys(*r, e, &prov);
    validate_as(*r, [&] { e.spec.validate(); }, "ref");
    cfg.actuator = std::move(e);
  }

  // [virtual_environment]
  std::optional<double> workspace;
  if (auto r = reader("virtual_environment")) {
    if (auto v = r->text("stiffness")) {
      if (lower(*v) == "kmax") {
        cfg.stiffness_is_kmax = true;
      } else {
        cfg.stiffness = *r->number("stiffness");
        if (!(cfg.stiffness >= 0.0)) throw ValidationError(r->where("stiffness") + ": must be >= 0");
      }
      prov.push_back({"stiffness [N/m]", *v, r->where("stiffness")});
    }
    if (auto v = r->number("delay")) {
      if (!(*v >= 0.0)) throw ValidationError(r->where("delay") + ": must be >= 0");
      cfg.delay_T = *v;
      prov.push_back({"delay [s]", format_double(*v), r->where("delay")});
    }
    if (auto v = r->number("workspace")) workspace = positive(*r, "workspace", *v) * units::kMmToM;
    cfg.workspace_assumed = r->flag("assumed").value_or(false);
    if (workspace)
      prov.push_back({"workspace d [m]", format_double(*workspace),
                      r->where("workspace") + (cfg.workspace_assumed ? " (assumed)" : "")});
  }

  // [geometry]
  std::optional<double> lever_mass;
  if (auto r = reader("geometry")) {
    GeometrySpec g;
    g.r_pulley = positive(*r, "r_pulley", require_num(*r, "r_pulley")) * units::kMmToM;
    g.r_actuator = positive(*r, "r_actuator", require_num(*r, "r_actuator")) * units::kMmToM;
    g.l_lever = positive(*r, "lever_length", require_num(*r, "lever_length")) * units::kMmToM;
    const double rotors = r->number("reflected_rotors").value_or(1.0);
    if (rotors != 1.0 && rotors != 2.0) throw ValidationError(r->where("reflected_rotors") + ": must be 1 or 2");
    g.n_reflected_rotors = static_cast<int>(rotors);
    if (!workspace) throw ValidationError(origin + ":[virtual_environment] workspace: required with [geometry]");
    g.workspace_d = *workspace;
    if (auto v = r->number("lever_mass")) lever_mass = positive(*r, "lever_mass", *v) * units::kGramToKg;
    cfg.geometry_assumed = r->flag("assumed").value_or(false);
    const std::string tag = cfg.geometry_assumed ? " (assumed)" : "";
    prov.push_back({"pulley_ratio", format_double(g.pulley_ratio()), r->where("r_pulley, r_actuator") + tag});
    prov.push_back({"l_lever [m]", format_double(g.l_lever), r->where("lever_length") + tag});
    prov.push_back({"reflected_rotors", std::to_string(g.n_reflected_rotors),
                    r->find("reflected_rotors") ? r->where("reflected_rotors") : "default 1"});
    cfg.geometry = g;
  }

  // [transmission]
  std::optional<double> trans_k, trans_b;
  if (auto r = reader("transmission")) {
    if (auto v = r->number("k")) trans_k = positive(*r, "k", *v);
    if (auto v = r->number("b")) trans_b = positive(*r, "b", *v);
  }

  // Plant: explicit override or built from actuator + geometry.
  if (auto r = reader("plant")) {
    PlantParams p;
    p.m1 = positive(*r, "m1", require_num(*r, "m1")) * units::kGramToKg;
    p.b1 = positive(*r, "b1", require_num(*r, "b1"));
    p.m2 = positive(*r, "m2", require_num(*r, "m2")) * units::kGramToKg;
    p.k = positive(*r, "k", require_num(*r, "k"));
    p.b = positive(*r, "b", require_num(*r, "b"));
    cfg.plant = p;
    cfg.plant_override = true;
    std::string m1_note = r->where("m1");
    if (cfg.actuator && cfg.geometry)
      m1_note += " (overrides reflected-mass value " +
                 format_double(reflected_mass(*cfg.geometry, cfg.actuator->spec.rotor_inertia)) + " kg)";
    prov.push_back({"m1 [kg]", format_double(p.m1), m1_note});
    prov.push_back({"b1 [N*s/m]", format_double(p.b1), r->where("b1")});
    prov.push_back({"m2 [kg]", format_double(p.m2), r->where("m2")});
    prov.push_back({"k [N/m]", format_double(p.k), r->where("k")});
    prov.push_back({"b [N*s/m]", format_double(p.b), r->where("b")});
  } else {
    if (!cfg.actuator) throw ValidationError(origin + ": plant is underdetermined: no [plant] and no [actuator]");
    if (!cfg.geometry) throw ValidationError(origin + ": plant is underdetermined: no [plant] and no [geometry]");
    if (!cfg.actuator->spec.rotary_damping_equivalent)
      throw ValidationError(origin + ":[actuator] damping: required to build the plant without [plant]");
    if (!lever_mass) throw ValidationError(origin + ":[geometry] lever_mass: required to build the plant without [plant]");
    if (!trans_k || !trans_b) throw ValidationError(origin + ":[transmission] k and b: required without [plant]");
    PlantParams p;
    p.m1 = reflected_mass(*cfg.geometry, cfg.actuator->spec.rotor_inertia);
    p.b1 = *cfg.actuator->spec.rotary_damping_equivalent;
    p.m2 = *lever_mass;
    p.k = *trans_k;
    p.b = *trans_b;
    cfg.plant = p;
    prov.push_back({"m1 [kg]", format_double(p.m1), "reflected mass of " + cfg.actuator->spec.name});
    prov.push_back({"b1 [N*s/m]", format_double(p.b1), origin + ":[actuator] damping"});
    prov.push_back({"m2 [kg]", format_double(p.m2), origin + ":[geometry] lever_mass"});
    prov.push_back({"k [N/m]", format_double(p.k), origin + ":[transmission] k"});
    prov.push_back({"b [N*s/m]", format_double(p.b), origin + ":[transmission] b"});
  }
  cfg.plant.validate();
  if (cfg.stiffness_is_kmax) cfg.k_max();  // fails early when K_max is not computable

  // [simulation]
  if (auto r = reader("simulation")) {
    SimulationBlock sim;
    if (auto v = r->text("test")) {
      const std::string t = lower(*v);
      if (t == "passive") sim.test = SimTest::passive;
      else if (t == "closed") sim.test = SimTest::closed;
      else if (t == "blocked") sim.test = SimTest::blocked;
      else r->fail("test", "test must be passive, closed or blocked");
    }
    if (auto v = r->number("dt")) sim.config.dt = *v;
    if (auto v = r->number("duration")) sim.config.duration = *v;
    if (auto v = r->number("record_decimation")) {
      if (!(*v >= 1.0) || std::floor(*v) != *v) throw ValidationError(r->where("record_decimation") + ": integer >= 1");
      sim.config.record_decimation = static_cast<std::size_t>(*v);
    }
    if (auto v = r->number("fixture_stiffness")) sim.config.fixture_stiffness = *v;
    sim.config.delay_T = cfg.delay_T;
    sim.config.f_max = cfg.f_max();
    if (auto v = r->text("excitation")) {
      const std::string k = lower(*v);
      if (k == "none") sim.excitation.kind = ExcitationKind::none;
      else if (k == "log_chirp") sim.excitation.kind = ExcitationKind::log_chirp;
      else if (k == "impact_train") sim.excitation.kind = ExcitationKind::impact_train;
      else if (k == "chirp_then_impacts") sim.excitation.kind = ExcitationKind::chirp_then_impacts;
      else r->fail("excitation", "excitation must be none, log_chirp, impact_train or chirp_then_impacts");
    }
    if (auto v = r->number("amplitude")) sim.excitation.amplitude = *v;
    if (auto v = r->number("f0")) sim.excitation.f0 = *v;
    if (auto v = r->number("f1")) sim.excitation.f1 = *v;
    if (auto v = r->number("chirp_duration")) sim.excitation.chirp_duration = *v;
    if (auto v = r->number("impact_width")) sim.excitation.impact_width = *v;
    if (auto v = r->number("impact_period")) sim.excitation.impact_period = *v;
    if (auto v = r->number("noise")) sim.noise = *v;
    if (auto v = r->number("seed")) {
      if (!(*v >= 0.0) || std::floor(*v) != *v) throw ValidationError(r->where("seed") + ": integer >= 0");
      sim.seed = static_cast<std::uint64_t>(*v);
    }
    if (!(sim.noise >= 0.0)) throw ValidationError(r->where("noise") + ": must be >= 0");
    validate_as(*r, [&] { sim.config.validate(); }, "dt");
    validate_as(*r, [&] { sim.excitation.validate(); }, "excitation");
    cfg.simulation = sim;
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw ValidationError(e.what());
  }
  return parse_config(text, path);
}

std::string format_provenance(const ScenarioConfig& cfg) {
  std::ostringstream os;
  for (const auto& p : cfg.provenance) os << p.quantity << " = " << p.value << "  <- " << p.source << '\n';
  if (cfg.geometry_assumed) os << "note = geometry values are assumed, not published\n";
  if (cfg.workspace_assumed) os << "note = workspace d is assumed, not published\n";
  return os.str();
}

}  // namespace hapbench
