// hapbench: command-line front end for the haptic device bench.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 numeric failure.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hapbench/catalog_io.hpp"
#include "hapbench/device_model.hpp"
#include "hapbench/errors.hpp"
#include "hapbench/format.hpp"
#include "hapbench/identification.hpp"
#include "hapbench/lti.hpp"
#include "hapbench/rendering.hpp"
#include "hapbench/svg_plot.hpp"
#include "hapbench/timedomain.hpp"

namespace fs = std::filesystem;
using namespace hapbench;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string normalized(std::string s) {
  std::string out;
  for (char c : s)
    if (c != '_' && c != '-') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

fs::path fixture_dir() {
  if (const char* env = std::getenv("HAPTIC_BENCH_FIXTURES"); env && *env) return env;
  return HAPBENCH_FIXTURE_DIR;
}

// A config argument is a path, or a fixture name such as `mr_170` or
// `em136209_170` looked up in the fixture directory.
ScenarioConfig resolve_config(const std::string& arg) {
  if (fs::is_regular_file(arg)) return load_config(arg);
  const fs::path dir = fixture_dir();
  for (const fs::path& candidate : {dir / arg, dir / (arg + ".cfg")})
    if (fs::is_regular_file(candidate)) return load_config(candidate.string());
  if (fs::is_directory(dir)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().extension() == ".cfg") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
      if (normalized(f.stem().string()) == normalized(fs::path(arg).stem().string())) return load_config(f.string());
  }
  throw ValidationError("config not found: " + arg + " (searched the working directory and " + dir.string() + ")");
}

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    return;
  }
  write_text_file(path, contents);
  std::cout << "wrote " << path << '\n';
}

void emit_svg(const std::string& csv_path, const std::string& svg_path, const PlotSpec& spec) {
  if (svg_path.empty()) return;
  if (csv_path.empty() || csv_path == "-") throw ValidationError("--svg needs the CSV written to a file (--out)");
  write_text_file(svg_path, render_svg(read_csv(csv_path), spec));
  std::cout << "wrote " << svg_path << '\n';
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& tok : split(text, ',')) {
    try {
      out.push_back(parse_double(trim(tok)));
    } catch (const std::invalid_argument&) {
      throw ValidationError(what + ": not a number: '" + tok + "'");
    }
  }
  return out;
}

BlockedInit parse_blocked(const std::string& text, const std::string& what) {
  const auto v = parse_list(text, what);
  if (v.size() != 4) throw ValidationError(what + ": expected m1,b1,k,b");
  return {v[0], v[1], v[2], v[3]};
}

struct GridOptions {
  double fmin = 0.1;
  double fmax = 500.0;
  std::size_t points = 2000;

  void add(CLI::App* sub) {
    sub->add_option("--fmin", fmin, "Lowest frequency [Hz]")->capture_default_str();
    sub->add_option("--fmax", fmax, "Highest frequency [Hz]")->capture_default_str();
    sub->add_option("--points", points, "Log-spaced grid points [count]")->capture_default_str();
  }
  std::vector<double> grid() const { return freq_grid(fmin, fmax, points); }
};

struct RenderOverrides {
  std::optional<double> stiffness;
  std::optional<double> delay;

  void add(CLI::App* sub, const std::string& stiffness_default) {
    sub->add_option("--stiffness", stiffness, "Virtual spring K [N/m]; default " + stiffness_default);
    sub->add_option("--delay", delay, "Control delay T [s]; default from the config");
  }
  VirtualEnvironment environment(const ScenarioConfig& cfg, double default_K) const {
    VirtualEnvironment ve;
    ve.stiffness_K = stiffness.value_or(default_K);
    ve.delay_T = delay.value_or(cfg.delay_T);
    ve.f_max = cfg.f_max();
    ve.validate();
    return ve;
  }
};

// ---- bode / effective ----------------------------------------------------

struct CurveArgs {
  std::string config;
  std::string mode = "passive";
  GridOptions grid;
  RenderOverrides over;
  std::string out;
  std::string svg;
};

FrequencyResponse curve_for(const CurveArgs& a, ScenarioConfig& cfg) {
  cfg = resolve_config(a.config);
  const auto grid = a.grid.grid();
  if (a.mode == "passive") return frequency_response(passive_impedance_tf(cfg.plant), grid);
  return closed_loop_impedance(cfg.plant, a.over.environment(cfg, cfg.rendered_stiffness()), grid);
}

void add_curve_options(CLI::App* sub, CurveArgs& a) {
  sub->add_option("config", a.config, "Config file or fixture name")->required();
  sub->add_option("--mode", a.mode, "passive or closed")
      ->check(CLI::IsMember({"passive", "closed"}))
      ->capture_default_str();
  a.grid.add(sub);
  a.over.add(sub, "from the config (closed mode)");
  sub->add_option("--out", a.out, "CSV output [path]; '-' or empty for stdout");
  sub->add_option("--svg", a.svg, "Also plot the written CSV [path]");
}

void run_bode(const CurveArgs& a) {
  ScenarioConfig cfg;
  const auto fr = curve_for(a, cfg);
  std::ostringstream os;
  os << "freq_hz,z_re,z_im,z_mag_db,z_phase_deg\n";
  for (std::size_t i = 0; i < fr.size(); ++i) {
    const Complex z = fr.value[i];
    os << format_double(fr.omega[i] / kTwoPi) << ',' << format_double(z.real()) << ',' << format_double(z.imag())
       << ',' << format_double(20.0 * std::log10(std::abs(z))) << ','
       << format_double(std::arg(z) * 180.0 / std::numbers::pi) << '\n';
  }
  emit(a.out, os.str());
  emit_svg(a.out, a.svg, {"Impedance magnitude (" + a.mode + ")", "freq_hz", {"z_mag_db"}, true, false, "|Z| [dB N*s/m]"});
}

void run_effective(const CurveArgs& a) {
  ScenarioConfig cfg;
  const auto eff = effective_decomposition(curve_for(a, cfg));
  std::ostringstream os;
  os << "freq_hz,k_eff,b_eff,m_eff\n";
  for (std::size_t i = 0; i < eff.omega.size(); ++i)
    os << format_double(eff.omega[i] / kTwoPi) << ',' << format_optional(eff.k_eff[i]) << ','
       << format_double(eff.b_eff[i]) << ',' << format_optional(eff.m_eff[i]) << '\n';
  emit(a.out, os.str());
  emit_svg(a.out, a.svg, {"Effective impedance (" + a.mode + ")", "freq_hz", {"k_eff", "b_eff", "m_eff"}, true, true, "SI"});
}

// ---- render-area ---------------------------------------------------------

struct AreaArgs {
  std::string config;
  GridOptions grid;
  RenderOverrides over;
  std::string out_report;
  std::string out_curves;
  std::string svg;
};

std::string hz_line(const std::string& key, const std::optional<double>& omega) {
  if (!omega) return key + "_rad_s = absent\n" + key + "_hz = absent\n";
  return key + "_rad_s = " + format_double(*omega) + '\n' + key + "_hz = " + format_double(*omega / kTwoPi) + '\n';
}

void run_render_area(const AreaArgs& a) {
  const ScenarioConfig cfg = resolve_config(a.config);
  const double kmax = cfg.k_max();
  const VirtualEnvironment ve = a.over.environment(cfg, kmax);
  const auto report = rendering_area(cfg.plant, ve, a.grid.grid());

  std::ostringstream os;
  os << "config = " << cfg.origin << '\n'
     << "k_max_N_per_m = " << format_double(kmax) << '\n'
     << "rendered_stiffness_N_per_m = " << format_double(report.k_max)
     << (a.over.stiffness ? "  (--stiffness)" : "  (K_max)") << '\n'
     << "delay_s = " << format_double(ve.delay_T) << '\n'
     << "f_max_N = " << format_double(ve.f_max) << '\n'
     << "m_total_kg = " << format_double(cfg.plant.solid_body_mass()) << '\n'
     << hz_line("omega_s_analytic", report.omega_s_analytic) << hz_line("omega_s_detected", report.omega_s_detected)
     << hz_line("system_resonance", report.system_resonance)
     << hz_line("transmission_mode", report.transmission_mode)
     << "area_metric_decade2 = " << format_double(report.area_metric) << '\n';
  for (const auto& n : report.notes) os << "note = " << n << '\n';
  os << format_provenance(cfg);
  emit(a.out_report, os.str());

  if (!a.out_curves.empty()) {
    std::ostringstream cs;
    cs << "freq_hz,passive_mag_db,closed_mag_db\n";
    for (std::size_t i = 0; i < report.passive_curve.size(); ++i)
      cs << format_double(report.passive_curve.omega[i] / kTwoPi) << ','
         << format_double(20.0 * std::log10(std::abs(report.passive_curve.value[i]))) << ','
         << format_double(20.0 * std::log10(std::abs(report.closed_curve.value[i]))) << '\n';
    emit(a.out_curves, cs.str());
  }
  emit_svg(a.out_curves, a.svg,
           {"Rendering area", "freq_hz", {"passive_mag_db", "closed_mag_db"}, true, false, "|Z| [dB N*s/m]"});
}

// ---- sweep / compare -----------------------------------------------------

struct SweepArgs {
  std::string config;
  std::string axis = "gearing";
  std::string values = "1,2,4";
  double alpha = 1.0;
  GridOptions grid;
  std::string out;
};

void run_sweep(const SweepArgs& a) {
  const ScenarioConfig cfg = resolve_config(a.config);
  const auto values = parse_list(a.values, "--values");
  SweepOptions opt;
  opt.alpha = a.alpha;
  opt.f_min_hz = a.grid.fmin;
  opt.f_max_hz = a.grid.fmax;
  opt.points = a.grid.points;
  const auto rows = sweep(cfg.system(), a.axis == "gearing" ? SweepAxis::gearing : SweepAxis::scaling, values, opt);
  std::ostringstream os;
  os << kSweepHeader << '\n';
  for (const auto& r : rows)
    os << format_double(r.value) << ',' << format_double(r.m_total) << ',' << format_double(r.b_total_dc) << ','
       << format_double(r.k_max) << ',' << format_double(r.omega_s_analytic) << ','
       << format_optional(r.omega_s_detected) << ',' << format_optional(r.system_resonance) << '\n';
  emit(a.out, os.str());
  for (const auto& r : rows)
    if (!r.error.empty()) std::cerr << "note: value " << format_double(r.value) << ": " << r.error << '\n';
}

struct CompareArgs {
  std::string config_a;
  std::string config_b;
  double stiffness = 200.0;
  std::string out;
};

void run_compare(const CompareArgs& a) {
  const ScenarioConfig ca = resolve_config(a.config_a);
  const ScenarioConfig cb = resolve_config(a.config_b);
  const Comparison c = compare(ca.system(), cb.system(), a.stiffness);
  char ratio[32];
  std::snprintf(ratio, sizeof ratio, "%.3f", c.bandwidth_ratio);
  std::ostringstream os;
  os << "A = " << ca.origin << '\n'
     << "B = " << cb.origin << '\n'
     << "stiffness_N_per_m = " << format_double(a.stiffness) << '\n'
     << "bandwidth_ratio = " << ratio << '\n'
     << "bandwidth_advantage_percent = " << format_double(std::round((c.bandwidth_ratio - 1.0) * 1000.0) / 10.0)
     << '\n'
     << "dc_damping_ratio = " << format_double(c.dc_damping_ratio) << '\n'
     << "mass_ratio = " << format_double(c.mass_ratio) << '\n'
     << "k_max_A_N_per_m = " << format_double(c.k_max_A) << '\n'
     << "k_max_B_N_per_m = " << format_double(c.k_max_B) << '\n'
     << "note = a 52.8% advantage is quoted for the MR system against an equal-force EM system whose parameters "
        "are not published; this ratio compares the two configs given here\n";
  std::cout << os.str();
  if (!a.out.empty()) {
    std::ostringstream cs;
    cs << kCompareHeader << '\n'
       << format_double(c.bandwidth_ratio) << ',' << format_double(c.dc_damping_ratio) << ','
       << format_double(c.mass_ratio) << ',' << format_double(c.k_max_A) << ',' << format_double(c.k_max_B) << '\n';
    emit(a.out, cs.str());
  }
}

// ---- simulate / identify -------------------------------------------------

struct SimArgs {
  std::string config;
  RenderOverrides over;
  std::optional<double> duration;
  std::optional<double> noise;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string svg;
};

void run_simulate(const SimArgs& a) {
  const ScenarioConfig cfg = resolve_config(a.config);
  if (!cfg.simulation) throw ValidationError(cfg.origin + ": no [simulation] section");
  SimulationBlock sim = *cfg.simulation;
  if (a.duration) sim.config.duration = *a.duration;
  if (a.over.delay) sim.config.delay_T = *a.over.delay;
  if (a.noise) sim.noise = *a.noise;
  if (a.seed) sim.seed = *a.seed;
  Trajectory tr;
  switch (sim.test) {
    case SimTest::passive:
      tr = simulate(cfg.plant, 0.0, sim.config, sim.excitation);
      break;
    case SimTest::closed:
      tr = simulate(cfg.plant, a.over.stiffness.value_or(cfg.rendered_stiffness()), sim.config, sim.excitation);
      break;
    case SimTest::blocked:
      tr = blocked_simulate(cfg.plant, sim.config, sim.excitation);
      break;
  }
  add_measurement_noise(tr, sim.noise, sim.seed);
  std::ostringstream os;
  os << "t,x1,v1,x2,v2,f_a,f_h\n";
  for (std::size_t i = 0; i < tr.t.size(); ++i)
    os << format_double(tr.t[i]) << ',' << format_double(tr.x1[i]) << ',' << format_double(tr.v1[i]) << ','
       << format_double(tr.x2[i]) << ',' << format_double(tr.v2[i]) << ',' << format_double(tr.f_a[i]) << ','
       << format_double(tr.f_h[i]) << '\n';
  emit(a.out, os.str());
  emit_svg(a.out, a.svg, {"Simulated forces", "t", {"f_a", "f_h"}, false, false, "force [N]"});
}

struct IdentifyArgs {
  std::string traj;
  std::string model = "blocked";
  std::string init;
  std::string fixed;
  double init_m2 = 0.014;
  double compliance = 0.0;
  std::size_t seg_len = 4096;
  double overlap = 0.5;
  std::string window = "hann";
  double coherence = 0.9;
  double fmin = 0.1;
  double fmax = 500.0;
  std::string out_report;
  std::string out_frf;
  std::string svg;
};

std::vector<double> column_values(const CsvTable& t, const std::string& name, const std::string& path) {
  std::size_t c;
  try {
    c = t.column(name);
  } catch (const std::out_of_range&) {
    throw ValidationError("trajectory: missing column '" + name + "'");
  }
  std::vector<double> out;
  out.reserve(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    try {
      out.push_back(parse_double(t.rows[i].at(c)));
    } catch (const std::exception&) {
      throw ParseError(path, i + 2, "bad value in column '" + name + "'");
    }
  }
  return out;
}

void run_identify(const IdentifyArgs& a) {
  CsvTable table;
  try {
    table = read_csv(a.traj);
  } catch (const std::runtime_error& e) {
    throw ValidationError(e.what());
  }
  const auto t = column_values(table, "t", a.traj);
  if (t.size() < 2) throw ValidationError("trajectory: need at least two samples");
  const double fs = static_cast<double>(t.size() - 1) / (t.back() - t.front());
  const bool blocked = a.model == "blocked";
  const auto u = column_values(table, blocked ? "f_a" : "f_h", a.traj);
  const auto y = column_values(table, blocked ? "f_h" : "v2", a.traj);

  std::size_t seg = a.seg_len;
  if (seg == 0)
    for (seg = 1; seg * 2 <= u.size(); seg *= 2) {
    }
  const auto frf = estimate_frf(u, y, fs, seg, a.overlap,
                                blocked ? FrfMode::blocked_force_transfer : FrfMode::end_effector_impedance,
                                a.coherence, a.window == "hann" ? Window::hann : Window::rectangular);
  FitOptions opt;
  opt.f_lo_hz = a.fmin;
  opt.f_hi_hz = a.fmax;
  FitResult fit;
  if (blocked) {
    if (a.init.empty()) throw ValidationError("--init m1,b1,k,b is required for the blocked model");
    fit = fit_blocked(frf, parse_blocked(a.init, "--init"), opt);
  } else {
    if (a.fixed.empty()) throw ValidationError("--fixed m1,b1,k,b is required for the full model");
    fit = fit_full(frf, parse_blocked(a.fixed, "--fixed"), a.init_m2, a.compliance, opt);
  }
  std::ostringstream os;
  os << "trajectory = " << a.traj << '\n'
     << "sample_rate_hz = " << format_double(fs) << '\n'
     << "seg_len = " << seg << '\n'
     << "window = " << a.window << '\n'
     << format_fit_report(fit, a.model);
  emit(a.out_report, os.str());
  if (!a.out_frf.empty()) emit(a.out_frf, format_frf_csv(frf));
  emit_svg(a.out_frf, a.svg, {"Estimated FRF", "freq_hz", {"re", "im"}, true, false, ""});
}

// ---- catalog -------------------------------------------------------------

struct CatalogArgs {
  std::string file;
  std::string name;
  int n_dof = 3;
  double mr_mass = 1000.0;
  std::string em = "Maxon 136206";
  int motors_per_dof = 1;
};

std::vector<CatalogEntry> load_catalog(const std::string& file) {
  if (file.empty()) return builtin_catalog();
  std::string text;
  try {
    text = read_text_file(file);
  } catch (const std::runtime_error& e) {
    throw ValidationError(e.what());
  }
  return parse_catalog(text, file);
}

void run_catalog_list(const CatalogArgs& a) {
  for (const auto& e : load_catalog(a.file))
    std::cout << e.spec.name << " (" << (e.spec.technology == Technology::MR ? "MR" : "EM") << ")\n";
}

void run_catalog_show(const CatalogArgs& a) {
  const auto catalog = load_catalog(a.file);
  std::cout << format_catalog_row(find_entry(catalog, a.name));
}

void run_catalog_weight(const CatalogArgs& a) {
  const auto catalog = load_catalog(a.file);
  const auto& em = find_entry(catalog, a.em);
  const double ratio = weight_compare(a.n_dof, a.mr_mass * units::kGramToKg, em, a.motors_per_dof);
  std::cout << "em_motor = " << em.spec.name << '\n'
            << "em_total_g = " << format_double(a.n_dof * a.motors_per_dof * (em.spec.mass / units::kGramToKg)) << '\n'
            << "mr_module_g = " << format_double(a.mr_mass) << '\n'
            << "weight_ratio = " << format_double(ratio) << '\n';
}

int run_guarded(const std::function<void()>& action) {
  try {
    action();
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hapbench: impedance, rendering and identification tools for 2-DOF haptic devices"};
  app.require_subcommand(1);

  CurveArgs bode_args;
  auto* bode = app.add_subcommand("bode", "End-effector impedance as CSV: freq_hz,z_re,z_im,z_mag_db,z_phase_deg");
  add_curve_options(bode, bode_args);

  CurveArgs eff_args;
  auto* effective = app.add_subcommand("effective", "Effective stiffness, damping and mass: freq_hz,k_eff,b_eff,m_eff");
  add_curve_options(effective, eff_args);

  AreaArgs area_args;
  auto* area = app.add_subcommand("render-area", "Rendering report at K_max (or --stiffness) with curves");
  area->add_option("config", area_args.config, "Config file or fixture name")->required();
  area_args.grid.add(area);
  area_args.over.add(area, "K_max from t_max, geometry and workspace");
  area->add_option("--out-report", area_args.out_report, "Report output [path]; default stdout");
  area->add_option("--out-curves", area_args.out_curves, "CSV of passive and closed |Z| in dB [path]");
  area->add_option("--svg", area_args.svg, "Also plot the written curves CSV [path]");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Gearing or scaling sweep as CSV");
  sweep_cmd->add_option("config", sweep_args.config, "Config file or fixture name")->required();
  sweep_cmd->add_option("--axis", sweep_args.axis, "gearing (ratio G) or scaling (size factor sigma)")
      ->check(CLI::IsMember({"gearing", "scaling"}))
      ->capture_default_str();
  sweep_cmd->add_option("--values", sweep_args.values, "Comma-separated G or sigma values [dimensionless]")
      ->capture_default_str();
  sweep_cmd->add_option("--alpha", sweep_args.alpha, "Inertia exponent for scaling [dimensionless]")
      ->capture_default_str();
  sweep_args.grid.add(sweep_cmd);
  sweep_cmd->add_option("--out", sweep_args.out, "CSV output [path]; default stdout");

  CompareArgs cmp_args;
  auto* cmp = app.add_subcommand("compare", "Bandwidth, damping and mass ratios of config A over config B");
  cmp->add_option("config_a", cmp_args.config_a, "Config A, file or fixture name")->required();
  cmp->add_option("config_b", cmp_args.config_b, "Config B, file or fixture name")->required();
  cmp->add_option("--stiffness,-K", cmp_args.stiffness, "Common virtual spring K [N/m]")->capture_default_str();
  cmp->add_option("--out", cmp_args.out, "CSV output [path]");

  SimArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Time-domain run of the config's [simulation] block as CSV");
  sim->add_option("config", sim_args.config, "Config file or fixture name")->required();
  sim_args.over.add(sim, "from the config (closed test)");
  sim->add_option("--duration", sim_args.duration, "Simulated time [s]");
  sim->add_option("--noise", sim_args.noise, "Measurement noise [fraction of channel rms]");
  sim->add_option("--seed", sim_args.seed, "Noise seed [integer]");
  sim->add_option("--out", sim_args.out, "CSV output t,x1,v1,x2,v2,f_a,f_h [path]; default stdout");
  sim->add_option("--svg", sim_args.svg, "Also plot the written CSV [path]");

  IdentifyArgs id_args;
  auto* ident = app.add_subcommand("identify", "Estimate an FRF from a trajectory CSV and fit the model");
  ident->add_option("--traj", id_args.traj, "Trajectory CSV with t,f_a,f_h,v2 columns [path]")->required();
  ident->add_option("--model", id_args.model, "blocked (f_a -> f_h) or full (f_h -> v2)")
      ->check(CLI::IsMember({"blocked", "full"}))
      ->capture_default_str();
  ident->add_option("--init", id_args.init, "Blocked initial guess m1,b1,k,b [kg,N*s/m,N/m,N*s/m]");
  ident->add_option("--fixed", id_args.fixed, "Full model: blocked fit m1,b1,k,b [kg,N*s/m,N/m,N*s/m]");
  ident->add_option("--init-m2", id_args.init_m2, "Full model: initial lever mass [kg]")->capture_default_str();
  ident->add_option("--compliance", id_args.compliance, "Full model: known grounding spring [N/m]")
      ->capture_default_str();
  ident->add_option("--seg-len", id_args.seg_len, "Welch segment length [samples, power of two; 0 = whole record]")
      ->capture_default_str();
  ident->add_option("--overlap", id_args.overlap, "Welch overlap [fraction]")->capture_default_str();
  ident->add_option("--window", id_args.window, "hann or rectangular")
      ->check(CLI::IsMember({"hann", "rectangular"}))
      ->capture_default_str();
  ident->add_option("--coherence", id_args.coherence, "Coherence threshold [0..1]")->capture_default_str();
  ident->add_option("--fmin", id_args.fmin, "Fit band low edge [Hz]")->capture_default_str();
  ident->add_option("--fmax", id_args.fmax, "Fit band high edge [Hz]")->capture_default_str();
  ident->add_option("--out-report", id_args.out_report, "Fit report [path]; default stdout");
  ident->add_option("--out-frf", id_args.out_frf, "FRF CSV freq_hz,re,im,coherence [path]");
  ident->add_option("--svg", id_args.svg, "Also plot the written FRF CSV [path]");

  CatalogArgs cat_args;
  auto* cat = app.add_subcommand("catalog", "Actuator catalog");
  cat->require_subcommand(1);
  cat->add_option("--file", cat_args.file, "Catalog file instead of the builtin table [path]");
  auto* cat_list = cat->add_subcommand("list", "List entries");
  auto* cat_show = cat->add_subcommand("show", "Print one entry with derived columns");
  cat_show->add_option("name", cat_args.name, "Entry name or unique substring")->required();
  auto* cat_weight = cat->add_subcommand("weight", "Mass of an EM build over the MR module mass");
  cat_weight->add_option("--dof", cat_args.n_dof, "Degrees of freedom [count]")->capture_default_str();
  cat_weight->add_option("--mr-mass", cat_args.mr_mass, "MR module mass [g]")->capture_default_str();
  cat_weight->add_option("--em", cat_args.em, "EM catalog entry [name]")->capture_default_str();
  cat_weight->add_option("--motors-per-dof", cat_args.motors_per_dof, "EM motors per DOF [count]")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*bode) return run_guarded([&] { run_bode(bode_args); });
  if (*effective) return run_guarded([&] { run_effective(eff_args); });
  if (*area) return run_guarded([&] { run_render_area(area_args); });
  if (*sweep_cmd) return run_guarded([&] { run_sweep(sweep_args); });
  if (*cmp) return run_guarded([&] { run_compare(cmp_args); });
  if (*sim) return run_guarded([&] { run_simulate(sim_args); });
  if (*ident) return run_guarded([&] { run_identify(id_args); });
  if (*cat_list) return run_guarded([&] { run_catalog_list(cat_args); });
  if (*cat_show) return run_guarded([&] { run_catalog_show(cat_args); });
  if (*cat_weight) return run_guarded([&] { run_catalog_weight(cat_args); });
  return 2;
}
