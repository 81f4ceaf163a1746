#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HAPBENCH_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("hapbench_cli_" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string value_of(const std::string& report, const std::string& key) {
  const auto at = report.find(key + " = ");
  if (at == std::string::npos) return {};
  const auto from = at + key.size() + 3;
  return report.substr(from, report.find('\n', from) - from);
}

const std::string kFixtures = HAPBENCH_FIXTURE_DIR;

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("bode mr_170").code == 0);
  CHECK(run("bode no_such_config").code == 2);
  CHECK(run("bode mr_170 --fmin 10 --fmax 1").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--help").code == 0);

  const auto cfg = scratch() / "unstable.cfg";
  std::ofstream(cfg) << "[plant]\nm1 = 1.5\nb1 = 1.0\nm2 = 14\nk = 4000\nb = 20\n"
                        "[virtual_environment]\nstiffness = 1000000\ndelay = 0.001\n"
                        "[simulation]\ntest = closed\nduration = 2\nexcitation = impact_train\n"
                        "impact_period = 10\n";
  CHECK(run("simulate " + cfg.string()).code == 3);
}

TEST_CASE("bode output") {
  const auto passive = run("bode mr_170");
  REQUIRE(passive.code == 0);
  const auto rows = csv_rows(passive.out);
  CHECK(rows[0] == std::vector<std::string>{"freq_hz", "z_re", "z_im", "z_mag_db", "z_phase_deg"});
  CHECK(rows.size() == 2001);
  CHECK(std::abs(std::stod(rows[1][3])) < 0.01);

  CHECK(run("bode mr_170 --mode closed --stiffness 0").out == passive.out);

  const auto closed = csv_rows(run("bode em_136209_170 --mode closed --stiffness 200").out);
  std::size_t best = 1;
  for (std::size_t i = 1; i < closed.size(); ++i)
    if (std::stod(closed[i][3]) < std::stod(closed[best][3])) best = i;
  CHECK(std::abs(std::stod(closed[best][0]) / 10.6 - 1.0) < 0.05);
}

TEST_CASE("effective impedance output") {
  const auto rows = csv_rows(run("effective mr_170 --mode closed --stiffness 200 --fmin 1 --fmax 100 --points 3").out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"freq_hz", "k_eff", "b_eff", "m_eff"});
  CHECK(std::abs(std::stod(rows[1][1]) / 200.0 - 1.0) < 0.05);
  CHECK(std::abs(std::stod(rows[3][3]) / 0.0155 - 1.0) < 0.10);
  const auto passive = csv_rows(run("effective mr_170 --fmin 0.1 --fmax 1 --points 2").out);
  CHECK(std::abs(std::stod(passive[1][2]) - 1.0) < 0.01);
  CHECK(passive[1][1].empty() != passive[1][3].empty());
}

TEST_CASE("render-area report") {
  const auto r = run("render-area mr_170");
  REQUIRE(r.code == 0);
  CHECK(std::stod(value_of(r.out, "k_max_N_per_m")) == doctest::Approx(429.4).epsilon(1e-3));
  const double analytic = std::stod(value_of(r.out, "omega_s_analytic_rad_s"));
  const double detected = std::stod(value_of(r.out, "omega_s_detected_rad_s"));
  CHECK(detected / analytic >= 0.95);
  CHECK(detected / analytic <= 1.05);
  CHECK(std::stod(value_of(r.out, "area_metric_decade2")) > 0.0);
  CHECK(r.out.find("assumed") != std::string::npos);
  const auto zero = run("render-area mr_170 --stiffness 0");
  CHECK(zero.code == 0);
  CHECK(std::stod(value_of(zero.out, "area_metric_decade2")) == 0.0);
  CHECK(value_of(zero.out, "omega_s_analytic_rad_s") == "absent");
}

TEST_CASE("sweep and compare") {
  const auto rows = csv_rows(run("sweep mr_170 --axis gearing --values 1,2,4").out);
  REQUIRE(rows.size() == 4);
  std::size_t col = 0;
  while (col < rows[0].size() && rows[0][col] != "m_total") ++col;
  REQUIRE(col < rows[0].size());
  const double expected[] = {0.0155, 0.0200, 0.0380};
  for (int i = 0; i < 3; ++i) CHECK(std::stod(rows[i + 1][col]) == doctest::Approx(expected[i]).epsilon(1e-9));

  const auto c = run("compare mr_170 em_136209_170 -K 200");
  REQUIRE(c.code == 0);
  CHECK(value_of(c.out, "bandwidth_ratio") == "1.700");
  CHECK(c.out.find("52.8%") != std::string::npos);
}

TEST_CASE("catalog commands") {
  const auto show = run("catalog show \"drum clutch\"");
  REQUIRE(show.code == 0);
  for (const char* v : {"1.48e-1", "4.71e-3", "= 0.4\n", "= 2.7\n", "= 85\n", "30x30x40"})
    CHECK(show.out.find(v) != std::string::npos);
  const auto list = run("catalog list");
  CHECK(list.out.find("Maxon 118890") != std::string::npos);
  CHECK(list.out.find("Maxon 136209") != std::string::npos);
  CHECK(value_of(run("catalog weight").out, "ratio") == "2.55");
  CHECK(run("catalog show Maxon").code == 2);
}

TEST_CASE("simulate and identify") {
  const auto cfg = scratch() / "short_blocked.cfg";
  std::ofstream(cfg) << "[plant]\nm1 = 1.5\nb1 = 1.0\nm2 = 14\nk = 4000\nb = 20\n"
                        "[simulation]\ntest = blocked\ndt = 0.000025\nrecord_decimation = 4\nduration = 6.5535\n"
                        "excitation = log_chirp\nf0 = 0.5\nf1 = 500\nchirp_duration = 6\n";
  const auto traj = scratch() / "blocked.csv";
  REQUIRE(run("simulate " + cfg.string() + " --out " + traj.string()).code == 0);
  const auto text = slurp(traj);
  CHECK(text.rfind("t,x1,v1,x2,v2,f_a,f_h\n", 0) == 0);
  const auto report = run("identify --traj " + traj.string() + " --model blocked --init 0.002,1.2,4000,25 --seg-len 0 "
                          "--window rectangular --overlap 0 --fmin 1");
  REQUIRE(report.code == 0);
  CHECK(value_of(report.out, "converged") == "true");
  const double m1 = std::stod(value_of(report.out, "m1"));
  const double b = std::stod(value_of(report.out, "b"));
  CHECK((m1 / 4000.0) / (0.0015 / 4000.0) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(b == doctest::Approx(20.0).epsilon(0.01));
  CHECK(run("identify --traj " + (scratch() / "missing.csv").string()).code == 2);
}

TEST_CASE("help documents units for every flag") {
  const std::vector<std::string> commands = {"bode",    "effective", "render-area",  "sweep",       "compare",
                                             "simulate", "identify", "catalog",      "catalog show", "catalog list",
                                             "catalog weight"};
  const std::regex flag(R"(^\s+(-\w,)?--([\w-]+)( (FLOAT|UINT|INT|TEXT)(:\{[^}]*\})?( \[[^\]]*\])?)?\s*(.*)$)");
  for (const auto& c : commands) {
    const auto help = run(c + " --help");
    REQUIRE(help.code == 0);
    std::istringstream in(help.out);
    std::string line;
    int flags = 0;
    while (std::getline(in, line)) {
      std::smatch m;
      if (!std::regex_match(line, m, flag) || m[2] == "help") continue;
      ++flags;
      if (m[5].matched) continue;  // enumerated choice, no unit
      const std::string desc = m[7];
      INFO(c << ": " << line);
      CHECK(std::regex_search(desc, std::regex(R"(\[[^\]]+\])")));
    }
    if (c != "catalog show" && c != "catalog list") CHECK(flags > 0);
  }
}

TEST_CASE("svg is drawn from the written CSV") {
  const auto a = scratch() / "a.csv", b = scratch() / "b.csv", svg = scratch() / "b.svg";
  REQUIRE(run("bode mr_170 --out " + a.string()).code == 0);
  REQUIRE(run("bode mr_170 --out " + b.string() + " --svg " + svg.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(svg).find("<svg") != std::string::npos);
  CHECK(run("bode mr_170 --svg " + svg.string()).code == 2);
}

TEST_CASE("outputs are byte-reproducible") {
  for (const char* args : {"bode em_136209_170 --mode closed", "effective mr_170 --mode closed", "render-area mr_170",
                           "sweep mr_170 --axis scaling --values 1,1.5", "compare mr_170 em_136209_170",
                           "simulate mr_170_compliance_test --duration 0.5 --noise 0.01 --seed 4", "catalog list"}) {
    const auto first = run(args), second = run(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
  }
}

TEST_CASE("fixture directory override") {
  const auto dir = scratch() / "fx";
  fs::create_directories(dir);
  fs::copy_file(kFixtures + "/em_136209_170.cfg", dir / "custom.cfg", fs::copy_options::overwrite_existing);
  const std::string cmd = "HAPTIC_BENCH_FIXTURES=" + dir.string() + " " + std::string(HAPBENCH_CLI) +
                          " bode custom --points 2 > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(run("bode custom").code == 2);
}
