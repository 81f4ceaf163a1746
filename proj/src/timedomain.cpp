#include "hapbench/timedomain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "hapbench/errors.hpp"

namespace hapbench {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using State = std::array<double, 4>;  // x1, v1, x2, v2

State axpy(const State& x, double h, const State& d) {
  return {x[0] + h * d[0], x[1] + h * d[1], x[2] + h * d[2], x[3] + h * d[3]};
}

bool finite(const State& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

template <typename Deriv>
State rk4_step(const State& x, double t, double dt, Deriv&& f) {
  const State k1 = f(t, x);
  const State k2 = f(t + 0.5 * dt, axpy(x, 0.5 * dt, k1));
  const State k3 = f(t + 0.5 * dt, axpy(x, 0.5 * dt, k2));
  const State k4 = f(t + dt, axpy(x, dt, k3));
  State out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

std::size_t step_count(const SimConfig& cfg) { return static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt)); }

void record(Trajectory& tr, double t, const State& x, double fa, double fh) {
  tr.t.push_back(t);
  tr.x1.push_back(x[0]);
  tr.v1.push_back(x[1]);
  tr.x2.push_back(x[2]);
  tr.v2.push_back(x[3]);
  tr.f_a.push_back(fa);
  tr.f_h.push_back(fh);
}

void reserve(Trajectory& tr, std::size_t n) {
  for (auto* v : {&tr.t, &tr.x1, &tr.v1, &tr.x2, &tr.v2, &tr.f_a, &tr.f_h}) v->reserve(n);
}

[[noreturn]] void diverged(double t) {
  throw NonFinite("simulation state left the finite range at t = " + std::to_string(t) + " s");
}

}  // namespace

std::size_t SimConfig::validate() const {
  if (!(dt > 0.0)) throw ValidationError("simulation: dt must be > 0");
  if (!(duration >= dt)) throw ValidationError("simulation: duration must be >= dt");
  if (record_decimation < 1) throw ValidationError("simulation: record_decimation must be >= 1");
  if (!(delay_T >= 0.0)) throw ValidationError("simulation: delay must be >= 0");
  if (!(f_max > 0.0)) throw ValidationError("simulation: f_max must be > 0");
  if (!(fixture_stiffness >= 0.0)) throw ValidationError("simulation: fixture_stiffness must be >= 0");
  const double steps = delay_T / dt;
  const double whole = std::round(steps);
  if (std::abs(steps - whole) > 1e-9 * std::max(1.0, steps))
    throw ValidationError("simulation: delay must be an integer multiple of dt");
  return static_cast<std::size_t>(whole);
}

void ExcitationSpec::validate() const {
  const bool chirp = kind == ExcitationKind::log_chirp || kind == ExcitationKind::chirp_then_impacts;
  const bool impacts = kind == ExcitationKind::impact_train || kind == ExcitationKind::chirp_then_impacts;
  if (chirp && !(f0 > 0.0 && f1 > f0)) throw ValidationError("excitation: chirp requires 0 < f0 < f1");
  if (chirp && !(chirp_duration > 0.0)) throw ValidationError("excitation: chirp_duration must be > 0");
  if (impacts && !(impact_width > 0.0 && impact_period >= impact_width))
    throw ValidationError("excitation: impacts require 0 < width <= period");
}

double excitation_value(const ExcitationSpec& spec, double t) {
  auto chirp = [&](double tt) {
    if (tt > spec.chirp_duration) return 0.0;
    const double ratio = spec.f1 / spec.f0;
    const double phase = kTwoPi * spec.f0 * spec.chirp_duration / std::log(ratio) *
                         (std::pow(ratio, tt / spec.chirp_duration) - 1.0);
    return spec.amplitude * std::sin(phase);
  };
  auto impacts = [&](double tt) {
    if (tt < 0.0) return 0.0;
    const double tau = std::fmod(tt, spec.impact_period);
    return tau < spec.impact_width ? spec.amplitude * std::sin(std::numbers::pi * tau / spec.impact_width) : 0.0;
  };
  switch (spec.kind) {
    case ExcitationKind::none:
      return 0.0;
    case ExcitationKind::log_chirp:
      return chirp(t);
    case ExcitationKind::impact_train:
      return impacts(t);
    case ExcitationKind::chirp_then_impacts:
      return t <= spec.chirp_duration ? chirp(t) : impacts(t - spec.chirp_duration);
  }
  return 0.0;
}

double chirp_frequency(const ExcitationSpec& spec, double t) {
  return spec.f0 * std::pow(spec.f1 / spec.f0, t / spec.chirp_duration);
}

double Trajectory::sample_rate() const {
  if (t.size() < 2) throw ValidationError("trajectory: need at least two samples");
  return static_cast<double>(t.size() - 1) / (t.back() - t.front());
}

Trajectory simulate(const PlantParams& p, double K, const SimConfig& cfg, const ExcitationSpec& exc) {
  p.validate();
  exc.validate();
  const std::size_t delay_steps = cfg.validate();
  const std::size_t n_steps = step_count(cfg);

  Trajectory tr;
  reserve(tr, n_steps / cfg.record_decimation + 1);
  std::vector<double> x2_ring(delay_steps + 1, 0.0);

  State x{0.0, 0.0, 0.0, 0.0};
  double fa = 0.0;
  auto deriv = [&](double t, const State& s) -> State {
    const double spring = p.k * (s[0] - s[2]) + p.b * (s[1] - s[3]);
    const double fh = excitation_value(exc, t);
    return {s[1], (fa - p.b1 * s[1] - spring) / p.m1, s[3], (fh + spring - cfg.fixture_stiffness * s[2]) / p.m2};
  };

  for (std::size_t n = 0;; ++n) {
    const double t = static_cast<double>(n) * cfg.dt;
    x2_ring[n % x2_ring.size()] = x[2];
    const double x2_delayed = n >= delay_steps ? x2_ring[(n - delay_steps) % x2_ring.size()] : 0.0;
    fa = std::clamp(-K * x2_delayed, -cfg.f_max, cfg.f_max);
    if (n % cfg.record_decimation == 0) record(tr, t, x, fa, excitation_value(exc, t));
    if (n == n_steps) break;
    x = rk4_step(x, t, cfg.dt, deriv);
    if (!finite(x)) diverged(t + cfg.dt);
  }
  return tr;
}

Trajectory blocked_simulate(const PlantParams& p, const SimConfig& cfg, const ExcitationSpec& exc) {
  p.validate();
  exc.validate();
  cfg.validate();
  const std::size_t n_steps = step_count(cfg);

  Trajectory tr;
  reserve(tr, n_steps / cfg.record_decimation + 1);
  State x{0.0, 0.0, 0.0, 0.0};
  auto deriv = [&](double t, const State& s) -> State {
    const double fa = excitation_value(exc, t);
    return {s[1], (fa - p.b1 * s[1] - p.k * s[0] - p.b * s[1]) / p.m1, 0.0, 0.0};
  };

  for (std::size_t n = 0;; ++n) {
    const double t = static_cast<double>(n) * cfg.dt;
    if (n % cfg.record_decimation == 0) record(tr, t, x, excitation_value(exc, t), p.k * x[0] + p.b * x[1]);
    if (n == n_steps) break;
    x = rk4_step(x, t, cfg.dt, deriv);
    if (!finite(x)) diverged(t + cfg.dt);
  }
  return tr;
}

void add_measurement_noise(Trajectory& traj, double relative_level, std::uint64_t seed) {
  if (!(relative_level >= 0.0)) throw ValidationError("noise level must be >= 0");
  if (relative_level == 0.0) return;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto* channel : {&traj.f_a, &traj.f_h, &traj.x2, &traj.v2}) {
    double sum_sq = 0.0;
    for (double v : *channel) sum_sq += v * v;
    if (channel->empty() || sum_sq == 0.0) continue;
    const double sigma = relative_level * std::sqrt(sum_sq / static_cast<double>(channel->size()));
    for (double& v : *channel) v += sigma * normal(rng);
  }
}

}  // namespace hapbench
