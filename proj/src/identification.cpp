#include "hapbench/identification.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>

#include "hapbench/errors.hpp"
#include "hapbench/format.hpp"

namespace hapbench {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

class RealFft {
 public:
  explicit RealFft(std::size_t n)
      : n_(n),
        in_(static_cast<double*>(fftw_malloc(sizeof(double) * n)), fftw_free),
        out_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))), fftw_free) {
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_.get(), out_.get(), FFTW_ESTIMATE);
  }
  ~RealFft() { fftw_destroy_plan(plan_); }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* input() { return in_.get(); }
  void run() { fftw_execute(plan_); }
  Complex bin(std::size_t k) const { return {out_.get()[k][0], out_.get()[k][1]}; }

 private:
  std::size_t n_;
  std::unique_ptr<double, decltype(&fftw_free)> in_;
  std::unique_ptr<fftw_complex, decltype(&fftw_free)> out_;
  fftw_plan plan_;
};

}  // namespace

FrfEstimate estimate_frf(std::span<const double> u, std::span<const double> y, double fs, std::size_t seg_len,
                         double overlap, FrfMode mode, double coherence_threshold, Window window_kind) {
  if (u.size() != y.size()) throw ValidationError("estimate_frf: input and output lengths differ");
  if (!is_power_of_two(seg_len)) throw ValidationError("estimate_frf: seg_len must be a power of two");
  if (seg_len > u.size()) throw ValidationError("estimate_frf: seg_len longer than the series");
  if (!(overlap >= 0.0 && overlap < 1.0)) throw ValidationError("estimate_frf: overlap must be in [0, 1)");
  if (!(fs > 0.0)) throw ValidationError("estimate_frf: fs must be > 0");

  const std::size_t step = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(seg_len * (1.0 - overlap))));
  const std::size_t n_bins = seg_len / 2;
  std::vector<double> window(seg_len, 1.0);
  if (window_kind == Window::hann)
    for (std::size_t i = 0; i < seg_len; ++i)
      window[i] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(seg_len));

  std::vector<double> s_uu(n_bins + 1, 0.0), s_yy(n_bins + 1, 0.0);
  std::vector<Complex> s_uy(n_bins + 1, 0.0);
  RealFft fft_u(seg_len), fft_y(seg_len);
  for (std::size_t start = 0; start + seg_len <= u.size(); start += step) {
    for (std::size_t i = 0; i < seg_len; ++i) {
      fft_u.input()[i] = window[i] * u[start + i];
      fft_y.input()[i] = window[i] * y[start + i];
    }
    fft_u.run();
    fft_y.run();
    for (std::size_t k = 1; k <= n_bins; ++k) {
      const Complex U = fft_u.bin(k);
      const Complex Y = fft_y.bin(k);
      s_uu[k] += std::norm(U);
      s_yy[k] += std::norm(Y);
      s_uy[k] += std::conj(U) * Y;
    }
  }

  const double max_uu = *std::max_element(s_uu.begin(), s_uu.end());
  if (!(max_uu > 0.0)) throw DegenerateInput("estimate_frf: input has no spectral power");

  FrfEstimate est;
  est.mode = mode;
  est.coherence_threshold = coherence_threshold;
  est.base.omega.reserve(n_bins);
  est.base.value.reserve(n_bins);
  std::vector<double> coherence;
  coherence.reserve(n_bins);
  for (std::size_t k = 1; k <= n_bins; ++k) {
    est.base.omega.push_back(kTwoPi * static_cast<double>(k) * fs / static_cast<double>(seg_len));
    if (s_uu[k] <= 1e-14 * max_uu || s_yy[k] == 0.0) {
      est.base.value.emplace_back(0.0, 0.0);
      coherence.push_back(0.0);
      continue;
    }
    const Complex h1 = s_uy[k] / s_uu[k];
    est.base.value.push_back(mode == FrfMode::end_effector_impedance ? 1.0 / h1 : h1);
    coherence.push_back(std::min(1.0, std::norm(s_uy[k]) / (s_uu[k] * s_yy[k])));
  }
  est.base.coherence = std::move(coherence);
  return est;
}

FrfEstimate make_frf(FrequencyResponse fr, FrfMode mode) {
  fr.validate();
  fr.coherence = std::vector<double>(fr.size(), 1.0);
  FrfEstimate est;
  est.base = std::move(fr);
  est.mode = mode;
  return est;
}

namespace {

// Parameter order used by every model: m1, b1, m2, k, b.
// kScale multiplies m1, b1, k and b together, the one direction a blocked
// force transfer cannot observe.
enum Param : int { kM1 = 0, kB1, kM2, kK, kB, kParamCount, kScale = kParamCount };
constexpr const char* kParamNames[kParamCount + 1] = {"m1", "b1", "m2", "k", "b", "scale"};
constexpr int kScaled[] = {kM1, kB1, kK, kB};

double& field(PlantParams& p, int i) {
  switch (i) {
    case kM1: return p.m1;
    case kB1: return p.b1;
    case kM2: return p.m2;
    case kK: return p.k;
    default: return p.b;
  }
}

double field(const PlantParams& p, int i) {
  PlantParams q = p;
  return field(q, i);
}

// Model value and partial derivatives with respect to each plant field.
struct ModelEval {
  Complex value;
  std::array<Complex, kParamCount> d;
};

ModelEval eval_blocked(const PlantParams& p, Complex s) {
  const Complex n = p.k + p.b * s;
  const Complex den = p.m1 * s * s + (p.b1 + p.b) * s + p.k;
  const Complex den2 = den * den;
  ModelEval e;
  e.value = n / den;
  e.d[kM1] = -n * s * s / den2;
  e.d[kB1] = -n * s / den2;
  e.d[kM2] = 0.0;
  e.d[kK] = (den - n) / den2;
  e.d[kB] = s * (den - n) / den2;
  return e;
}

// Z = m2 s + (k + b s)(m1 s + b1) / D + k_c / s
ModelEval eval_impedance(const PlantParams& p, Complex s, double compliance) {
  const Complex n = p.k + p.b * s;
  const Complex a = p.m1 * s + p.b1;
  const Complex den = p.m1 * s * s + (p.b1 + p.b) * s + p.k;
  const Complex den2 = den * den;
  ModelEval e;
  e.value = p.m2 * s + n * a / den + compliance / s;
  e.d[kM1] = n * s / den - n * a * s * s / den2;
  e.d[kB1] = n / den - n * a * s / den2;
  e.d[kM2] = s;
  e.d[kK] = a / den - n * a / den2;
  e.d[kB] = s * a / den - n * a * s / den2;
  return e;
}

struct Problem {
  std::vector<Complex> s;
  std::vector<Complex> meas;
  std::vector<double> sqrt_w;  // sqrt(w_i / sum w) / |meas_i|
  std::function<ModelEval(const PlantParams&, Complex)> model;
  PlantParams fixed;
  std::vector<int> free;  // fitted plant fields

  std::size_t rows() const { return 2 * s.size(); }

  PlantParams plant(const Eigen::VectorXd& log_theta) const {
    PlantParams p = fixed;
    for (std::size_t j = 0; j < free.size(); ++j) {
      const double v = std::exp(log_theta[static_cast<Eigen::Index>(j)]);
      if (free[j] == kScale) {
        for (int f : kScaled) field(p, f) *= v;
      } else {
        field(p, free[j]) = v;
      }
    }
    return p;
  }

  // d model / d log(param j) at plant p.
  static Complex log_derivative(const PlantParams& p, const ModelEval& m, int j) {
    if (j != kScale) return field(p, j) * m.d[static_cast<std::size_t>(j)];
    Complex sum = 0.0;
    for (int f : kScaled) sum += field(p, f) * m.d[static_cast<std::size_t>(f)];
    return sum;
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& log_theta) const {
    const PlantParams p = plant(log_theta);
    Eigen::VectorXd r(static_cast<Eigen::Index>(rows()));
    for (std::size_t i = 0; i < s.size(); ++i) {
      const Complex e = sqrt_w[i] * (model(p, s[i]).value - meas[i]);
      r[static_cast<Eigen::Index>(2 * i)] = e.real();
      r[static_cast<Eigen::Index>(2 * i + 1)] = e.imag();
    }
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& log_theta) const {
    const PlantParams p = plant(log_theta);
    Eigen::MatrixXd J(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(free.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
      const ModelEval m = model(p, s[i]);
      for (std::size_t j = 0; j < free.size(); ++j) {
        const Complex dj = sqrt_w[i] * log_derivative(p, m, free[j]);
        J(static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(j)) = dj.real();
        J(static_cast<Eigen::Index>(2 * i + 1), static_cast<Eigen::Index>(j)) = dj.imag();
      }
    }
    return J;
  }
};

Problem make_problem(const FrfEstimate& frf, const FitOptions& options, std::size_t min_bins) {
  const FrequencyResponse& fr = frf.base;
  if (options.weights && options.weights->size() != fr.size())
    throw ValidationError("fit: weight vector length differs from the FRF");
  std::vector<double> w;
  Problem prob;
  for (std::size_t i = 0; i < fr.size(); ++i) {
    const double f = fr.omega[i] / kTwoPi;
    if (f < options.f_lo_hz || f > options.f_hi_hz || !frf.usable(i) || std::abs(fr.value[i]) == 0.0) continue;
    const double wi = options.weights ? (*options.weights)[i] : 1.0;
    if (!(wi > 0.0)) continue;
    prob.s.emplace_back(0.0, fr.omega[i]);
    prob.meas.push_back(fr.value[i]);
    w.push_back(wi);
  }
  if (prob.s.size() < min_bins) throw DegenerateInput("fit: fewer than 8 usable FRF bins");
  double w_sum = 0.0;
  for (double v : w) w_sum += v;
  for (std::size_t i = 0; i < w.size(); ++i) prob.sqrt_w.push_back(std::sqrt(w[i] / w_sum) / std::abs(prob.meas[i]));
  return prob;
}

FitResult solve(const Problem& prob, Eigen::VectorXd theta, const FitOptions& options) {
  const Eigen::Index n_par = theta.size();
  Eigen::VectorXd r = prob.residual(theta);
  double cost = r.squaredNorm();
  double lambda = 1e-3;

  FitResult out;
  for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
    out.iterations = iter;
    const Eigen::MatrixXd J = prob.jacobian(theta);
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;

    bool accepted = false;
    Eigen::VectorXd step = Eigen::VectorXd::Zero(n_par);
    while (lambda < 1e16) {
      Eigen::MatrixXd damped = A;
      for (Eigen::Index j = 0; j < n_par; ++j) damped(j, j) += lambda * std::max(A(j, j), 1e-300);
      step = damped.ldlt().solve(-g);
      const Eigen::VectorXd cand = theta + step;
      const Eigen::VectorXd r_c = prob.residual(cand);
      const double cost_c = r_c.squaredNorm();
      if (std::isfinite(cost_c) && cost_c <= cost) {
        theta = cand;
        r = r_c;
        cost = cost_c;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted || step.lpNorm<Eigen::Infinity>() < options.step_tolerance) {
      // No downhill step exists at working precision: a minimum.
      out.converged = true;
      break;
    }
  }

  const PlantParams p = prob.plant(theta);
  out.params = p;
  out.residual_rms = std::sqrt(cost);
  const Eigen::MatrixXd J = prob.jacobian(theta);
  const double dof = std::max<double>(1.0, static_cast<double>(prob.rows()) - static_cast<double>(n_par));
  const Eigen::MatrixXd cov = (J.transpose() * J).ldlt().solve(Eigen::MatrixXd::Identity(n_par, n_par)) * (cost / dof);
  for (std::size_t j = 0; j < prob.free.size(); ++j) {
    const double v = std::exp(theta[static_cast<Eigen::Index>(j)]);
    out.names.emplace_back(kParamNames[prob.free[j]]);
    out.values.push_back(v);
    out.covariance_diag.push_back(v * v * cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)));
  }
  return out;
}

void require_positive(std::initializer_list<double> values, const char* what) {
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(what);
}

}  // namespace

FitResult fit_blocked(const FrfEstimate& frf, const BlockedInit& init, const FitOptions& options) {
  if (frf.mode != FrfMode::blocked_force_transfer) throw ValidationError("fit_blocked: FRF is not a blocked force transfer");
  require_positive({init.m1, init.b1, init.k, init.b}, "fit_blocked: initial values must be > 0");
  Problem prob = make_problem(frf, options, 8);
  prob.model = [](const PlantParams& p, Complex s) { return eval_blocked(p, s); };
  prob.fixed = PlantParams{init.m1, init.b1, 0.0, init.k, init.b};
  // The transfer is unchanged when m1, b1, k and b are scaled together, so
  // k stays at its initial value and only the ratios are fitted.
  prob.free = {kM1, kB1, kB};
  Eigen::VectorXd theta(3);
  theta << std::log(init.m1), std::log(init.b1), std::log(init.b);
  return solve(prob, theta, options);
}

FitResult fit_full(const FrfEstimate& frf, const BlockedInit& fixed, double init_m2, double compliance,
                   const FitOptions& options) {
  if (frf.mode != FrfMode::end_effector_impedance) throw ValidationError("fit_full: FRF is not an impedance");
  require_positive({fixed.m1, fixed.b1, fixed.k, fixed.b, init_m2}, "fit_full: parameters must be > 0");
  if (!(compliance >= 0.0)) throw ValidationError("fit_full: compliance must be >= 0");
  Problem prob = make_problem(frf, options, 8);
  prob.model = [compliance](const PlantParams& p, Complex s) { return eval_impedance(p, s, compliance); };
  prob.fixed = PlantParams{fixed.m1, fixed.b1, init_m2, fixed.k, fixed.b};
  if (options.fit_scale) {
    prob.free = {kM2, kScale};
    Eigen::VectorXd theta(2);
    theta << std::log(init_m2), 0.0;
    return solve(prob, theta, options);
  }
  prob.free = {kM2};
  Eigen::VectorXd theta(1);
  theta << std::log(init_m2);
  return solve(prob, theta, options);
}

std::optional<double> jacobian_fd_check(const PlantParams& theta, const FrfEstimate& frf, double compliance,
                                        const FitOptions& options) {
  Problem prob = make_problem(frf, options, 1);
  if (frf.mode == FrfMode::blocked_force_transfer) {
    prob.model = [](const PlantParams& p, Complex s) { return eval_blocked(p, s); };
    prob.free = {kM1, kB1, kK, kB};
  } else {
    prob.model = [compliance](const PlantParams& p, Complex s) { return eval_impedance(p, s, compliance); };
    prob.free = {kM1, kB1, kM2, kK, kB};
  }
  prob.fixed = theta;
  Eigen::VectorXd x(static_cast<Eigen::Index>(prob.free.size()));
  double lo = INFINITY, hi = 0.0;
  for (std::size_t j = 0; j < prob.free.size(); ++j) {
    const double v = field(theta, prob.free[j]);
    if (!(v > 0.0)) throw ValidationError("jacobian_fd_check: parameters must be > 0");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    x[static_cast<Eigen::Index>(j)] = std::log(v);
  }
  if (hi / lo > 1e12) return std::nullopt;

  // The reference residual is evaluated in long double: the transmission
  // columns can sit 1e-7 below the largest entry, under the double rounding
  // floor of a 1e-6 central difference.
  using LD = long double;
  using CLD = std::complex<LD>;
  const bool blocked = frf.mode == FrfMode::blocked_force_transfer;
  auto residual_ld = [&](const std::array<LD, kParamCount>& v, std::size_t i) {
    const CLD s(0.0L, static_cast<LD>(prob.s[i].imag()));
    const CLD n = v[kK] + v[kB] * s;
    const CLD den = v[kM1] * s * s + (v[kB1] + v[kB]) * s + v[kK];
    const CLD model = blocked ? n / den
                              : v[kM2] * s + n * (v[kM1] * s + v[kB1]) / den + static_cast<LD>(compliance) / s;
    return static_cast<LD>(prob.sqrt_w[i]) * (model - CLD(prob.meas[i].real(), prob.meas[i].imag()));
  };

  const Eigen::MatrixXd J = prob.jacobian(x);
  constexpr LD h = 1e-6L;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    std::array<LD, kParamCount> vp{}, vm{};
    for (int f = 0; f < kParamCount; ++f) vp[f] = vm[f] = static_cast<LD>(field(theta, f));
    const int fj = prob.free[static_cast<std::size_t>(j)];
    vp[fj] = std::exp(std::log(vp[fj]) + h);
    vm[fj] = std::exp(std::log(vm[fj]) - h);
    const double scale = J.col(j).lpNorm<Eigen::Infinity>();
    if (scale == 0.0) continue;
    double dev = 0.0;
    for (std::size_t i = 0; i < prob.s.size(); ++i) {
      const CLD fd = (residual_ld(vp, i) - residual_ld(vm, i)) / (2.0L * h);
      const auto r = static_cast<Eigen::Index>(2 * i);
      dev = std::max({dev, std::abs(J(r, j) - static_cast<double>(fd.real())),
                      std::abs(J(r + 1, j) - static_cast<double>(fd.imag()))});
    }
    worst = std::max(worst, dev / scale);
  }
  return worst;
}

std::string format_fit_report(const FitResult& fit, const std::string& model) {
  std::ostringstream os;
  os << "model = " << model << '\n';
  for (std::size_t j = 0; j < fit.names.size(); ++j) os << fit.names[j] << " = " << format_double(fit.values[j]) << '\n';
  for (std::size_t j = 0; j < fit.names.size(); ++j)
    os << "var_" << fit.names[j] << " = " << format_double(fit.covariance_diag[j]) << '\n';
  const PlantParams& p = fit.params;
  os << "plant_m1 = " << format_double(p.m1) << '\n' << "plant_b1 = " << format_double(p.b1) << '\n';
  if (p.m2 > 0.0) os << "plant_m2 = " << format_double(p.m2) << '\n';
  os << "plant_k = " << format_double(p.k) << '\n' << "plant_b = " << format_double(p.b) << '\n';
  os << "residual_rms = " << format_double(fit.residual_rms) << '\n';
  os << "iterations = " << fit.iterations << '\n';
  os << "converged = " << (fit.converged ? "true" : "false") << '\n';
  return os.str();
}

std::string format_frf_csv(const FrfEstimate& frf) {
  std::ostringstream os;
  os << "freq_hz,re,im,coherence\n";
  const FrequencyResponse& fr = frf.base;
  for (std::size_t i = 0; i < fr.size(); ++i) {
    os << format_double(fr.omega[i] / kTwoPi) << ',';
    if (frf.usable(i)) os << format_double(fr.value[i].real()) << ',' << format_double(fr.value[i].imag());
    else os << ',';
    os << ',' << format_double((*fr.coherence)[i]) << '\n';
  }
  return os.str();
}

}  // namespace hapbench
