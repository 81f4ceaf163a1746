#include "hapbench/lti.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hapbench/errors.hpp"

namespace hapbench {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("Polynomial: empty coefficient list");
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Complex Polynomial::operator()(Complex s) const noexcept {
  Complex acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * s + coeffs_[i];
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double c, const Polynomial& p) {
  std::vector<double> out = p.coeffs_;
  for (double& v : out) v *= c;
  return Polynomial(std::move(out));
}

Complex poly_eval(const Polynomial& p, Complex s) noexcept { return p(s); }

RationalTF::RationalTF(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("RationalTF: zero denominator");
}

Complex tf_eval(const RationalTF& tf, double omega) {
  const Complex s{0.0, omega};
  const Complex d = tf.den()(s);
  if (std::abs(d) < 1e-300) throw PoleOnGrid("transfer function pole at omega = " + std::to_string(omega));
  return tf.num()(s) / d;
}

std::vector<double> freq_grid(double f_min_hz, double f_max_hz, std::size_t n_points, Spacing spacing) {
  if (!(f_min_hz > 0.0) || !(f_max_hz > f_min_hz) || !std::isfinite(f_max_hz))
    throw InvalidBand("frequency band must satisfy 0 < f_min < f_max");
  if (n_points < 2) throw InvalidBand("frequency grid needs at least 2 points");

  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double lo = two_pi * f_min_hz;
  const double hi = two_pi * f_max_hz;
  std::vector<double> grid(n_points);
  const double last = static_cast<double>(n_points - 1);
  if (spacing == Spacing::log) {
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    for (std::size_t i = 0; i < n_points; ++i)
      grid[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / last);
  } else {
    for (std::size_t i = 0; i < n_points; ++i) grid[i] = lo + (hi - lo) * static_cast<double>(i) / last;
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

void FrequencyResponse::validate() const {
  if (omega.size() != value.size()) throw std::invalid_argument("FrequencyResponse: length mismatch");
  if (coherence && coherence->size() != omega.size())
    throw std::invalid_argument("FrequencyResponse: coherence length mismatch");
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!(omega[i] > 0.0)) throw std::invalid_argument("FrequencyResponse: omega must be > 0");
    if (i > 0 && !(omega[i] > omega[i - 1]))
      throw std::invalid_argument("FrequencyResponse: omega must be strictly increasing");
  }
}

FrequencyResponse frequency_response(const RationalTF& tf, std::span<const double> grid) {
  FrequencyResponse fr;
  fr.omega.assign(grid.begin(), grid.end());
  fr.value.reserve(grid.size());
  for (double w : grid) fr.value.push_back(tf_eval(tf, w));
  fr.validate();
  return fr;
}

namespace {

// Vertex abscissa of the parabola through three points.
double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2, double* y_vertex) {
  const double d10 = x1 - x0;
  const double d12 = x1 - x2;
  const double num = d10 * d10 * (y1 - y2) - d12 * d12 * (y1 - y0);
  const double den = d10 * (y1 - y2) - d12 * (y1 - y0);
  if (den == 0.0 || !std::isfinite(num / den)) {
    *y_vertex = y1;
    return x1;
  }
  double xv = x1 - 0.5 * num / den;
  xv = std::clamp(xv, x0, x2);
  // Lagrange form evaluated at the vertex.
  const double l0 = (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2));
  const double l1 = (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2));
  const double l2 = (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1));
  *y_vertex = l0 * y0 + l1 * y1 + l2 * y2;
  return xv;
}

}  // namespace

Extremum find_extremum(const FrequencyResponse& fr, ExtremumKind kind, double band_lo, double band_hi) {
  fr.validate();
  const std::size_t n = fr.size();
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(fr.value[i]);

  std::optional<std::size_t> best;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (fr.omega[i - 1] < band_lo || fr.omega[i + 1] > band_hi) continue;
    const bool is_ext = kind == ExtremumKind::min ? (mag[i] < mag[i - 1] && mag[i] < mag[i + 1])
                                                  : (mag[i] > mag[i - 1] && mag[i] > mag[i + 1]);
    if (!is_ext) continue;
    if (!best || (kind == ExtremumKind::min ? mag[i] < mag[*best] : mag[i] > mag[*best])) best = i;
  }
  if (!best) throw NoInteriorExtremum("|Z| has no interior local extremum in the requested band");

  const std::size_t i = *best;
  auto transform = [kind](double m) { return kind == ExtremumKind::min ? m * m : 1.0 / (m * m); };
  double yv = 0.0;
  const double xv = parabola_vertex(std::log(fr.omega[i - 1]), transform(mag[i - 1]), std::log(fr.omega[i]),
                                    transform(mag[i]), std::log(fr.omega[i + 1]), transform(mag[i + 1]), &yv);
  double m = mag[i];
  if (yv > 0.0 && std::isfinite(yv)) m = kind == ExtremumKind::min ? std::sqrt(yv) : 1.0 / std::sqrt(yv);
  return Extremum{std::exp(xv), m};
}

}  // namespace hapbench
