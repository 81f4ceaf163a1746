#pragma once

// Polynomials and rational transfer functions in the Laplace variable,
// evaluated on the imaginary axis.

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace hapbench {

using Complex = std::complex<double>;

/// Real polynomial stored in ascending degree order: coeffs()[i] multiplies
/// s^i. Appending a coefficient raises the degree without reindexing.
/// Trailing zeros are trimmed on construction, so the leading coefficient is
/// nonzero unless the polynomial is the zero polynomial {0}.
class Polynomial {
 public:
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial zero() { return Polynomial({0.0}); }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t i) const { return coeffs_.at(i); }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

  /// Horner evaluation.
  Complex operator()(Complex s) const noexcept;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double c, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

Complex poly_eval(const Polynomial& p, Complex s) noexcept;

class RationalTF {
 public:
  /// Throws std::invalid_argument when den is the zero polynomial.
  RationalTF(Polynomial num, Polynomial den);

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }

  /// num(s)/den(s) at an arbitrary complex point, no pole check.
  Complex operator()(Complex s) const noexcept { return num_(s) / den_(s); }

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Evaluates tf at s = j*omega. Throws PoleOnGrid when |den(j*omega)| < 1e-300.
Complex tf_eval(const RationalTF& tf, double omega);

enum class Spacing { log, linear };

/// Frequency grid in rad/s between f_min and f_max (Hz), endpoints exact.
/// Throws InvalidBand unless 0 < f_min < f_max and n_points >= 2.
std::vector<double> freq_grid(double f_min_hz, double f_max_hz, std::size_t n_points,
                              Spacing spacing = Spacing::log);

struct FrequencyResponse {
  std::vector<double> omega;   // rad/s, strictly increasing, > 0
  std::vector<Complex> value;  // complex samples, same length
  std::optional<std::vector<double>> coherence;

  std::size_t size() const noexcept { return omega.size(); }
  /// Throws std::invalid_argument on length mismatch or a bad grid.
  void validate() const;
};

FrequencyResponse frequency_response(const RationalTF& tf, std::span<const double> grid);

enum class ExtremumKind { min, max };

struct Extremum {
  double omega;
  double magnitude;
};

/// Most extreme strict interior local extremum of |value| with omega inside
/// [band_lo, band_hi]. The winning sample and both neighbours must lie in
/// the band. The location is refined by a parabola through the three
/// bracketing samples in log(omega): on |Z|^2 for a minimum and on |Z|^-2 for
/// a maximum, both of which are locally quadratic for second-order
/// resonances even when the dip reaches zero.
/// Throws NoInteriorExtremum when |value| has no such extremum in the band.
Extremum find_extremum(const FrequencyResponse& fr, ExtremumKind kind, double band_lo,
                       double band_hi);

inline Extremum find_extremum(const FrequencyResponse& fr, ExtremumKind kind) {
  return find_extremum(fr, kind, fr.omega.front(), fr.omega.back());
}

}  // namespace hapbench
