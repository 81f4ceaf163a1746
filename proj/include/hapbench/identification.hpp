#pragma once

// Empirical FRF estimation (Welch / H1) and complex least-squares fitting of
// the blocked and full device models.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hapbench/device_model.hpp"
#include "hapbench/lti.hpp"

namespace hapbench {

enum class FrfMode { blocked_force_transfer, end_effector_impedance };
enum class Window { hann, rectangular };

struct FrfEstimate {
  FrequencyResponse base;  // coherence always attached
  FrfMode mode = FrfMode::blocked_force_transfer;
  double coherence_threshold = 0.9;

  bool usable(std::size_t i) const { return (*base.coherence)[i] >= coherence_threshold; }
};

/// Welch-averaged H1 estimate with periodic Hann windows.
///
/// Bins k = 1 .. seg_len/2 are returned (DC excluded). H1 = S_uy / S_uu with
/// S_uy = sum conj(U) Y, coherence = |S_uy|^2 / (S_uu S_yy). In
/// end_effector_impedance mode u is the hand force and y the lever velocity,
/// and the returned value is 1 / H1. Bins without input power get zero
/// value and zero coherence.
///
/// Window::rectangular with seg_len equal to the whole record gives the plain
/// ratio of record DFTs. For a run that starts at rest and has decayed by the
/// end of the record this is exact for a linear system, where Hann windowing
/// of a swept sine smears the estimate.
/// Throws ValidationError on bad arguments and DegenerateInput when the
/// input has no power at all.
FrfEstimate estimate_frf(std::span<const double> u, std::span<const double> y, double fs, std::size_t seg_len,
                         double overlap, FrfMode mode, double coherence_threshold = 0.9,
                         Window window = Window::hann);

/// Wraps a model or externally measured response with unit coherence.
FrfEstimate make_frf(FrequencyResponse fr, FrfMode mode);

struct FitOptions {
  double f_lo_hz = 0.1;
  double f_hi_hz = 500.0;
  std::size_t max_iterations = 200;
  double step_tolerance = 1e-9;                 // relative parameter step
  std::optional<std::vector<double>> weights;   // per-bin, multiplies the coherence mask
  bool fit_scale = true;                        // fit_full: also fit the blocked-test scale
};

struct FitResult {
  PlantParams params;                 // fields not fitted keep their fixed value (0 if none)
  std::vector<std::string> names;     // fitted parameter names, in order
  std::vector<double> values;         // fitted values, SI
  std::vector<double> covariance_diag;  // linearized variance of each fitted value
  double residual_rms = 0.0;          // weighted rms of relative complex error
  std::size_t iterations = 0;
  bool converged = false;
};

struct BlockedInit {
  double m1, b1, k, b;
};

/// Fits the blocked-output model. The force transfer (k + b s) /
/// (m1 s^2 + (b1 + b) s + k) is invariant under a common scaling of
/// (m1, b1, k, b), so only the ratios are observable: k is held at init.k and
/// m1, b1, b are fitted relative to it. fit_full resolves the scale.
/// Throws DegenerateInput with fewer than 8 usable bins.
FitResult fit_blocked(const FrfEstimate& frf, const BlockedInit& init, const FitOptions& options = {});

/// Fits m2 from an end-effector impedance measured with a known grounding
/// spring of stiffness `compliance` (N/m) attached to the lever. With
/// options.fit_scale the blocked-test parameters are also multiplied by a
/// fitted common factor (reported as "scale"), which the known spring makes
/// observable; without it the fit is one-dimensional in m2.
FitResult fit_full(const FrfEstimate& frf, const BlockedInit& fixed, double init_m2, double compliance,
                   const FitOptions& options = {});

/// Relative deviation between the analytic residual Jacobian and central
/// differences (log-parameter step 1e-6), max over columns of
/// |J_a - J_fd|_inf / |J_a|_inf. Blocked mode checks (m1, b1, k, b); impedance
/// mode checks all five parameters. The difference quotient is evaluated in
/// long double so that weakly sensitive columns stay above rounding. Returns nullopt when the parameter
/// spread exceeds 1e12, where double precision cannot resolve the check.
std::optional<double> jacobian_fd_check(const PlantParams& theta, const FrfEstimate& frf, double compliance = 0.0,
                                        const FitOptions& options = {});

/// Plain-text report, one `key = value` per line: fitted values, their
/// variances, then the resulting plant (plant_*; m2 omitted for blocked fits).
std::string format_fit_report(const FitResult& fit, const std::string& model);

/// `freq_hz,re,im,coherence`; unusable bins leave re and im empty.
std::string format_frf_csv(const FrfEstimate& frf);

}  // namespace hapbench
