#pragma once

#include <vector>

#include "jpscdf/distributions.hpp"
#include "jpscdf/kernels.hpp"

namespace jps {

enum class ReferenceFamily { ExponentialRef, NormalRef };

// Reference distribution fitted to a sample for plug-in bandwidth selection:
// exponential with the sample mean on positive support, normal with the
// sample mean and variance (divisor n) on the real line.
struct ReferenceFit {
  ReferenceFamily family;
  double mean = 0.0;
  double variance = 0.0;  // only meaningful for NormalRef

  // Scale used by the slope clamp: X-bar for the exponential, S for the normal.
  double scale() const;
};

ReferenceFit fit_reference(const std::vector<double>& xs, SupportKind support);

struct DensityAndSlope {
  double density = 0.0;
  double slope = 0.0;
};

// Analytic f(t) and f'(t) of the fitted reference.
DensityAndSlope ref_density_and_slope(const ReferenceFit& fit, double t);

struct BandwidthResult {
  double h = 0.0;
  bool slope_clamped = false;  // |f'(t)| hit the lower clamp
  bool capped = false;         // h hit the cap h_max
};

// Plug-in optimal bandwidth for the smoothed CDF estimator from an SRS
// sample of size n:
//   h = ( f(t) (a - int K^2) / (n (f'(t) int x^2 k)^2) )^(1/3).
// The slope is clamped from below at 1e-3 f(t)/scale to keep the formula
// defined where f'(t) crosses zero, and the result is capped at cap
// (pass cap <= 0 to disable; callers use the sample range).
BandwidthResult h_srs(long n, const KernelSpec& kernel, double f_hat, double fprime_hat,
                      double scale, double cap);

// JPS counterpart: h_srs scaled by (n H E(W1^2 J1))^(1/3).
BandwidthResult h_jps(long n, int set_size, const KernelSpec& kernel, double f_hat,
                      double fprime_hat, double scale, double cap);

// Convenience: fit-driven bandwidth at evaluation point t. set_size == 0
// selects the SRS formula.
BandwidthResult plugin_bandwidth(const ReferenceFit& fit, double t, long n, int set_size,
                                 const KernelSpec& kernel, double cap);

}  // namespace jps
