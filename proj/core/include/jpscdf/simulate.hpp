#pragma once

#include <cstdint>
#include <vector>

#include "jpscdf/distributions.hpp"
#include "jpscdf/estimators.hpp"
#include "jpscdf/kernels.hpp"
#include "jpscdf/rng.hpp"

namespace jps {

// Linear ranking-error model: units are ranked by Y = rho (X - mu)/sigma +
// sqrt(1 - rho^2) Z with Z standard normal. rho = 1 ranks by X itself and
// consumes no noise draws.
struct RankingModel {
  double rho = 1.0;

  void validate() const;
};

// Rank of a unit's ranking score within its comparison set (ascending):
// 1 + #{smaller scores}, ties broken uniformly at random. A tie consumes a
// stream draw; under a continuous model that has probability zero.
int judgment_rank(double score, const std::vector<double>& comparison_scores,
                  RandomStream& rng);

// Draws a JPS sample: each of the n measured units is ranked within a fresh
// comparison set of size H. Draw order per unit is the measured value, its
// H-1 comparison values, then (for rho < 1) the noise values in the same
// order. Rank ties are broken uniformly at random.
JpsSample draw_jps(const ParentDistribution& dist, long n, int set_size,
                   const RankingModel& model, RandomStream& rng);

struct ReCurveConfig {
  DistKind dist = DistKind::StdNormal;
  long n = 50;
  int set_size = 3;
  double rho = 1.0;
  KernelKind kernel = KernelKind::Epanechnikov;
  std::vector<double> p_grid;
  long reps = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  // Reuse the JPS measured values as the SRS sample (common random numbers).
  bool couple_arms = false;
  // Harness diagnostic: evaluate the SRS estimator for both arms, so the
  // resulting RE must be identically one.
  bool identical_arms_self_test = false;
};

// Monte Carlo relative-efficiency curve: per grid probability p, the MSE of
// the smoothed CDF estimators at the parent quantile Q_p under both designs,
// their standard errors, and RE = mse_srs / mse_jps.
struct ReCurve {
  ReCurveConfig config;
  std::vector<double> p_grid;
  std::vector<double> mse_srs, se_srs;
  std::vector<double> mse_jps, se_jps;
  std::vector<double> re;
  // Bandwidth selection events, summed over replications and grid points.
  long slope_clamp_events = 0;
  long cap_events = 0;
};

ReCurve re_curve(const ReCurveConfig& config);

// Standard error of the mean of per-replication squared errors.
double mc_standard_error(const std::vector<double>& per_rep_squared_errors);

// Default grid {0.01, 0.02, ..., 0.99}.
std::vector<double> default_p_grid();

}  // namespace jps
