#pragma once

#include <string>
#include <vector>

#include "jpscdf/rng.hpp"

namespace jps {

enum class DistKind { StdNormal, StudentT5, StdLaplace, Exp1, GammaHalf, GammaTwo };

enum class SupportKind { RealLine, PositiveHalfLine };

// An analytic parent distribution with closed-form pdf/cdf and an
// inverse-CDF quantile. Sampling is inverse-CDF on open-interval uniforms,
// so every draw consumes exactly one value of the stream.
class ParentDistribution {
 public:
  explicit ParentDistribution(DistKind kind) : kind_(kind) {}

  DistKind kind() const { return kind_; }
  SupportKind support() const;
  double mean() const;
  double variance() const;

  double pdf(double x) const;
  double cdf(double x) const;
  double quantile(double p) const;  // rejects p outside (0,1)

  double sample(RandomStream& rng) const { return quantile(rng.next_open01()); }
  std::vector<double> sample(std::size_t n, RandomStream& rng) const;

 private:
  DistKind kind_;
};

// CDF of the r-th order statistic of a size-H sample, evaluated through the
// parent CDF: the distribution of a perfectly ranked stratum.
double order_stat_cdf(const ParentDistribution& dist, double t, int r, int set_size);

// Same, parameterized directly by u = F(t).
double order_stat_cdf_at(double u, int r, int set_size);

// CLI names: "normal", "t5", "laplace", "exp1", "gamma05", "gamma2".
const std::string& dist_name(DistKind kind);
DistKind dist_from_name(const std::string& name);

}  // namespace jps
