#include "jpscdf/bandwidth.hpp"

#include <cmath>
#include <stdexcept>

#include "jpscdf/moments.hpp"
#include "jpscdf/special_functions.hpp"

namespace jps {

double ReferenceFit::scale() const {
  return (family == ReferenceFamily::ExponentialRef) ? mean : std::sqrt(variance);
}

ReferenceFit fit_reference(const std::vector<double>& xs, SupportKind support) {
  if (xs.size() < 2) throw std::invalid_argument("fit_reference: need at least two observations");
  double sum = 0.0;
  for (const double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (support == SupportKind::PositiveHalfLine) {
    for (const double x : xs) {
      if (x < 0.0) {
        throw std::invalid_argument("fit_reference: negative observation under positive support");
      }
    }
    if (!(mean > 0.0)) throw std::invalid_argument("fit_reference: sample mean must be positive");
    return {ReferenceFamily::ExponentialRef, mean, mean * mean};
  }
  double ss = 0.0;
  for (const double x : xs) ss += (x - mean) * (x - mean);
  const double variance = ss / static_cast<double>(xs.size());  // divisor n
  if (!(variance > 0.0)) throw std::invalid_argument("fit_reference: degenerate sample (S^2 = 0)");
  return {ReferenceFamily::NormalRef, mean, variance};
}

DensityAndSlope ref_density_and_slope(const ReferenceFit& fit, double t) {
  if (fit.family == ReferenceFamily::ExponentialRef) {
    if (t < 0.0) return {0.0, 0.0};
    const double f = std::exp(-t / fit.mean) / fit.mean;
    return {f, -f / fit.mean};
  }
  const double sd = std::sqrt(fit.variance);
  const double z = (t - fit.mean) / sd;
  const double f = normal_pdf(z) / sd;
  return {f, -z / sd * f};
}

BandwidthResult h_srs(long n, const KernelSpec& kernel, double f_hat, double fprime_hat,
                      double scale, double cap) {
  if (n < 1) throw std::invalid_argument("h_srs: n must be >= 1");
  if (!(f_hat > 0.0)) throw std::invalid_argument("h_srs: f(t) must be positive");
  if (!(scale > 0.0)) throw std::invalid_argument("h_srs: scale must be positive");
  BandwidthResult out;
  double slope = std::fabs(fprime_hat);
  const double slope_floor = 1e-3 * f_hat / scale;
  if (slope < slope_floor) {
    slope = slope_floor;
    out.slope_clamped = true;
  }
  const double numerator = f_hat * (kernel.a - kernel.int_k2);
  const double denominator = static_cast<double>(n) * slope * slope * kernel.int_x2k *
                             kernel.int_x2k;
  out.h = std::cbrt(numerator / denominator);
  if (cap > 0.0 && out.h > cap) {
    out.h = cap;
    out.capped = true;
  }
  return out;
}

BandwidthResult h_jps(long n, int set_size, const KernelSpec& kernel, double f_hat,
                      double fprime_hat, double scale, double cap) {
  if (set_size < 2) throw std::invalid_argument("h_jps: H must be >= 2");
  BandwidthResult out = h_srs(n, kernel, f_hat, fprime_hat, scale, /*cap=*/0.0);
  out.h *= std::cbrt(weight_moments(n, set_size).nh_e_w2j());
  if (cap > 0.0 && out.h > cap) {
    out.h = cap;
    out.capped = true;
  }
  return out;
}

BandwidthResult plugin_bandwidth(const ReferenceFit& fit, double t, long n, int set_size,
                                 const KernelSpec& kernel, double cap) {
  const DensityAndSlope ds = ref_density_and_slope(fit, t);
  // Off-support evaluation point: fall back to the reference density at the
  // nearest point of positive density (exponential at t < 0 evaluates at 0).
  double f = ds.density, fp = ds.slope;
  if (!(f > 0.0)) {
    f = 1.0 / fit.mean;
    fp = -f / fit.mean;
  }
  return (set_size >= 2) ? h_jps(n, set_size, kernel, f, fp, fit.scale(), cap)
                         : h_srs(n, kernel, f, fp, fit.scale(), cap);
}

}  // namespace jps
