#include "jpscdf/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jpscdf/csv.hpp"

namespace jps {

namespace {

void check_bandwidth(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("kernel estimator: bandwidth must be positive");
}

// Mean of K((t - x)/h) over a sorted vector. Observations at or below
// t - a h contribute exactly 1, those at or above t + a h contribute 0;
// only the support window is evaluated.
double kdf_sorted(const std::vector<double>& xs, const KernelSpec& kernel, double h, double t) {
  const double lo = t - kernel.a * h;
  const double hi = t + kernel.a * h;
  const auto first = std::lower_bound(xs.begin(), xs.end(), lo);
  const auto last = std::lower_bound(xs.begin(), xs.end(), hi);
  double sum = static_cast<double>(first - xs.begin());  // all exactly 1
  for (auto it = first; it != last; ++it) sum += kernel_cdf(kernel.kind, (t - *it) / h);
  return sum / static_cast<double>(xs.size());
}

double kpdf_sorted_sum(const std::vector<double>& xs, const KernelSpec& kernel, double h,
                       double t) {
  const double lo = t - kernel.a * h;
  const double hi = t + kernel.a * h;
  const auto first = std::lower_bound(xs.begin(), xs.end(), lo);
  const auto last = std::upper_bound(xs.begin(), xs.end(), hi);
  double sum = 0.0;
  for (auto it = first; it != last; ++it) sum += kernel_pdf(kernel.kind, (t - *it) / h);
  return sum;
}

double edf_sorted(const std::vector<double>& xs, double t) {
  const auto last = std::upper_bound(xs.begin(), xs.end(), t);
  return static_cast<double>(last - xs.begin()) / static_cast<double>(xs.size());
}

}  // namespace

void JpsSample::validate() const {
  if (set_size < 2) throw std::invalid_argument("JpsSample: set size H must be >= 2");
  if (pairs.empty()) throw std::invalid_argument("JpsSample: sample must be nonempty");
  for (const auto& pr : pairs) {
    if (pr.rank < 1 || pr.rank > set_size) {
      throw std::invalid_argument("JpsSample: rank outside {1..H}");
    }
    if (!std::isfinite(pr.x)) throw std::invalid_argument("JpsSample: non-finite observation");
  }
}

PostStrata post_strata(const JpsSample& sample) {
  sample.validate();
  PostStrata strata;
  strata.counts.assign(sample.set_size, 0);
  for (const auto& pr : sample.pairs) ++strata.counts[pr.rank - 1];
  for (const auto count : strata.counts) strata.nonempty += (count > 0) ? 1 : 0;
  strata.weights.resize(sample.set_size);
  strata.inv_counts.resize(sample.set_size);
  for (int r = 0; r < sample.set_size; ++r) {
    const bool occupied = strata.counts[r] > 0;
    strata.weights[r] = occupied ? 1.0 / strata.nonempty : 0.0;
    strata.inv_counts[r] = occupied ? 1.0 / static_cast<double>(strata.counts[r]) : 0.0;
  }
  return strata;
}

double edf_srs(const std::vector<double>& xs, double t) {
  if (xs.empty()) throw std::invalid_argument("edf_srs: empty sample");
  std::size_t count = 0;
  for (const double x : xs) count += (x <= t) ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(xs.size());
}

double kdf_srs(const std::vector<double>& xs, const KernelSpec& kernel, double h, double t) {
  if (xs.empty()) throw std::invalid_argument("kdf_srs: empty sample");
  check_bandwidth(h);
  double sum = 0.0;
  for (const double x : xs) sum += kernel_cdf(kernel.kind, (t - x) / h);
  return sum / static_cast<double>(xs.size());
}

PreparedJpsSample::PreparedJpsSample(const JpsSample& sample)
    : strata_(post_strata(sample)), set_size_(sample.set_size), n_(sample.pairs.size()) {
  sorted_by_stratum_.resize(sample.set_size);
  for (int r = 0; r < sample.set_size; ++r) {
    sorted_by_stratum_[r].reserve(static_cast<std::size_t>(strata_.counts[r]));
  }
  for (const auto& pr : sample.pairs) sorted_by_stratum_[pr.rank - 1].push_back(pr.x);
  for (auto& xs : sorted_by_stratum_) std::sort(xs.begin(), xs.end());
}

// Averaging the nonempty strata and dividing once by d_n keeps the all-below
// and all-above cases exactly 0 and exactly 1.
double PreparedJpsSample::edf(double t) const {
  double sum = 0.0;
  for (const auto& xs : sorted_by_stratum_) {
    if (!xs.empty()) sum += edf_sorted(xs, t);
  }
  return sum / strata_.nonempty;
}

double PreparedJpsSample::kdf(const KernelSpec& kernel, double h, double t) const {
  check_bandwidth(h);
  double sum = 0.0;
  for (const auto& xs : sorted_by_stratum_) {
    if (!xs.empty()) sum += kdf_sorted(xs, kernel, h, t);
  }
  return sum / strata_.nonempty;
}

double PreparedJpsSample::kpdf(const KernelSpec& kernel, double h, double t) const {
  check_bandwidth(h);
  double sum = 0.0;
  for (const auto& xs : sorted_by_stratum_) {
    if (!xs.empty()) {
      sum += kpdf_sorted_sum(xs, kernel, h, t) / static_cast<double>(xs.size());
    }
  }
  return sum / (strata_.nonempty * h);
}

double edf_jps(const JpsSample& sample, double t) { return PreparedJpsSample(sample).edf(t); }

double kdf_jps(const JpsSample& sample, const KernelSpec& kernel, double h, double t) {
  return PreparedJpsSample(sample).kdf(kernel, h, t);
}

double kpdf_jps(const JpsSample& sample, const KernelSpec& kernel, double h, double t) {
  return PreparedJpsSample(sample).kpdf(kernel, h, t);
}

PreparedSrsSample::PreparedSrsSample(std::vector<double> xs) : sorted_(std::move(xs)) {
  if (sorted_.empty()) throw std::invalid_argument("PreparedSrsSample: empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double PreparedSrsSample::edf(double t) const { return edf_sorted(sorted_, t); }

double PreparedSrsSample::kdf(const KernelSpec& kernel, double h, double t) const {
  check_bandwidth(h);
  return kdf_sorted(sorted_, kernel, h, t);
}

const std::string& estimator_tag_name(EstimatorTag tag) {
  static const std::string names[] = {"edf_srs", "kdf_srs", "edf_jps", "kdf_jps"};
  return names[static_cast<int>(tag)];
}

void write_csv(CsvWriter& writer, const CdfEstimate& estimate) {
  if (estimate.values.size() != estimate.eval_points.size() ||
      (!estimate.bandwidths.empty() &&
       estimate.bandwidths.size() != estimate.eval_points.size())) {
    throw std::invalid_argument("write_csv: mismatched CdfEstimate columns");
  }
  writer.header({"t", "value", "estimator_tag", "h", "n", "H", "seed"});
  const std::string n_field = std::to_string(estimate.n);
  const std::string h_field =
      (estimate.set_size > 0) ? std::to_string(estimate.set_size) : std::string();
  const std::string seed_field = estimate.seed ? std::to_string(*estimate.seed) : std::string();
  for (std::size_t i = 0; i < estimate.eval_points.size(); ++i) {
    writer.row({format_double(estimate.eval_points[i]), format_double(estimate.values[i]),
                estimator_tag_name(estimate.tag),
                estimate.bandwidths.empty() ? std::string()
                                            : format_double(estimate.bandwidths[i]),
                n_field, h_field, seed_field});
  }
}

}  // namespace jps
