#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jpscdf/kernels.hpp"

namespace jps {

// A judgment post stratified sample: n measured values, each tagged with a
// judgment rank in {1..H}. Pairs are exchangeable; no ordering is assumed.
struct JpsSample {
  struct Pair {
    double x;
    int rank;
  };
  std::vector<Pair> pairs;
  int set_size = 0;  // H >= 2

  void validate() const;  // throws std::invalid_argument on violation
};

// Per-sample post-strata bookkeeping: counts N_r, weights W_r, inverse
// counts J_r and the number of nonempty strata d_n.
struct PostStrata {
  std::vector<std::int64_t> counts;  // N_r, one per rank
  std::vector<double> weights;       // W_r = 1{N_r>0}/d_n
  std::vector<double> inv_counts;    // J_r = 1/N_r if N_r>0 else 0
  int nonempty = 0;                  // d_n
};

PostStrata post_strata(const JpsSample& sample);

// SRS estimators over plain observation vectors.
double edf_srs(const std::vector<double>& xs, double t);
double kdf_srs(const std::vector<double>& xs, const KernelSpec& kernel, double h, double t);

// JPS estimators. The *_jps free functions are convenience wrappers that
// stratify on every call; PreparedJpsSample amortizes the sort for
// repeated evaluation (immutable, safe to share across workers).
double edf_jps(const JpsSample& sample, double t);
double kdf_jps(const JpsSample& sample, const KernelSpec& kernel, double h, double t);
double kpdf_jps(const JpsSample& sample, const KernelSpec& kernel, double h, double t);

class PreparedJpsSample {
 public:
  explicit PreparedJpsSample(const JpsSample& sample);

  double edf(double t) const;
  double kdf(const KernelSpec& kernel, double h, double t) const;
  double kpdf(const KernelSpec& kernel, double h, double t) const;

  const PostStrata& strata() const { return strata_; }
  int set_size() const { return set_size_; }
  std::size_t size() const { return n_; }

 private:
  std::vector<std::vector<double>> sorted_by_stratum_;
  PostStrata strata_;
  int set_size_ = 0;
  std::size_t n_ = 0;
};

// Sorted-vector counterpart for the SRS estimators, same amortization.
class PreparedSrsSample {
 public:
  explicit PreparedSrsSample(std::vector<double> xs);

  double edf(double t) const;
  double kdf(const KernelSpec& kernel, double h, double t) const;

  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

enum class EstimatorTag { EdfSrs, KdfSrs, EdfJps, KdfJps };

const std::string& estimator_tag_name(EstimatorTag tag);

// Evaluated CDF estimate on a grid, ready for CSV serialization.
struct CdfEstimate {
  std::vector<double> eval_points;
  std::vector<double> values;
  std::vector<double> bandwidths;  // per-point h; empty for EDF estimators
  EstimatorTag tag = EstimatorTag::EdfSrs;
  std::size_t n = 0;
  int set_size = 0;                // 0 for SRS
  std::optional<std::uint64_t> seed;
};

class CsvWriter;

// Pinned serialization: columns t,value,estimator_tag,h,n,H,seed.
void write_csv(CsvWriter& writer, const CdfEstimate& estimate);

}  // namespace jps
