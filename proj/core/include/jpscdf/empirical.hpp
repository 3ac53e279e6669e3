#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "jpscdf/estimators.hpp"
#include "jpscdf/kernels.hpp"
#include "jpscdf/rng.hpp"

namespace jps {

// The finite study population: body fat percentage plus the three
// concomitant measurements used for judgment ranking.
struct PopulationRecord {
  double body_fat = 0.0;  // percent
  double abdomen = 0.0;   // cm
  double chest = 0.0;     // cm
  double weight = 0.0;    // lbs
};

struct FinitePopulation {
  std::vector<PopulationRecord> records;

  std::size_t size() const { return records.size(); }
};

// Thrown with a line number on malformed input.
class DataFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Loads the 252-record body fat population. Two layouts are accepted:
//   - CSV with a header naming at least bodyfat, abdomen, chest, weight;
//   - the canonical 19-column whitespace table (case, body fat by the two
//     standard equations, density, age, weight, height, adiposity, fat-free
//     weight, then ten circumferences), from which columns 3 (body fat),
//     6 (weight), 11 (chest) and 12 (abdomen) are taken.
// Any record count other than 252 is an error.
FinitePopulation load_bodyfat(const std::string& path);

// Finite-population EDF and its right-continuous inverse (the smallest
// population value x with F(x) >= p).
double population_cdf(const FinitePopulation& pop, double t);
double population_quantile(const FinitePopulation& pop, double p);

enum class Concomitant { BodyFat, Abdomen, Chest, Weight };

const std::string& concomitant_name(Concomitant c);
Concomitant concomitant_from_name(const std::string& name);

// JPS resampling from the finite population: every measured unit and its
// H-1 comparison units are drawn uniformly with replacement; the judgment
// rank is the measured unit's position by ascending concomitant value,
// ties broken uniformly at random. Ranking by BodyFat reproduces perfect
// ranking.
JpsSample draw_jps_finite(const FinitePopulation& pop, long n, int set_size,
                          Concomitant concomitant, RandomStream& rng);

struct EmpiricalConfig {
  long n = 50;
  int set_size = 3;
  Concomitant concomitant = Concomitant::BodyFat;
  KernelKind kernel = KernelKind::Epanechnikov;
  std::vector<double> p_list;
  long reps = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct EmpiricalReRow {
  double p = 0.0;
  double t = 0.0;      // population quantile Q_p
  double truth = 0.0;  // F(Q_p) of the finite population
  double mse_srs = 0.0, se_srs = 0.0;
  double mse_jps = 0.0, se_jps = 0.0;
  double re = 0.0;
};

// Relative efficiency of the smoothed CDF estimators at population
// quantiles under with-replacement JPS vs SRS resampling; bandwidths use
// the exponential reference (body fat is non-negative).
std::vector<EmpiricalReRow> empirical_re_table(const FinitePopulation& pop,
                                               const EmpiricalConfig& config);

}  // namespace jps
