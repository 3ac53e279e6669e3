#include "jpscdf/empirical.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "jpscdf/bandwidth.hpp"
#include "jpscdf/moments.hpp"
#include "jpscdf/parallel.hpp"
#include "jpscdf/simulate.hpp"

namespace jps {

namespace {

constexpr std::size_t kPopulationSize = 252;

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  return fields;
}

double parse_field(const std::string& field, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    if (pos != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw DataFormatError("line " + std::to_string(line_no) + ": cannot parse number '" +
                          field + "'");
  }
}

bool is_blank_or_comment(const std::string& line) {
  for (const char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

FinitePopulation parse_csv_with_header(std::istream& in, const std::string& header_line,
                                       std::size_t header_line_no) {
  const std::vector<std::string> header = split_csv(header_line);
  int col_fat = -1, col_abdomen = -1, col_chest = -1, col_weight = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = lower(header[i]);
    if (name == "bodyfat" || name == "body_fat" || name == "siri") col_fat = static_cast<int>(i);
    else if (name == "abdomen") col_abdomen = static_cast<int>(i);
    else if (name == "chest") col_chest = static_cast<int>(i);
    else if (name == "weight") col_weight = static_cast<int>(i);
  }
  if (col_fat < 0 || col_abdomen < 0 || col_chest < 0 || col_weight < 0) {
    throw DataFormatError("line " + std::to_string(header_line_no) +
                          ": header must name bodyfat, abdomen, chest and weight columns");
  }
  FinitePopulation pop;
  std::string line;
  std::size_t line_no = header_line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() < header.size()) {
      throw DataFormatError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, found " +
                            std::to_string(fields.size()));
    }
    PopulationRecord rec;
    rec.body_fat = parse_field(fields[col_fat], line_no);
    rec.abdomen = parse_field(fields[col_abdomen], line_no);
    rec.chest = parse_field(fields[col_chest], line_no);
    rec.weight = parse_field(fields[col_weight], line_no);
    pop.records.push_back(rec);
  }
  return pop;
}

FinitePopulation parse_whitespace_table(std::istream& in, const std::string& first_line,
                                        std::size_t first_line_no) {
  // Canonical 19-column layout; 1-based positions 3, 6, 11, 12.
  FinitePopulation pop;
  std::string line = first_line;
  std::size_t line_no = first_line_no;
  for (;;) {
    if (!is_blank_or_comment(line)) {
      std::istringstream ss(line);
      std::vector<double> fields;
      double v;
      while (ss >> v) fields.push_back(v);
      std::string trailing;
      if (!(ss >> trailing) && !fields.empty()) {
        if (fields.size() < 12) {
          throw DataFormatError("line " + std::to_string(line_no) +
                                ": expected at least 12 whitespace-separated columns, found " +
                                std::to_string(fields.size()));
        }
        PopulationRecord rec;
        rec.body_fat = fields[2];
        rec.weight = fields[5];
        rec.chest = fields[10];
        rec.abdomen = fields[11];
        pop.records.push_back(rec);
      } else if (!trailing.empty()) {
        throw DataFormatError("line " + std::to_string(line_no) + ": non-numeric field '" +
                              trailing + "'");
      }
    }
    if (!std::getline(in, line)) break;
    ++line_no;
  }
  return pop;
}

}  // namespace

FinitePopulation load_bodyfat(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataFormatError("cannot open data file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_blank_or_comment(line)) break;
  }
  if (in.eof() && is_blank_or_comment(line)) throw DataFormatError("empty data file: " + path);

  // A header row containing any alphabetic field selects the CSV layout.
  const bool has_alpha = std::any_of(line.begin(), line.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
  });
  FinitePopulation pop = has_alpha ? parse_csv_with_header(in, line, line_no)
                                   : parse_whitespace_table(in, line, line_no);
  if (pop.size() != kPopulationSize) {
    throw DataFormatError("expected " + std::to_string(kPopulationSize) + " records, found " +
                          std::to_string(pop.size()));
  }
  for (const auto& rec : pop.records) {
    if (!std::isfinite(rec.body_fat)) throw DataFormatError("non-finite body fat value");
  }
  return pop;
}

double population_cdf(const FinitePopulation& pop, double t) {
  if (pop.records.empty()) throw std::invalid_argument("population_cdf: empty population");
  std::size_t count = 0;
  for (const auto& rec : pop.records) count += (rec.body_fat <= t) ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(pop.size());
}

double population_quantile(const FinitePopulation& pop, double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::domain_error("population_quantile: p must lie in (0, 1]");
  }
  std::vector<double> values;
  values.reserve(pop.size());
  for (const auto& rec : pop.records) values.push_back(rec.body_fat);
  std::sort(values.begin(), values.end());
  const std::size_t index =
      static_cast<std::size_t>(std::ceil(p * static_cast<double>(values.size()))) - 1;
  return values[std::min(index, values.size() - 1)];
}

const std::string& concomitant_name(Concomitant c) {
  static const std::string names[] = {"bodyfat", "abdomen", "chest", "weight"};
  return names[static_cast<int>(c)];
}

Concomitant concomitant_from_name(const std::string& name) {
  if (name == "bodyfat") return Concomitant::BodyFat;
  if (name == "abdomen") return Concomitant::Abdomen;
  if (name == "chest") return Concomitant::Chest;
  if (name == "weight") return Concomitant::Weight;
  throw std::invalid_argument("unknown concomitant name: " + name);
}

namespace {

double concomitant_value(const PopulationRecord& rec, Concomitant c) {
  switch (c) {
    case Concomitant::BodyFat: return rec.body_fat;
    case Concomitant::Abdomen: return rec.abdomen;
    case Concomitant::Chest: return rec.chest;
    case Concomitant::Weight: return rec.weight;
  }
  throw std::logic_error("unknown concomitant");
}

}  // namespace

JpsSample draw_jps_finite(const FinitePopulation& pop, long n, int set_size,
                          Concomitant concomitant, RandomStream& rng) {
  if (pop.records.empty()) throw std::invalid_argument("draw_jps_finite: empty population");
  if (n < 1) throw std::invalid_argument("draw_jps_finite: n must be >= 1");
  if (set_size < 2) throw std::invalid_argument("draw_jps_finite: H must be >= 2");
  JpsSample sample;
  sample.set_size = set_size;
  sample.pairs.reserve(static_cast<std::size_t>(n));
  const std::uint64_t pop_size = pop.size();
  std::vector<double> comparison_scores(static_cast<std::size_t>(set_size - 1));
  for (long i = 0; i < n; ++i) {
    const PopulationRecord& measured = pop.records[rng.next_below(pop_size)];
    const double score = concomitant_value(measured, concomitant);
    for (auto& s : comparison_scores) {
      s = concomitant_value(pop.records[rng.next_below(pop_size)], concomitant);
    }
    const int rank = judgment_rank(score, comparison_scores, rng);
    sample.pairs.push_back({measured.body_fat, rank});
  }
  return sample;
}

std::vector<EmpiricalReRow> empirical_re_table(const FinitePopulation& pop,
                                               const EmpiricalConfig& config) {
  if (config.reps < 1) throw std::invalid_argument("empirical_re_table: reps must be >= 1");
  if (config.p_list.empty()) throw std::invalid_argument("empirical_re_table: empty p list");
  const KernelSpec kernel = kernel_spec(config.kernel);
  const std::size_t n_p = config.p_list.size();

  std::vector<EmpiricalReRow> rows(n_p);
  for (std::size_t i = 0; i < n_p; ++i) {
    rows[i].p = config.p_list[i];
    rows[i].t = population_quantile(pop, config.p_list[i]);
    rows[i].truth = population_cdf(pop, rows[i].t);
  }

  const double jps_factor = std::cbrt(weight_moments(config.n, config.set_size).nh_e_w2j());
  const std::uint64_t pop_size = pop.size();

  struct BlockSums {
    std::vector<double> s1_srs, s2_srs, s1_jps, s2_jps;
  };
  constexpr std::size_t kRepsPerBlock = 64;
  const std::size_t reps = static_cast<std::size_t>(config.reps);
  const std::size_t n_blocks = (reps + kRepsPerBlock - 1) / kRepsPerBlock;
  std::vector<BlockSums> blocks(n_blocks);

  run_blocks(reps, kRepsPerBlock, config.threads, [&](std::size_t block, std::size_t begin,
                                                      std::size_t end) {
    BlockSums sums;
    sums.s1_srs.assign(n_p, 0.0);
    sums.s2_srs.assign(n_p, 0.0);
    sums.s1_jps.assign(n_p, 0.0);
    sums.s2_jps.assign(n_p, 0.0);
    for (std::size_t rep = begin; rep < end; ++rep) {
      RandomStream jps_stream(config.seed, rep, 0);
      const JpsSample jps_sample =
          draw_jps_finite(pop, config.n, config.set_size, config.concomitant, jps_stream);

      RandomStream srs_stream(config.seed, rep, 1);
      std::vector<double> srs_xs(static_cast<std::size_t>(config.n));
      for (auto& x : srs_xs) x = pop.records[srs_stream.next_below(pop_size)].body_fat;

      const ReferenceFit srs_fit = fit_reference(srs_xs, SupportKind::PositiveHalfLine);
      const auto [srs_lo, srs_hi] = std::minmax_element(srs_xs.begin(), srs_xs.end());
      const double srs_cap = *srs_hi - *srs_lo;
      const PreparedSrsSample srs(std::move(srs_xs));

      std::vector<double> jps_xs;
      jps_xs.reserve(jps_sample.pairs.size());
      for (const auto& pr : jps_sample.pairs) jps_xs.push_back(pr.x);
      const ReferenceFit jps_fit = fit_reference(jps_xs, SupportKind::PositiveHalfLine);
      const auto [jps_lo, jps_hi] = std::minmax_element(jps_xs.begin(), jps_xs.end());
      const double jps_cap = *jps_hi - *jps_lo;
      const PreparedJpsSample jps(jps_sample);

      for (std::size_t i = 0; i < n_p; ++i) {
        const double t = rows[i].t;
        const double truth = rows[i].truth;

        const BandwidthResult hs =
            plugin_bandwidth(srs_fit, t, config.n, 0, kernel, srs_cap);
        const double err_srs = srs.kdf(kernel, hs.h, t) - truth;
        sums.s1_srs[i] += err_srs * err_srs;
        sums.s2_srs[i] += err_srs * err_srs * err_srs * err_srs;

        BandwidthResult hj = plugin_bandwidth(jps_fit, t, config.n, 0, kernel, /*cap=*/0.0);
        hj.h *= jps_factor;
        if (hj.h > jps_cap) hj.h = jps_cap;
        const double err_jps = jps.kdf(kernel, hj.h, t) - truth;
        sums.s1_jps[i] += err_jps * err_jps;
        sums.s2_jps[i] += err_jps * err_jps * err_jps * err_jps;
      }
    }
    blocks[block] = std::move(sums);
  });

  const double m = static_cast<double>(reps);
  std::vector<double> s1_srs(n_p, 0.0), s2_srs(n_p, 0.0), s1_jps(n_p, 0.0), s2_jps(n_p, 0.0);
  for (const BlockSums& b : blocks) {
    for (std::size_t i = 0; i < n_p; ++i) {
      s1_srs[i] += b.s1_srs[i];
      s2_srs[i] += b.s2_srs[i];
      s1_jps[i] += b.s1_jps[i];
      s2_jps[i] += b.s2_jps[i];
    }
  }
  for (std::size_t i = 0; i < n_p; ++i) {
    rows[i].mse_srs = s1_srs[i] / m;
    rows[i].mse_jps = s1_jps[i] / m;
    if (reps > 1) {
      const double var_srs =
          std::max(0.0, s2_srs[i] / m - rows[i].mse_srs * rows[i].mse_srs) * m / (m - 1.0);
      const double var_jps =
          std::max(0.0, s2_jps[i] / m - rows[i].mse_jps * rows[i].mse_jps) * m / (m - 1.0);
      rows[i].se_srs = std::sqrt(var_srs / m);
      rows[i].se_jps = std::sqrt(var_jps / m);
    }
    rows[i].re = rows[i].mse_srs / rows[i].mse_jps;
  }
  return rows;
}

}  // namespace jps
