// jpscdf: CDF estimation under judgment post stratification.
//
// Subcommands: estimate, moments, simulate, empirical, kernels. Every output
// CSV embeds the run configuration as '#' header lines so any artifact can
// be regenerated; given the same seed, outputs are byte-identical across
// runs and worker counts.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jpscdf/bandwidth.hpp"
#include "jpscdf/csv.hpp"
#include "jpscdf/distributions.hpp"
#include "jpscdf/empirical.hpp"
#include "jpscdf/estimators.hpp"
#include "jpscdf/kernels.hpp"
#include "jpscdf/moments.hpp"
#include "jpscdf/parallel.hpp"
#include "jpscdf/simulate.hpp"
#include "jpscdf/svg.hpp"
#include "jpscdf/version.hpp"

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitBadFlags = 3;

class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned resolve_threads(unsigned flag_value) {
  // JPS_CDF_THREADS overrides the flag.
  if (const char* env = std::getenv("JPS_CDF_THREADS"); env != nullptr && env[0] != '\0') {
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) throw CLI::ValidationError("JPS_CDF_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  if (flag_value == 0) return jps::default_thread_count();
  return flag_value;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      values.push_back(jps::parse_double(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(what) + ": cannot parse '" + item + "'");
    }
  }
  if (values.empty()) throw CLI::ValidationError(std::string(what) + ": empty list");
  return values;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> values;
  for (const double v : parse_double_list(text, what)) {
    if (v < 1.0 || v != std::floor(v)) {
      throw CLI::ValidationError(std::string(what) + ": expected positive integers");
    }
    values.push_back(static_cast<int>(v));
  }
  return values;
}

struct OutputTarget {
  std::string path;  // empty means stdout

  void write(const std::string& content) const {
    if (path.empty()) {
      std::cout << content;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadInput("cannot open output file: " + path);
    out << content;
  }
};

void write_run_header(jps::CsvWriter& writer, const std::string& command_line, bool stamp,
                      std::optional<std::uint64_t> seed) {
  writer.metadata("tool", std::string("jpscdf ") + jps::kVersion);
  writer.metadata("command", command_line);
  if (seed) writer.metadata("seed", std::to_string(*seed));
  if (stamp) {
    const auto now = std::chrono::system_clock::now();
    writer.metadata("timestamp",
                    std::to_string(std::chrono::duration_cast<std::chrono::seconds>(
                                       now.time_since_epoch())
                                       .count()));
  }
}

// ---------------------------------------------------------------- estimate

struct EstimateOptions {
  std::string input;
  std::string design = "srs";
  std::string estimator = "kdf";
  std::string kernel = "epanechnikov";
  std::string bandwidth = "auto-pointwise";
  std::string grid_spec;
  int grid_count = 101;
  int set_size = 0;
  bool stamp = false;
  OutputTarget out;
};

struct LoadedSample {
  std::vector<double> xs;
  std::vector<int> ranks;  // empty for srs
};

LoadedSample load_sample(const std::string& path, bool expect_ranks) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open input file: " + path);
  LoadedSample sample;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;       // blank line
    if (first[0] == '#') continue;          // comment
    if (std::isalpha(static_cast<unsigned char>(first[0]))) {
      if (line_no == 1) continue;           // header row
      throw BadInput("line " + std::to_string(line_no) + ": unexpected text field");
    }
    double x = 0.0;
    try {
      x = jps::parse_double(first);
    } catch (const std::exception&) {
      throw BadInput("line " + std::to_string(line_no) + ": cannot parse '" + first + "'");
    }
    if (expect_ranks) {
      long rank = 0;
      if (!(fields >> rank)) {
        throw BadInput("line " + std::to_string(line_no) + ": jps design needs x,rank rows");
      }
      sample.ranks.push_back(static_cast<int>(rank));
    }
    sample.xs.push_back(x);
  }
  if (sample.xs.empty()) throw BadInput("input file has no observations: " + path);
  return sample;
}

void run_estimate(const EstimateOptions& opt, const std::string& command_line) {
  const bool jps_design = opt.design == "jps";
  const bool smoothed = opt.estimator == "kdf";
  const LoadedSample loaded = load_sample(opt.input, jps_design);

  jps::JpsSample jps_sample;
  std::optional<jps::PreparedJpsSample> prepared_jps;
  std::optional<jps::PreparedSrsSample> prepared_srs;
  if (jps_design) {
    jps_sample.set_size = opt.set_size;
    for (std::size_t i = 0; i < loaded.xs.size(); ++i) {
      jps_sample.pairs.push_back({loaded.xs[i], loaded.ranks[i]});
    }
    try {
      prepared_jps.emplace(jps_sample);
    } catch (const std::invalid_argument& e) {
      throw BadInput(std::string("invalid jps sample: ") + e.what());
    }
  } else {
    prepared_srs.emplace(loaded.xs);
  }

  const auto [min_it, max_it] = std::minmax_element(loaded.xs.begin(), loaded.xs.end());
  const double range = *max_it - *min_it;
  const long n = static_cast<long>(loaded.xs.size());

  std::vector<double> grid;
  if (!opt.grid_spec.empty()) {
    grid = parse_double_list(opt.grid_spec, "--grid");
  } else {
    const double lo = *min_it - 0.05 * range;
    const double hi = *max_it + 0.05 * range;
    const int count = std::max(2, opt.grid_count);
    grid.resize(count);
    for (int i = 0; i < count; ++i) grid[i] = lo + (hi - lo) * i / (count - 1);
  }

  const jps::KernelSpec kernel = jps::kernel_spec(jps::kernel_from_name(opt.kernel));

  // bandwidth mode
  std::optional<double> fixed_h;
  bool pointwise = false;
  if (opt.bandwidth.rfind("fixed:", 0) == 0) {
    fixed_h = jps::parse_double(opt.bandwidth.substr(6));
    if (!(*fixed_h > 0.0)) throw CLI::ValidationError("--bandwidth fixed value must be > 0");
  } else if (opt.bandwidth == "auto-pointwise") {
    pointwise = true;
  } else if (opt.bandwidth != "auto-global") {
    throw CLI::ValidationError("--bandwidth must be auto-pointwise, auto-global or fixed:<v>");
  }

  std::optional<jps::ReferenceFit> fit;
  if (smoothed && !fixed_h) {
    bool positive = true;
    for (const double x : loaded.xs) positive = positive && x >= 0.0;
    try {
      fit = jps::fit_reference(loaded.xs,
                               positive ? jps::SupportKind::PositiveHalfLine
                                        : jps::SupportKind::RealLine);
    } catch (const std::invalid_argument& e) {
      throw BadInput(std::string("cannot fit bandwidth reference: ") + e.what());
    }
  }

  const int bw_set_size = jps_design ? opt.set_size : 0;
  const auto bandwidth_at = [&](double t) {
    if (fixed_h) return *fixed_h;
    return jps::plugin_bandwidth(*fit, t, n, bw_set_size, kernel, range).h;
  };

  jps::CdfEstimate estimate;
  estimate.tag = jps_design
                     ? (smoothed ? jps::EstimatorTag::KdfJps : jps::EstimatorTag::EdfJps)
                     : (smoothed ? jps::EstimatorTag::KdfSrs : jps::EstimatorTag::EdfSrs);
  estimate.n = loaded.xs.size();
  estimate.set_size = jps_design ? opt.set_size : 0;
  double global_h = 0.0;
  if (smoothed && !pointwise && !fixed_h) {
    // global mode anchors the bandwidth at the sample median
    std::vector<double> sorted = loaded.xs;
    std::sort(sorted.begin(), sorted.end());
    global_h = bandwidth_at(sorted[sorted.size() / 2]);
  }
  for (const double t : grid) {
    estimate.eval_points.push_back(t);
    if (smoothed) {
      const double h = fixed_h ? *fixed_h : (pointwise ? bandwidth_at(t) : global_h);
      estimate.bandwidths.push_back(h);
      estimate.values.push_back(jps_design ? prepared_jps->kdf(kernel, h, t)
                                           : prepared_srs->kdf(kernel, h, t));
    } else {
      estimate.values.push_back(jps_design ? prepared_jps->edf(t) : prepared_srs->edf(t));
    }
  }

  std::ostringstream buffer;
  jps::CsvWriter writer(buffer);
  write_run_header(writer, command_line, opt.stamp, std::nullopt);
  jps::write_csv(writer, estimate);
  opt.out.write(buffer.str());
}

// ----------------------------------------------------------------- moments

void run_moments(long n, int set_size, bool stamp, const OutputTarget& out,
                 const std::string& command_line) {
  const jps::WeightMoments wm = jps::weight_moments(n, set_size);
  std::ostringstream buffer;
  jps::CsvWriter writer(buffer);
  write_run_header(writer, command_line, stamp, std::nullopt);
  writer.header({"n", "H", "var_w", "var_w_float", "e_w2j", "e_w2j_float", "nH_e_w2j"});
  writer.row({std::to_string(n), std::to_string(set_size), jps::to_string(wm.var_w),
              jps::format_double(wm.var_w_f()), jps::to_string(wm.e_w2j),
              jps::format_double(wm.e_w2j_f()), jps::format_double(wm.nh_e_w2j())});
  out.write(buffer.str());
}

// ----------------------------------------------------------------- kernels

void run_kernels(const std::string& kind_name, bool stamp, const OutputTarget& out,
                 const std::string& command_line) {
  const jps::KernelSpec spec = jps::kernel_spec(jps::kernel_from_name(kind_name));
  std::ostringstream buffer;
  jps::CsvWriter writer(buffer);
  write_run_header(writer, command_line, stamp, std::nullopt);
  writer.header({"kind", "a", "int_x2k", "int_K2"});
  writer.row({jps::kernel_name(spec.kind), jps::format_double(spec.a),
              jps::format_double(spec.int_x2k), jps::format_double(spec.int_k2)});
  out.write(buffer.str());
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string dist = "normal";
  long n = 50;
  std::string set_sizes = "5";
  double rho = 1.0;
  std::string kernel = "epanechnikov";
  std::string p_spec;
  long reps = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool couple_arms = false;
  bool stamp = false;
  std::string out_path;
  std::string svg_path;
};

std::string with_h_suffix(const std::string& path, int set_size) {
  const std::size_t dot = path.find_last_of('.');
  const std::size_t slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "_H" + std::to_string(set_size);
  }
  return path.substr(0, dot) + "_H" + std::to_string(set_size) + path.substr(dot);
}

void run_simulate(const SimulateOptions& opt, const std::string& command_line) {
  const std::vector<int> set_sizes = parse_int_list(opt.set_sizes, "--H");
  jps::ReCurveConfig config;
  config.dist = jps::dist_from_name(opt.dist);
  config.n = opt.n;
  config.rho = opt.rho;
  config.kernel = jps::kernel_from_name(opt.kernel);
  config.p_grid = opt.p_spec.empty() ? jps::default_p_grid()
                                     : parse_double_list(opt.p_spec, "--p");
  config.reps = opt.reps;
  config.seed = opt.seed;
  config.threads = resolve_threads(opt.threads);
  config.couple_arms = opt.couple_arms;

  jps::SvgChart chart("RE(p): " + opt.dist + ", n=" + std::to_string(opt.n) +
                          ", rho=" + jps::format_double(opt.rho) + ", " + opt.kernel,
                      "p", "RE");
  chart.set_reference_line(1.0);

  for (const int set_size : set_sizes) {
    config.set_size = set_size;
    const jps::ReCurve curve = jps::re_curve(config);

    std::ostringstream buffer;
    jps::CsvWriter writer(buffer);
    write_run_header(writer, command_line, opt.stamp, opt.seed);
    writer.metadata("dist", opt.dist);
    writer.metadata("n", std::to_string(opt.n));
    writer.metadata("H", std::to_string(set_size));
    writer.metadata("rho", jps::format_double(opt.rho));
    writer.metadata("kernel", opt.kernel);
    writer.metadata("reps", std::to_string(opt.reps));
    writer.metadata("bandwidth_clamp_events", std::to_string(curve.slope_clamp_events));
    writer.metadata("bandwidth_cap_events", std::to_string(curve.cap_events));
    writer.header({"p", "mse_srs", "se_srs", "mse_jps", "se_jps", "re"});
    for (std::size_t i = 0; i < curve.p_grid.size(); ++i) {
      writer.row({jps::format_double(curve.p_grid[i]), jps::format_double(curve.mse_srs[i]),
                  jps::format_double(curve.se_srs[i]), jps::format_double(curve.mse_jps[i]),
                  jps::format_double(curve.se_jps[i]), jps::format_double(curve.re[i])});
    }
    OutputTarget target{opt.out_path.empty()
                            ? std::string()
                            : (set_sizes.size() == 1 ? opt.out_path
                                                     : with_h_suffix(opt.out_path, set_size))};
    target.write(buffer.str());

    if (!opt.svg_path.empty()) {
      chart.add_series("H=" + std::to_string(set_size), curve.p_grid, curve.re);
    }
  }
  if (!opt.svg_path.empty()) chart.write(opt.svg_path);
}

// ---------------------------------------------------------------- empirical

struct EmpiricalOptions {
  std::string data;
  long n = 50;
  int set_size = 3;
  std::string rank_by = "bodyfat";
  std::string kernel = "epanechnikov";
  std::string p_spec = "0.1,0.25,0.5,0.75,0.9";
  long reps = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool stamp = false;
  OutputTarget out;
};

void run_empirical(const EmpiricalOptions& opt, const std::string& command_line) {
  jps::FinitePopulation pop;
  try {
    pop = jps::load_bodyfat(opt.data);
  } catch (const jps::DataFormatError& e) {
    throw BadInput(e.what());
  }
  jps::EmpiricalConfig config;
  config.n = opt.n;
  config.set_size = opt.set_size;
  config.concomitant = jps::concomitant_from_name(opt.rank_by);
  config.kernel = jps::kernel_from_name(opt.kernel);
  config.p_list = parse_double_list(opt.p_spec, "--p");
  config.reps = opt.reps;
  config.seed = opt.seed;
  config.threads = resolve_threads(opt.threads);
  const std::vector<jps::EmpiricalReRow> rows = jps::empirical_re_table(pop, config);

  std::ostringstream buffer;
  jps::CsvWriter writer(buffer);
  write_run_header(writer, command_line, opt.stamp, opt.seed);
  writer.metadata("data", opt.data);
  writer.metadata("n", std::to_string(opt.n));
  writer.metadata("H", std::to_string(opt.set_size));
  writer.metadata("rank_by", opt.rank_by);
  writer.metadata("kernel", opt.kernel);
  writer.metadata("reps", std::to_string(opt.reps));
  writer.header({"p", "q_p", "truth", "mse_srs", "se_srs", "mse_jps", "se_jps", "re"});
  for (const jps::EmpiricalReRow& row : rows) {
    writer.row({jps::format_double(row.p), jps::format_double(row.t),
                jps::format_double(row.truth), jps::format_double(row.mse_srs),
                jps::format_double(row.se_srs), jps::format_double(row.mse_jps),
                jps::format_double(row.se_jps), jps::format_double(row.re)});
  }
  opt.out.write(buffer.str());
}

// Reconstructs the semantic command line for the CSV header. Thread count
// and --stamp are omitted: they do not affect results.
std::string semantic_command(const std::vector<std::pair<std::string, std::string>>& args) {
  std::string out = "jpscdf";
  for (const auto& [flag, value] : args) {
    out += " " + flag;
    if (!value.empty()) out += " " + value;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CDF estimation under judgment post stratification"};
  app.require_subcommand(1);

  // --- estimate ---
  EstimateOptions est;
  CLI::App* estimate = app.add_subcommand("estimate", "evaluate a CDF estimate from a sample");
  estimate->add_option("--input", est.input, "sample file (x rows; x,rank rows for jps)")
      ->required();
  estimate->add_option("--design", est.design, "srs or jps")
      ->check(CLI::IsMember({"srs", "jps"}));
  estimate->add_option("--estimator", est.estimator, "edf or kdf")
      ->check(CLI::IsMember({"edf", "kdf"}));
  estimate->add_option("--kernel", est.kernel, "kernel name");
  estimate->add_option("--H", est.set_size, "set size (required for jps)");
  estimate->add_option("--bandwidth", est.bandwidth,
                       "auto-pointwise | auto-global | fixed:<value>");
  estimate->add_option("--grid", est.grid_spec, "comma-separated evaluation points");
  estimate->add_option("--grid-count", est.grid_count, "automatic grid size");
  estimate->add_option("--out", est.out.path, "output CSV (default stdout)");
  estimate->add_flag("--stamp", est.stamp, "include a timestamp header line");

  // --- moments ---
  long mom_n = 0;
  int mom_h = 0;
  bool mom_stamp = false;
  OutputTarget mom_out;
  CLI::App* moments = app.add_subcommand("moments", "exact post-strata weight moments");
  moments->add_option("--n", mom_n, "sample size")->required();
  moments->add_option("--H", mom_h, "set size")->required();
  moments->add_option("--out", mom_out.path, "output CSV (default stdout)");
  moments->add_flag("--stamp", mom_stamp, "include a timestamp header line");

  // --- simulate ---
  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo relative-efficiency curve");
  simulate->add_option("--dist", sim.dist, "parent distribution");
  simulate->add_option("--n", sim.n, "sample size");
  simulate->add_option("--H", sim.set_sizes, "set size (or comma list for multiple curves)");
  simulate->add_option("--rho", sim.rho, "ranking correlation in [0,1]");
  simulate->add_option("--kernel", sim.kernel, "kernel name");
  simulate->add_option("--p", sim.p_spec, "comma-separated p grid (default 0.01..0.99)");
  simulate->add_option("--reps", sim.reps, "Monte Carlo replications");
  simulate->add_option("--seed", sim.seed, "master seed");
  simulate->add_option("--threads", sim.threads, "worker count (0 = hardware)");
  simulate->add_flag("--couple-arms", sim.couple_arms,
                     "reuse JPS measured values as the SRS sample");
  simulate->add_option("--out", sim.out_path, "output CSV (default stdout)");
  simulate->add_option("--svg", sim.svg_path, "also write an RE(p) chart");
  simulate->add_flag("--stamp", sim.stamp, "include a timestamp header line");

  // --- empirical ---
  EmpiricalOptions emp;
  CLI::App* empirical = app.add_subcommand("empirical", "finite-population RE study");
  empirical->add_option("--data", emp.data, "population file (csv or canonical layout)")
      ->required();
  empirical->add_option("--n", emp.n, "sample size");
  empirical->add_option("--H", emp.set_size, "set size");
  empirical->add_option("--rank-by", emp.rank_by, "bodyfat | abdomen | chest | weight");
  empirical->add_option("--kernel", emp.kernel, "kernel name");
  empirical->add_option("--p", emp.p_spec, "comma-separated p list");
  empirical->add_option("--reps", emp.reps, "Monte Carlo replications");
  empirical->add_option("--seed", emp.seed, "master seed");
  empirical->add_option("--threads", emp.threads, "worker count (0 = hardware)");
  empirical->add_option("--out", emp.out.path, "output CSV (default stdout)");
  empirical->add_flag("--stamp", emp.stamp, "include a timestamp header line");

  // --- kernels ---
  std::string ker_kind = "epanechnikov";
  bool ker_stamp = false;
  OutputTarget ker_out;
  CLI::App* kernels = app.add_subcommand("kernels", "kernel constants");
  kernels->add_option("--kind", ker_kind, "kernel name");
  kernels->add_option("--out", ker_out.path, "output CSV (default stdout)");
  kernels->add_flag("--stamp", ker_stamp, "include a timestamp header line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadFlags;
  }

  try {
    if (estimate->parsed()) {
      if (est.design == "jps" && est.set_size < 2) {
        throw CLI::ValidationError("--design jps requires --H >= 2");
      }
      std::vector<std::pair<std::string, std::string>> args = {
          {"estimate", ""},          {"--input", est.input},
          {"--design", est.design},  {"--estimator", est.estimator},
          {"--kernel", est.kernel},  {"--bandwidth", est.bandwidth},
      };
      if (est.set_size > 0) args.push_back({"--H", std::to_string(est.set_size)});
      if (!est.grid_spec.empty()) args.push_back({"--grid", est.grid_spec});
      run_estimate(est, semantic_command(args));
    } else if (moments->parsed()) {
      if (mom_n < 1 || mom_h < 2) {
        throw CLI::ValidationError("moments requires --n >= 1 and --H >= 2");
      }
      run_moments(mom_n, mom_h, mom_stamp, mom_out,
                  semantic_command({{"moments", ""},
                                    {"--n", std::to_string(mom_n)},
                                    {"--H", std::to_string(mom_h)}}));
    } else if (simulate->parsed()) {
      if (sim.reps < 1) throw CLI::ValidationError("--reps must be >= 1");
      if (!(sim.rho >= 0.0 && sim.rho <= 1.0)) {
        throw CLI::ValidationError("--rho must lie in [0,1]");
      }
      std::vector<std::pair<std::string, std::string>> args = {
          {"simulate", ""},         {"--dist", sim.dist},
          {"--n", std::to_string(sim.n)}, {"--H", sim.set_sizes},
          {"--rho", jps::format_double(sim.rho)}, {"--kernel", sim.kernel},
          {"--reps", std::to_string(sim.reps)}, {"--seed", std::to_string(sim.seed)},
      };
      if (!sim.p_spec.empty()) args.push_back({"--p", sim.p_spec});
      if (sim.couple_arms) args.push_back({"--couple-arms", ""});
      run_simulate(sim, semantic_command(args));
    } else if (empirical->parsed()) {
      if (emp.reps < 1) throw CLI::ValidationError("--reps must be >= 1");
      if (emp.set_size < 2) throw CLI::ValidationError("--H must be >= 2");
      run_empirical(emp, semantic_command({{"empirical", ""},
                                           {"--data", emp.data},
                                           {"--n", std::to_string(emp.n)},
                                           {"--H", std::to_string(emp.set_size)},
                                           {"--rank-by", emp.rank_by},
                                           {"--kernel", emp.kernel},
                                           {"--p", emp.p_spec},
                                           {"--reps", std::to_string(emp.reps)},
                                           {"--seed", std::to_string(emp.seed)}}));
    } else if (kernels->parsed()) {
      run_kernels(ker_kind, ker_stamp, ker_out,
                  semantic_command({{"kernels", ""}, {"--kind", ker_kind}}));
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
