// Exercises the installed command-line surface end to end: exit codes,
// output schemas, byte-level determinism.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "jpscdf/csv.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string stdout_path = "/tmp/jpscdf_cli_out_" + std::to_string(counter++) + ".txt";
  const std::string command =
      std::string(JPSCDF_CLI_PATH) + " " + args + " > " + stdout_path + " 2>/dev/null";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.output = slurp(stdout_path);
  std::remove(stdout_path.c_str());
  return result;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

jps::CsvContent parse_output(const std::string& text) {
  std::stringstream ss(text);
  return jps::read_csv(ss);
}

const std::string kSyntheticCsv = std::string(JPSCDF_TEST_DATA_DIR) + "/bodyfat_synthetic.csv";

}  // namespace

TEST_CASE("kernels subcommand prints the constants") {
  const RunResult r = run_cli("kernels --kind epanechnikov");
  REQUIRE(r.exit_code == 0);
  const jps::CsvContent csv = parse_output(r.output);
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.header == std::vector<std::string>{"kind", "a", "int_x2k", "int_K2"});
  CHECK(csv.rows[0][0] == "epanechnikov");
  CHECK(jps::parse_double(csv.rows[0][1]) == 1.0);
  CHECK(jps::parse_double(csv.rows[0][2]) == 0.2);

  CHECK(run_cli("kernels --kind box").exit_code == 3);
}

TEST_CASE("moments subcommand prints exact rationals with float columns") {
  const RunResult r = run_cli("moments --n 2 --H 2");
  REQUIRE(r.exit_code == 0);
  const jps::CsvContent csv = parse_output(r.output);
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.header ==
        std::vector<std::string>{"n", "H", "var_w", "var_w_float", "e_w2j", "e_w2j_float",
                                 "nH_e_w2j"});
  CHECK(csv.rows[0][2] == "1/8");
  CHECK(csv.rows[0][4] == "1/4");
  CHECK(jps::parse_double(csv.rows[0][3]) == 0.125);
  CHECK(jps::parse_double(csv.rows[0][6]) == 1.0);

  CHECK(run_cli("moments --n 0 --H 2").exit_code == 3);
  CHECK(run_cli("moments --n 5 --H 1").exit_code == 3);
  CHECK(run_cli("moments --n 5").exit_code == 3);  // missing required flag
}

TEST_CASE("estimate: jps EDF at a point") {
  const std::string input = "/tmp/jpscdf_cli_sample.csv";
  write_file(input, "1,1\n2,2\n3,1\n");
  const RunResult r = run_cli("estimate --input " + input +
                              " --design jps --H 2 --estimator edf --grid 2.5");
  REQUIRE(r.exit_code == 0);
  const jps::CsvContent csv = parse_output(r.output);
  CHECK(csv.header ==
        std::vector<std::string>{"t", "value", "estimator_tag", "h", "n", "H", "seed"});
  REQUIRE(csv.rows.size() == 1);
  CHECK(jps::parse_double(csv.rows[0][0]) == 2.5);
  CHECK(jps::parse_double(csv.rows[0][1]) == 0.75);
  CHECK(csv.rows[0][2] == "edf_jps");
  CHECK(csv.rows[0][3].empty());  // EDF has no bandwidth
  CHECK(csv.rows[0][4] == "3");
  CHECK(csv.rows[0][5] == "2");
  std::remove(input.c_str());
}

TEST_CASE("estimate accepts header rows, CRLF endings and whitespace separators") {
  const std::string input = "/tmp/jpscdf_cli_formats.csv";
  write_file(input, "x,r\r\n1,1\r\n2 2\r\n3,1\r\n");
  const RunResult r = run_cli("estimate --input " + input +
                              " --design jps --H 2 --estimator edf --grid 2.5");
  REQUIRE(r.exit_code == 0);
  const jps::CsvContent csv = parse_output(r.output);
  REQUIRE(csv.rows.size() == 1);
  CHECK(jps::parse_double(csv.rows[0][1]) == 0.75);
  std::remove(input.c_str());
}

TEST_CASE("estimate: flag and input validation") {
  const std::string input = "/tmp/jpscdf_cli_sample2.csv";
  write_file(input, "1,1\n2,2\n3,1\n");
  // jps without --H is a flag error
  CHECK(run_cli("estimate --input " + input + " --design jps --estimator edf").exit_code == 3);
  // empty input file
  const std::string empty = "/tmp/jpscdf_cli_empty.csv";
  write_file(empty, "");
  CHECK(run_cli("estimate --input " + empty + " --design srs").exit_code == 2);
  // malformed rows
  const std::string garbled = "/tmp/jpscdf_cli_garbled.csv";
  write_file(garbled, "1.0,1\nbroken\n");
  CHECK(run_cli("estimate --input " + garbled + " --design jps --H 2").exit_code == 2);
  // rank outside 1..H
  write_file(garbled, "1.0,1\n2.0,9\n");
  CHECK(run_cli("estimate --input " + garbled + " --design jps --H 2").exit_code == 2);
  // nonexistent file
  CHECK(run_cli("estimate --input /nonexistent.csv").exit_code == 2);
  // bad bandwidth mode
  CHECK(run_cli("estimate --input " + input + " --bandwidth nonsense").exit_code == 3);
  // unknown flag
  CHECK(run_cli("estimate --input " + input + " --frobnicate").exit_code == 3);
  std::remove(input.c_str());
  std::remove(empty.c_str());
  std::remove(garbled.c_str());
}

TEST_CASE("estimate: smoothed output with pointwise, global and fixed bandwidths") {
  const std::string input = "/tmp/jpscdf_cli_sample3.csv";
  std::ostringstream data;
  unsigned state = 12345u;
  for (int i = 0; i < 40; ++i) {
    state = state * 1664525u + 1013904223u;
    data << 0.5 + (state % 1000) / 100.0 << "," << 1 + (i % 3) << "\n";
  }
  write_file(input, data.str());
  for (const std::string mode : {"auto-pointwise", "auto-global", "fixed:0.8"}) {
    const RunResult r = run_cli("estimate --input " + input +
                                " --design jps --H 3 --bandwidth " + mode +
                                " --grid 2,4,6 --kernel triangular");
    REQUIRE(r.exit_code == 0);
    const jps::CsvContent csv = parse_output(r.output);
    REQUIRE(csv.rows.size() == 3);
    double prev = -1.0;
    for (const auto& row : csv.rows) {
      CHECK(row[2] == "kdf_jps");
      const double value = jps::parse_double(row[1]);
      const double h = jps::parse_double(row[3]);
      CHECK(h > 0.0);
      CHECK(value >= prev);
      prev = value;
    }
    if (mode == "fixed:0.8") CHECK(jps::parse_double(csv.rows[0][3]) == 0.8);
  }
  std::remove(input.c_str());
}

TEST_CASE("estimate output re-emits byte-identically") {
  const std::string input = "/tmp/jpscdf_cli_sample4.csv";
  write_file(input, "0.11,1\n0.52,2\n1.73,1\n2.9,2\n0.33,1\n1.1,2\n");
  const RunResult r = run_cli("estimate --input " + input + " --design jps --H 2");
  REQUIRE(r.exit_code == 0);
  const jps::CsvContent csv = parse_output(r.output);
  CHECK(csv.rows.size() == 101);  // default automatic grid
  // re-serialize every numeric field through parse -> format
  std::ostringstream rebuilt;
  jps::CsvWriter writer(rebuilt);
  for (const auto& [key, value] : csv.metadata) writer.metadata(key, value);
  writer.header(csv.header);
  for (const auto& row : csv.rows) {
    std::vector<std::string> fields = row;
    for (std::size_t i : {0u, 1u, 3u}) {
      if (!fields[i].empty()) fields[i] = jps::format_double(jps::parse_double(fields[i]));
    }
    writer.row(fields);
  }
  CHECK(rebuilt.str() == r.output);
  std::remove(input.c_str());
}

TEST_CASE("simulate: pinned schema, determinism across runs and worker counts") {
  const std::string base =
      "simulate --dist laplace --n 25 --H 3 --rho 0.9 --kernel cosine --reps 400 "
      "--seed 77 --p 0.25,0.5,0.75";
  const std::string out1 = "/tmp/jpscdf_sim1.csv";
  const std::string out2 = "/tmp/jpscdf_sim2.csv";
  CHECK(run_cli(base + " --threads 1 --out " + out1).exit_code == 0);
  CHECK(run_cli(base + " --threads 2 --out " + out2).exit_code == 0);
  const std::string bytes1 = slurp(out1);
  CHECK(bytes1 == slurp(out2));
  CHECK(!bytes1.empty());

  std::stringstream ss(bytes1);
  const jps::CsvContent csv = jps::read_csv(ss);
  CHECK(csv.header ==
        std::vector<std::string>{"p", "mse_srs", "se_srs", "mse_jps", "se_jps", "re"});
  REQUIRE(csv.rows.size() == 3);
  for (const auto& row : csv.rows) {
    CHECK(jps::parse_double(row[5]) ==
          jps::parse_double(row[1]) / jps::parse_double(row[3]));
  }
  bool has_seed = false;
  for (const auto& [key, value] : csv.metadata) has_seed |= (key == "seed" && value == "77");
  CHECK(has_seed);
  std::remove(out1.c_str());
  std::remove(out2.c_str());

  CHECK(run_cli("simulate --reps 0").exit_code == 3);
  CHECK(run_cli("simulate --rho 1.5 --reps 10").exit_code == 3);
  CHECK(run_cli("simulate --dist nosuch --reps 10").exit_code == 3);
}

TEST_CASE("simulate: multiple set sizes write per-H CSVs and one chart") {
  const std::string out = "/tmp/jpscdf_multi.csv";
  const std::string svg = "/tmp/jpscdf_multi.svg";
  const RunResult r = run_cli(
      "simulate --dist exp1 --n 20 --H 3,5 --rho 1 --reps 200 --seed 5 --p 0.5 --out " + out +
      " --svg " + svg);
  REQUIRE(r.exit_code == 0);
  const std::string h3 = slurp("/tmp/jpscdf_multi_H3.csv");
  const std::string h5 = slurp("/tmp/jpscdf_multi_H5.csv");
  CHECK(!h3.empty());
  CHECK(!h5.empty());
  const std::string chart = slurp(svg);
  CHECK(chart.find("<svg") != std::string::npos);
  CHECK(chart.find("H=3") != std::string::npos);
  CHECK(chart.find("H=5") != std::string::npos);
  std::remove("/tmp/jpscdf_multi_H3.csv");
  std::remove("/tmp/jpscdf_multi_H5.csv");
  std::remove(svg.c_str());
}

TEST_CASE("empirical subcommand") {
  const std::string out1 = "/tmp/jpscdf_emp1.csv";
  const std::string out2 = "/tmp/jpscdf_emp2.csv";
  const std::string base = "empirical --data " + kSyntheticCsv +
                           " --n 15 --H 3 --rank-by abdomen --p 0.25,0.5 --reps 300 --seed 9";
  CHECK(run_cli(base + " --threads 2 --out " + out1).exit_code == 0);
  CHECK(run_cli(base + " --threads 1 --out " + out2).exit_code == 0);
  const std::string bytes = slurp(out1);
  CHECK(bytes == slurp(out2));
  std::stringstream ss(bytes);
  const jps::CsvContent csv = jps::read_csv(ss);
  CHECK(csv.header == std::vector<std::string>{"p", "q_p", "truth", "mse_srs", "se_srs",
                                               "mse_jps", "se_jps", "re"});
  REQUIRE(csv.rows.size() == 2);
  std::remove(out1.c_str());
  std::remove(out2.c_str());

  CHECK(run_cli("empirical --data /nonexistent.csv").exit_code == 2);
  CHECK(run_cli("empirical --data " + kSyntheticCsv + " --rank-by hip").exit_code == 3);
  CHECK(run_cli("empirical --data " + kSyntheticCsv + " --reps 0").exit_code == 3);
}

TEST_CASE("env var overrides the thread flag without changing results") {
  const std::string out1 = "/tmp/jpscdf_env1.csv";
  const std::string out2 = "/tmp/jpscdf_env2.csv";
  const std::string base = std::string(JPSCDF_CLI_PATH) +
                           " simulate --dist normal --n 10 --H 3 --reps 100 --seed 3 "
                           "--p 0.5 --threads 4 --out ";
  CHECK(std::system((base + out1).c_str()) == 0);
  CHECK(std::system(("JPS_CDF_THREADS=1 " + base + out2).c_str()) == 0);
  CHECK(slurp(out1) == slurp(out2));
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}
