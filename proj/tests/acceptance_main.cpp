// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. --full switches the Monte Carlo criteria to their
// full-fidelity replication counts with halved tolerances.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "jpscdf/bandwidth.hpp"
#include "jpscdf/distributions.hpp"
#include "jpscdf/empirical.hpp"
#include "jpscdf/estimators.hpp"
#include "jpscdf/kernels.hpp"
#include "jpscdf/moments.hpp"
#include "jpscdf/parallel.hpp"
#include "jpscdf/rng.hpp"
#include "jpscdf/simulate.hpp"
#include "jpscdf/special_functions.hpp"

using namespace jps;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s  criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", v);
  return buffer;
}

// ---- criterion 1: exact moment formulas equal the enumeration oracle ----
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  for (long n = 1; n <= 8 && pass; ++n) {
    for (int h = 2; h <= 4 && pass; ++h) {
      pass = (var_w(n, h) == var_w_by_enumeration(n, h)) &&
             (e_w2j(n, h) == e_w2j_by_enumeration(n, h));
    }
  }
  const double secs = elapsed_s(start);
  pass = pass && secs < 10.0;
  report(1, pass,
         "var_w and e_w2j equal the enumeration oracle exactly for n<=8, H<=4 (" +
             fmt(secs) + " s)");
}

// ---- criterion 2: asymptotic weight limits ----
void criterion_2() {
  const auto start = std::chrono::steady_clock::now();
  const WeightMoments at_300 = weight_moments(300, 10);
  const double n_var = 300.0 * at_300.var_w_f();
  const double gap_300 = std::fabs(at_300.nh_e_w2j() - 1.0);
  bool nvar_monotone = true, nhe_monotone = true;
  double prev_nvar = 1e300, prev_gap = 1e300;
  std::string nhe_sequence;
  for (const long n : {10L, 50L, 300L, 1000L}) {
    const WeightMoments wm = weight_moments(n, 10);
    const double nvar = n * wm.var_w_f();
    const double gap = std::fabs(wm.nh_e_w2j() - 1.0);
    nvar_monotone = nvar_monotone && nvar < prev_nvar;
    nhe_monotone = nhe_monotone && gap < prev_gap;
    prev_nvar = nvar;
    prev_gap = gap;
    nhe_sequence += fmt(wm.nh_e_w2j()) + " ";
  }
  const double secs = elapsed_s(start);
  const bool pass =
      n_var <= 0.01 && gap_300 <= 0.05 && nvar_monotone && nhe_monotone && secs < 30.0;
  std::string detail = "n V(W)=" + fmt(n_var) + " <= 0.01 and |nH E(W^2 J)-1|=" +
                       fmt(gap_300) + " <= 0.05 at (300,10); n V(W) monotone: " +
                       (nvar_monotone ? "yes" : "no") + "; nH E(W^2 J) monotone: " +
                       (nhe_monotone ? "yes" : "no");
  if (!nhe_monotone) {
    // Exact values (enumeration- and Monte-Carlo-verified): the factor
    // peaks near n = 30 at H = 10 before settling toward 1, so the stated
    // monotone approach does not hold on this grid.
    detail += " [sequence over n in {10,50,300,1000}: " + nhe_sequence + "- the exact" +
              " evaluation of the closed form rises before settling toward 1]";
  }
  report(2, pass, detail + " (" + fmt(secs) + " s)");
}

// ---- criterion 3: bandwidth identity ----
void criterion_3() {
  const KernelSpec epan = kernel_spec(KernelKind::Epanechnikov);
  RandomStream rng(160914);
  bool pass = true;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const long n = 2 + static_cast<long>(rng.next_below(500));
    const int h = 2 + static_cast<int>(rng.next_below(9));
    const double f = 0.05 + rng.next_open01();
    const double fp = rng.next_open01() - 0.5;
    const double hs = h_srs(n, epan, f, fp, 1.0, 0.0).h;
    const double hj = h_jps(n, h, epan, f, fp, 1.0, 0.0).h;
    const double expected = std::cbrt(weight_moments(n, h).nh_e_w2j());
    worst = std::max(worst, std::fabs(hj / hs - expected));
    pass = pass && std::fabs(hj / hs - expected) <= 1e-12;
  }
  const double hs22 = h_srs(2, epan, 0.4, -0.1, 1.0, 0.0).h;
  const double hj22 = h_jps(2, 2, epan, 0.4, -0.1, 1.0, 0.0).h;
  pass = pass && hj22 == hs22;
  report(3, pass,
         "h_jps/h_srs = (n H E(W1^2 J1))^(1/3) to 1e-12 over 20 random (n,H), worst dev " +
             fmt(worst) + "; h_jps(2,2) == h_srs exactly");
}

// ---- criterion 4: finite-n unbiasedness of the JPS EDF ----
void criterion_4(long reps) {
  const auto start = std::chrono::steady_clock::now();
  const ParentDistribution dist(DistKind::StdNormal);
  const RankingModel model{0.75};
  const long n = 50;
  const int h = 5;
  const double t = dist.quantile(0.5);

  struct Sums {
    double jps = 0.0, jps2 = 0.0, srs = 0.0, srs2 = 0.0;
  };
  const std::size_t block = 64;
  const std::size_t n_blocks = (static_cast<std::size_t>(reps) + block - 1) / block;
  std::vector<Sums> sums(n_blocks);
  run_blocks(static_cast<std::size_t>(reps), block, default_thread_count(),
             [&](std::size_t b, std::size_t begin, std::size_t end) {
               Sums s;
               for (std::size_t rep = begin; rep < end; ++rep) {
                 RandomStream jps_rng(51001, rep, 0);
                 const JpsSample sample = draw_jps(dist, n, h, model, jps_rng);
                 const double fj = edf_jps(sample, t);
                 s.jps += fj;
                 s.jps2 += fj * fj;
                 RandomStream srs_rng(51001, rep, 1);
                 const std::vector<double> xs = dist.sample(n, srs_rng);
                 const double fs = edf_srs(xs, t);
                 s.srs += fs;
                 s.srs2 += fs * fs;
               }
               sums[b] = s;
             });
  Sums total;
  for (const Sums& s : sums) {
    total.jps += s.jps;
    total.jps2 += s.jps2;
    total.srs += s.srs;
    total.srs2 += s.srs2;
  }
  const double m = static_cast<double>(reps);
  const double mean_jps = total.jps / m;
  const double mean_srs = total.srs / m;
  const double se_jps = std::sqrt((total.jps2 / m - mean_jps * mean_jps) / (m - 1.0));
  const double se_srs = std::sqrt((total.srs2 / m - mean_srs * mean_srs) / (m - 1.0));
  const double combined = std::sqrt(se_jps * se_jps + se_srs * se_srs);
  const double secs = elapsed_s(start);
  const bool pass = std::fabs(mean_jps - 0.5) <= 4.0 * se_jps &&
                    std::fabs(mean_jps - mean_srs) <= 4.0 * combined && secs < 120.0;
  report(4, pass,
         "JPS EDF mean at Q_0.5 = " + fmt(mean_jps) + " within 4 SE of 0.5 and within 4 " +
             "combined SE of SRS mean " + fmt(mean_srs) + " (" + std::to_string(reps) +
             " reps, " + fmt(secs) + " s)");
}

// ---- criterion 5: asymptotic normality of the standardized JPS EDF ----
void criterion_5(long reps) {
  const auto start = std::chrono::steady_clock::now();
  const ParentDistribution dist(DistKind::StdNormal);
  const RankingModel model{1.0};
  const long n = 300;
  const int h = 3;
  const double sigma = std::sqrt(jps_asym_variance(dist, 0.0, h));

  std::vector<double> z(static_cast<std::size_t>(reps));
  run_blocks(z.size(), 64, default_thread_count(),
             [&](std::size_t, std::size_t begin, std::size_t end) {
               for (std::size_t rep = begin; rep < end; ++rep) {
                 RandomStream rng(52001, rep);
                 const JpsSample sample = draw_jps(dist, n, h, model, rng);
                 z[rep] = std::sqrt(static_cast<double>(n)) * (edf_jps(sample, 0.0) - 0.5) /
                          sigma;
               }
             });
  std::sort(z.begin(), z.end());
  double d_stat = 0.0;
  const double m = static_cast<double>(reps);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double u = normal_cdf(z[i]);
    d_stat = std::max(d_stat, std::max((i + 1) / m - u, u - i / m));
  }
  // asymptotic Kolmogorov distribution tail
  const double lambda = std::sqrt(m) * d_stat;
  double p_value = 0.0;
  for (int k = 1; k <= 100; ++k) {
    p_value += 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  double mean = 0.0, var = 0.0;
  for (const double v : z) mean += v;
  mean /= m;
  for (const double v : z) var += (v - mean) * (v - mean);
  var /= (m - 1.0);
  const double secs = elapsed_s(start);
  const bool pass = p_value > 0.01 && std::fabs(var - 1.0) <= 0.05 && secs < 180.0;
  report(5, pass,
         "KS vs N(0,1): D = " + fmt(d_stat) + ", p = " + fmt(p_value) +
             " > 0.01; standardized variance " + fmt(var) + " within 5% of 1 (" +
             std::to_string(reps) + " reps, " + fmt(secs) + " s)");
}

// ---- criterion 6: RE ordering in H at the median, n = 300 ----
void criterion_6(long reps) {
  const auto start = std::chrono::steady_clock::now();
  ReCurveConfig config;
  config.dist = DistKind::StdNormal;
  config.n = 300;
  config.rho = 1.0;
  config.kernel = KernelKind::Epanechnikov;
  config.p_grid = {0.5};
  config.reps = reps;
  config.seed = 53001;
  config.threads = default_thread_count();

  struct Point {
    double re = 0.0, se = 0.0;
  };
  Point points[3];
  const int sizes[3] = {3, 5, 10};
  for (int i = 0; i < 3; ++i) {
    config.set_size = sizes[i];
    const ReCurve curve = re_curve(config);
    points[i].re = curve.re[0];
    // delta-method SE of the MSE ratio
    points[i].se = curve.re[0] * std::sqrt(std::pow(curve.se_srs[0] / curve.mse_srs[0], 2) +
                                           std::pow(curve.se_jps[0] / curve.mse_jps[0], 2));
  }
  const auto separated = [&](int hi, int lo) {
    const double gap_se =
        std::sqrt(points[hi].se * points[hi].se + points[lo].se * points[lo].se);
    return points[hi].re - points[lo].re > 2.0 * gap_se;
  };
  const double se1 = points[0].se;
  const double secs = elapsed_s(start);
  const bool pass = separated(2, 1) && separated(1, 0) && points[0].re - 1.0 > 2.0 * se1 &&
                    secs < 300.0;
  report(6, pass,
         "RE(0.5) at n=300: H=10 -> " + fmt(points[2].re) + " > H=5 -> " + fmt(points[1].re) +
             " > H=3 -> " + fmt(points[0].re) + " > 1, each gap beyond 2 combined SE (" +
             std::to_string(reps) + " reps, " + fmt(secs) + " s)");
}

// ---- criterion 7: Table-1 spot checks on the real study population ----
void criterion_7(long reps, bool full) {
  const auto start = std::chrono::steady_clock::now();
  std::string path;
  const char* env = std::getenv("JPSCDF_BODYFAT");
  if (env != nullptr && env[0] != '\0') {
    path = env;
  } else {
    path = std::string(JPSCDF_TEST_DATA_DIR) + "/bodyfat.csv";
  }
  FinitePopulation pop;
  try {
    pop = load_bodyfat(path);
  } catch (const std::exception& e) {
    report(7, false,
           std::string("real body-fat population unavailable (") + e.what() +
               "); place the canonical 252-record dataset at tests/data/bodyfat.csv or set " +
               "JPSCDF_BODYFAT (see README)");
    return;
  }

  // Data gate: the real population's concomitant correlations.
  const auto pearson = [&](auto&& getter) {
    double mx = 0.0, my = 0.0;
    for (const auto& rec : pop.records) {
      mx += rec.body_fat;
      my += getter(rec);
    }
    mx /= pop.size();
    my /= pop.size();
    double num = 0.0, dx = 0.0, dy = 0.0;
    for (const auto& rec : pop.records) {
      const double a = rec.body_fat - mx;
      const double b = getter(rec) - my;
      num += a * b;
      dx += a * a;
      dy += b * b;
    }
    return num / std::sqrt(dx * dy);
  };
  const double r_abdomen = pearson([](const PopulationRecord& r) { return r.abdomen; });
  const double r_chest = pearson([](const PopulationRecord& r) { return r.chest; });
  const double r_weight = pearson([](const PopulationRecord& r) { return r.weight; });
  if (std::fabs(r_abdomen - 0.81) > 0.01 || std::fabs(r_chest - 0.70) > 0.01 ||
      std::fabs(r_weight - 0.61) > 0.01) {
    report(7, false,
           "population at " + path + " does not match the expected correlation structure " +
               "(bodyfat vs abdomen/chest/weight = " + fmt(r_abdomen) + "/" + fmt(r_chest) +
               "/" + fmt(r_weight) + ", expected 0.81/0.70/0.61 within 0.01) - wrong file?");
    return;
  }

  struct Spot {
    Concomitant concomitant;
    long n;
    int set_size;
    double p, expected, tol;
  };
  const double scale = full ? 0.5 : 1.0;
  const Spot spots[] = {
      {Concomitant::BodyFat, 50, 10, 0.5, 4.15, 1.0 * scale},
      {Concomitant::Weight, 50, 5, 0.5, 1.25, 0.2 * scale},
      {Concomitant::Abdomen, 10, 3, 0.1, 0.85, 0.1 * scale},
  };
  bool pass = true;
  std::string detail;
  for (const Spot& spot : spots) {
    EmpiricalConfig config;
    config.n = spot.n;
    config.set_size = spot.set_size;
    config.concomitant = spot.concomitant;
    config.kernel = KernelKind::Epanechnikov;
    config.p_list = {spot.p};
    config.reps = reps;
    config.seed = 54001;
    config.threads = default_thread_count();
    const EmpiricalReRow row = empirical_re_table(pop, config)[0];
    const bool ok = std::fabs(row.re - spot.expected) <= spot.tol;
    pass = pass && ok;
    detail += concomitant_name(spot.concomitant) + " n=" + std::to_string(spot.n) +
              " H=" + std::to_string(spot.set_size) + " p=" + fmt(spot.p) + ": RE=" +
              fmt(row.re) + " vs " + fmt(spot.expected) + "+-" + fmt(spot.tol) + "; ";
  }
  const double secs = elapsed_s(start);
  pass = pass && (full || secs < 300.0);
  report(7, pass, detail + "(" + std::to_string(reps) + " reps, " + fmt(secs) + " s)");
}

// ---- criterion 8: variance decompositions and the simulation oracle ----
void criterion_8() {
  const auto start = std::chrono::steady_clock::now();
  RandomStream rng(55001);
  bool agree = true;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const ParentDistribution dist(static_cast<DistKind>(rng.next_below(6)));
    const double t = dist.quantile(0.05 + 0.9 * rng.next_open01());
    const long n = 5 + static_cast<long>(rng.next_below(300));
    const int h = 2 + static_cast<int>(rng.next_below(7));
    std::optional<KernelSmoothing> smoothing;
    if (trial % 2 == 1) {
      smoothing = KernelSmoothing{kernel_spec(KernelKind::Epanechnikov),
                                  0.05 + 0.5 * rng.next_open01()};
    }
    const double a = finite_n_variance(dist, t, n, h, smoothing);
    const double b = finite_n_variance_stratum_form(dist, t, n, h, smoothing);
    worst = std::max(worst, std::fabs(a - b));
    agree = agree && std::fabs(a - b) <= 1e-10;
  }

  // Monte Carlo check of the finite-n EDF variance at n = 50, H = 3.
  const ParentDistribution normal(DistKind::StdNormal);
  const double predicted = finite_n_variance(normal, 0.0, 50, 3);
  const long reps = 100000;
  std::vector<double> values(static_cast<std::size_t>(reps));
  run_blocks(values.size(), 64, default_thread_count(),
             [&](std::size_t, std::size_t begin, std::size_t end) {
               for (std::size_t rep = begin; rep < end; ++rep) {
                 RandomStream stream(55002, rep);
                 const JpsSample sample = draw_jps(normal, 50, 3, RankingModel{1.0}, stream);
                 values[rep] = edf_jps(sample, 0.0);
               }
             });
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(reps);
  double ss = 0.0, s4 = 0.0;
  for (const double v : values) {
    const double d = v - mean;
    ss += d * d;
    s4 += d * d * d * d;
  }
  const double mc_var = ss / (reps - 1.0);
  const double se_var = std::sqrt((s4 / reps - mc_var * mc_var) / reps);
  const bool mc_ok = std::fabs(mc_var - predicted) <= 3.0 * se_var;
  const double secs = elapsed_s(start);
  report(8, agree && mc_ok,
         "both variance forms agree to 1e-10 over 50 configurations (worst " + fmt(worst) +
             "); finite-n EDF variance " + fmt(predicted) + " vs Monte Carlo " + fmt(mc_var) +
             " +- 3x" + fmt(se_var) + " (" + fmt(secs) + " s)");
}

// ---- criterion 9: property suite ----
void criterion_9() {
  bool pass = true;
  std::string failure;
  const auto expect = [&](bool ok, const char* what) {
    if (!ok && pass) {
      pass = false;
      failure = what;
    }
  };

  // kernel CDF monotonicity, symmetry, exact limits
  for (const KernelKind kind : {KernelKind::Epanechnikov, KernelKind::Triangular,
                                KernelKind::Cosine, KernelKind::TruncatedGaussian}) {
    const KernelSpec spec = kernel_spec(kind);
    double prev = -1.0;
    for (int i = 0; i <= 400; ++i) {
      const double x = -spec.a - 0.5 + (2.0 * spec.a + 1.0) * i / 400.0;
      const double v = kernel_cdf(kind, x);
      expect(v >= prev, "kernel cdf monotonicity");
      prev = v;
      if (std::fabs(x) <= spec.a) {
        expect(std::fabs(v + kernel_cdf(kind, -x) - 1.0) < 1e-12, "kernel cdf symmetry");
      }
    }
    expect(kernel_cdf(kind, -spec.a - 1.0) == 0.0, "kernel cdf lower limit");
    expect(kernel_cdf(kind, spec.a + 1.0) == 1.0, "kernel cdf upper limit");
  }

  // JPS KDF monotone with exact 0/1 tails; single-stratum collapse
  RandomStream rng(56001);
  const KernelSpec epan = kernel_spec(KernelKind::Epanechnikov);
  for (int trial = 0; trial < 10; ++trial) {
    JpsSample sample;
    sample.set_size = 3;
    std::vector<double> xs;
    const std::size_t n = 10 + rng.next_below(40);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = 3.0 * (rng.next_open01() - 0.5);
      sample.pairs.push_back({x, 1 + static_cast<int>(rng.next_below(3))});
      xs.push_back(x);
    }
    const PreparedJpsSample prepared(sample);
    const double h = 0.1 + rng.next_open01();
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    expect(prepared.kdf(epan, h, *lo - epan.a * h - 1e-9) == 0.0, "kdf exact 0 tail");
    expect(prepared.kdf(epan, h, *hi + epan.a * h + 1e-9) == 1.0, "kdf exact 1 tail");
    double prev = -1.0;
    for (int i = 0; i <= 160; ++i) {
      const double t = *lo - 1.0 + (*hi - *lo + 2.0) * i / 160.0;
      const double v = prepared.kdf(epan, h, t);
      expect(v >= prev - 1e-15 && v >= 0.0 && v <= 1.0, "kdf monotone in [0,1]");
      prev = v;
    }

    JpsSample collapsed = sample;
    for (auto& pr : collapsed.pairs) pr.rank = 2;
    const PreparedJpsSample collapsed_jps(collapsed);
    const PreparedSrsSample plain_srs(xs);
    for (int i = 0; i <= 40; ++i) {
      const double t = *lo - 0.5 + (*hi - *lo + 1.0) * i / 40.0;
      // the prepared evaluators share the sorted summation path, so the
      // single-stratum collapse is bit-exact
      expect(collapsed_jps.kdf(epan, h, t) == plain_srs.kdf(epan, h, t),
             "single-stratum JPS equals SRS (prepared)");
      expect(collapsed_jps.edf(t) == plain_srs.edf(t),
             "single-stratum EDF equals SRS (prepared)");
      expect(edf_jps(collapsed, t) == edf_srs(xs, t), "single-stratum EDF equals SRS");
      // the plain-list evaluator sums in input order; agreement is within
      // summation rounding
      const double a = kdf_jps(collapsed, epan, h, t);
      const double b = kdf_srs(xs, epan, h, t);
      expect(std::fabs(a - b) <= 4e-16 * static_cast<double>(xs.size()),
             "single-stratum JPS equals SRS (plain list)");
    }
  }

  // determinism under varying worker counts (bit-identical results)
  ReCurveConfig config;
  config.dist = DistKind::GammaTwo;
  config.n = 40;
  config.set_size = 4;
  config.rho = 0.9;
  config.p_grid = {0.1, 0.5, 0.9};
  config.reps = 512;
  config.seed = 56002;
  config.threads = 1;
  const ReCurve one = re_curve(config);
  config.threads = 2;
  const ReCurve two = re_curve(config);
  config.threads = 7;
  const ReCurve seven = re_curve(config);
  for (std::size_t i = 0; i < config.p_grid.size(); ++i) {
    expect(one.mse_srs[i] == two.mse_srs[i] && one.mse_srs[i] == seven.mse_srs[i],
           "deterministic mse_srs across worker counts");
    expect(one.mse_jps[i] == two.mse_jps[i] && one.mse_jps[i] == seven.mse_jps[i],
           "deterministic mse_jps across worker counts");
    expect(one.re[i] == two.re[i] && one.re[i] == seven.re[i],
           "deterministic re across worker counts");
  }

  report(9, pass,
         pass ? "kernel cdf properties, JPS KDF tails/monotonicity, weight-collapse "
                "equivalences, worker-count determinism"
              : "property failed: " + failure);
}

}  // namespace

int main(int argc, char** argv) {
  bool full = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--full") == 0) full = true;
  }
  const long mc_reps = full ? 100000 : 10000;
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4(100000);
  criterion_5(10000);
  criterion_6(mc_reps);
  criterion_7(mc_reps, full);
  criterion_8();
  criterion_9();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
