#include "jpscdf/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jpscdf/bandwidth.hpp"
#include "jpscdf/moments.hpp"
#include "jpscdf/parallel.hpp"
#include "jpscdf/special_functions.hpp"

namespace jps {

void RankingModel::validate() const {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("RankingModel: rho must lie in [0, 1]");
  }
}

int judgment_rank(double score, const std::vector<double>& comparison_scores,
                  RandomStream& rng) {
  int less = 0, ties = 0;
  for (const double o : comparison_scores) {
    if (o < score) ++less;
    else if (o == score) ++ties;
  }
  int rank = 1 + less;
  if (ties > 0) rank += static_cast<int>(rng.next_below(static_cast<std::uint64_t>(ties) + 1));
  return rank;
}

JpsSample draw_jps(const ParentDistribution& dist, long n, int set_size,
                   const RankingModel& model, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("draw_jps: n must be >= 1");
  if (set_size < 2) throw std::invalid_argument("draw_jps: H must be >= 2");
  model.validate();
  const bool perfect = model.rho == 1.0;
  const double mu = dist.mean();
  const double sigma = std::sqrt(dist.variance());
  const double noise_scale = perfect ? 0.0 : std::sqrt(1.0 - model.rho * model.rho);

  JpsSample sample;
  sample.set_size = set_size;
  sample.pairs.reserve(static_cast<std::size_t>(n));
  std::vector<double> comparisons(static_cast<std::size_t>(set_size - 1));
  for (long i = 0; i < n; ++i) {
    const double x = dist.sample(rng);
    for (auto& c : comparisons) c = dist.sample(rng);
    int rank;
    if (perfect) {
      rank = judgment_rank(x, comparisons, rng);
    } else {
      const double y =
          model.rho * (x - mu) / sigma + noise_scale * normal_quantile(rng.next_open01());
      std::vector<double> y_comparisons(comparisons.size());
      for (std::size_t j = 0; j < comparisons.size(); ++j) {
        y_comparisons[j] = model.rho * (comparisons[j] - mu) / sigma +
                           noise_scale * normal_quantile(rng.next_open01());
      }
      rank = judgment_rank(y, y_comparisons, rng);
    }
    sample.pairs.push_back({x, rank});
  }
  return sample;
}

double mc_standard_error(const std::vector<double>& per_rep_squared_errors) {
  const std::size_t m = per_rep_squared_errors.size();
  if (m < 2) throw std::invalid_argument("mc_standard_error: need at least two replications");
  double mean = 0.0;
  for (const double v : per_rep_squared_errors) mean += v;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (const double v : per_rep_squared_errors) ss += (v - mean) * (v - mean);
  const double sample_var = ss / static_cast<double>(m - 1);
  return std::sqrt(sample_var / static_cast<double>(m));
}

std::vector<double> default_p_grid() {
  std::vector<double> grid(99);
  for (int i = 0; i < 99; ++i) grid[i] = (i + 1) / 100.0;
  return grid;
}

namespace {

struct BlockSums {
  std::vector<double> s1_srs, s2_srs, s1_jps, s2_jps;
  long clamps = 0, caps = 0;
};

constexpr std::size_t kRepsPerBlock = 64;

double sample_range(const std::vector<double>& xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return *hi - *lo;
}

}  // namespace

ReCurve re_curve(const ReCurveConfig& config) {
  if (config.reps < 1) throw std::invalid_argument("re_curve: reps must be >= 1");
  if (config.p_grid.empty()) throw std::invalid_argument("re_curve: p grid must be nonempty");
  for (const double p : config.p_grid) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("re_curve: p must lie in (0,1)");
  }
  const ParentDistribution dist(config.dist);
  const RankingModel model{config.rho};
  model.validate();
  const KernelSpec kernel = kernel_spec(config.kernel);
  const std::size_t n_p = config.p_grid.size();

  std::vector<double> quantiles(n_p);
  for (std::size_t i = 0; i < n_p; ++i) quantiles[i] = dist.quantile(config.p_grid[i]);

  // The (n H E(W1^2 J1))^(1/3) bandwidth factor is constant per config.
  const double jps_factor = std::cbrt(weight_moments(config.n, config.set_size).nh_e_w2j());

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
      JpsSample jps_sample = draw_jps(dist, config.n, config.set_size, model, jps_stream);

      std::vector<double> srs_xs;
      if (config.couple_arms) {
        srs_xs.reserve(jps_sample.pairs.size());
        for (const auto& pr : jps_sample.pairs) srs_xs.push_back(pr.x);
      } else {
        RandomStream srs_stream(config.seed, rep, 1);
        srs_xs = dist.sample(static_cast<std::size_t>(config.n), srs_stream);
      }

      const ReferenceFit srs_fit = fit_reference(srs_xs, dist.support());
      const double srs_cap = sample_range(srs_xs);
      const PreparedSrsSample srs(std::move(srs_xs));

      std::vector<double> jps_xs;
      jps_xs.reserve(jps_sample.pairs.size());
      for (const auto& pr : jps_sample.pairs) jps_xs.push_back(pr.x);
      const ReferenceFit jps_fit = fit_reference(jps_xs, dist.support());
      const double jps_cap = sample_range(jps_xs);
      const PreparedJpsSample jps(jps_sample);

      for (std::size_t i = 0; i < n_p; ++i) {
        const double t = quantiles[i];
        const double truth = config.p_grid[i];

        const BandwidthResult hs = plugin_bandwidth(srs_fit, t, config.n, 0, kernel, srs_cap);
        sums.clamps += hs.slope_clamped ? 1 : 0;
        sums.caps += hs.capped ? 1 : 0;
        const double est_srs = srs.kdf(kernel, hs.h, t);
        const double err_srs = est_srs - truth;
        sums.s1_srs[i] += err_srs * err_srs;
        sums.s2_srs[i] += err_srs * err_srs * err_srs * err_srs;

        double err_jps;
        if (config.identical_arms_self_test) {
          err_jps = err_srs;
        } else {
          BandwidthResult hj = plugin_bandwidth(jps_fit, t, config.n, 0, kernel, /*cap=*/0.0);
          hj.h *= jps_factor;
          if (hj.h > jps_cap) {
            hj.h = jps_cap;
            hj.capped = true;
          }
          sums.clamps += hj.slope_clamped ? 1 : 0;
          sums.caps += hj.capped ? 1 : 0;
          const double est_jps = jps.kdf(kernel, hj.h, t);
          err_jps = est_jps - truth;
        }
        sums.s1_jps[i] += err_jps * err_jps;
        sums.s2_jps[i] += err_jps * err_jps * err_jps * err_jps;
      }
    }
    blocks[block] = std::move(sums);
  });

  ReCurve out;
  out.config = config;
  out.p_grid = config.p_grid;
  out.mse_srs.assign(n_p, 0.0);
  out.se_srs.assign(n_p, 0.0);
  out.mse_jps.assign(n_p, 0.0);
  out.se_jps.assign(n_p, 0.0);
  out.re.assign(n_p, 0.0);
  std::vector<double> s2_srs(n_p, 0.0), s2_jps(n_p, 0.0);
  for (const BlockSums& b : blocks) {
    for (std::size_t i = 0; i < n_p; ++i) {
      out.mse_srs[i] += b.s1_srs[i];
      out.mse_jps[i] += b.s1_jps[i];
      s2_srs[i] += b.s2_srs[i];
      s2_jps[i] += b.s2_jps[i];
    }
    out.slope_clamp_events += b.clamps;
    out.cap_events += b.caps;
  }
  const double m = static_cast<double>(reps);
  for (std::size_t i = 0; i < n_p; ++i) {
    out.mse_srs[i] /= m;
    out.mse_jps[i] /= m;
    if (reps > 1) {
      const double var_srs = std::max(0.0, (s2_srs[i] / m - out.mse_srs[i] * out.mse_srs[i])) *
                             m / (m - 1.0);
      const double var_jps = std::max(0.0, (s2_jps[i] / m - out.mse_jps[i] * out.mse_jps[i])) *
                             m / (m - 1.0);
      out.se_srs[i] = std::sqrt(var_srs / m);
      out.se_jps[i] = std::sqrt(var_jps / m);
    }
    out.re[i] = out.mse_srs[i] / out.mse_jps[i];
  }
  return out;
}

}  // namespace jps
