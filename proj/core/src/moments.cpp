#include "jpscdf/moments.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jpscdf/quadrature.hpp"

namespace jps {

namespace {

void check_design(long n, int set_size) {
  if (n < 1) throw std::invalid_argument("weight moments: n must be >= 1");
  if (set_size < 2) throw std::invalid_argument("weight moments: H must be >= 2");
}

mpz_class mpz_pow(const mpz_class& base, unsigned long exp) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace

BigRational var_w(long n, int set_size) {
  check_design(n, set_size);
  const mpz_class h(set_size);
  // (1/H^2) sum_l (l/H)^(n-1)  ==  sum_l l^(n-1) / H^(n+1)
  mpz_class numerator = 0;
  for (int l = 1; l < set_size; ++l) {
    numerator += mpz_pow(mpz_class(l), static_cast<unsigned long>(n - 1));
  }
  BigRational result(numerator, mpz_pow(h, static_cast<unsigned long>(n + 1)));
  result.canonicalize();
  return result;
}

BigRational e_w2j(long n, int set_size) {
  check_design(n, set_size);
  BigRational bracket(1, n);
  for (int d = 2; d <= set_size; ++d) {
    const mpz_class choose_strata = binom(set_size - 1, d - 1);
    for (int j = 1; j <= d - 1; ++j) {
      const mpz_class choose_j = binom(d - 1, j - 1);
      const int sign = (j % 2 == 1) ? 1 : -1;
      for (long n1 = 1; n1 <= n - d + 1; ++n1) {
        mpz_class term = choose_strata * choose_j * binom(n, n1) *
                         mpz_pow(mpz_class(d - j), static_cast<unsigned long>(n - n1));
        BigRational contribution(sign * term, mpz_class(d) * d * n1);
        contribution.canonicalize();
        bracket += contribution;
      }
    }
  }
  BigRational result = bracket / mpz_pow(mpz_class(set_size), static_cast<unsigned long>(n));
  result.canonicalize();
  return result;
}

// Memoized: the JPS bandwidth consults these once per (n, H) but is called
// per replication and evaluation point.
WeightMoments weight_moments(long n, int set_size) {
  static std::mutex mutex;
  static std::map<std::pair<long, int>, WeightMoments> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(n, set_size);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, WeightMoments{n, set_size, var_w(n, set_size), e_w2j(n, set_size)})
             .first;
  }
  return it->second;
}

namespace {

// Walks all weak compositions (N_1..N_H) of n, calling visit(counts, weight)
// with the multinomial coefficient n!/(prod N_r!).
template <typename Visit>
void for_each_composition(long n, int set_size, const Visit& visit) {
  std::vector<long> counts(set_size, 0);
  mpz_class n_factorial;
  mpz_fac_ui(n_factorial.get_mpz_t(), static_cast<unsigned long>(n));
  const auto recurse = [&](auto&& self, int index, long remaining) -> void {
    if (index == set_size - 1) {
      counts[index] = remaining;
      mpz_class weight = n_factorial;
      for (const long c : counts) {
        mpz_class cf;
        mpz_fac_ui(cf.get_mpz_t(), static_cast<unsigned long>(c));
        weight /= cf;
      }
      visit(counts, weight);
      return;
    }
    for (long take = 0; take <= remaining; ++take) {
      counts[index] = take;
      self(self, index + 1, remaining - take);
    }
  };
  recurse(recurse, 0, n);
}

void check_enumerable(long n, int set_size) {
  check_design(n, set_size);
  if (n > 10 || set_size > 4) {
    throw std::invalid_argument("enumeration oracle: guarded to n <= 10, H <= 4");
  }
}

}  // namespace

BigRational e_w2j_by_enumeration(long n, int set_size) {
  check_enumerable(n, set_size);
  // E over N ~ Multinomial(n, 1/H..1/H) of W_1^2 J_1
  //   = sum_N P(N) 1{N_1>0} / (d(N)^2 N_1).
  BigRational total(0);
  for_each_composition(n, set_size, [&](const std::vector<long>& counts, const mpz_class& w) {
    if (counts[0] == 0) return;
    long d = 0;
    for (const long c : counts) d += (c > 0) ? 1 : 0;
    BigRational value(w, mpz_class(d) * d * counts[0]);
    total += value;
  });
  total /= mpz_pow(mpz_class(set_size), static_cast<unsigned long>(n));
  total.canonicalize();
  return total;
}

BigRational var_w_by_enumeration(long n, int set_size) {
  check_enumerable(n, set_size);
  BigRational second_moment(0);
  for_each_composition(n, set_size, [&](const std::vector<long>& counts, const mpz_class& w) {
    if (counts[0] == 0) return;
    long d = 0;
    for (const long c : counts) d += (c > 0) ? 1 : 0;
    second_moment += BigRational(w, mpz_class(d) * d);
  });
  second_moment /= mpz_pow(mpz_class(set_size), static_cast<unsigned long>(n));
  // E(W_1) = 1/H exactly.
  BigRational result = second_moment - BigRational(1, mpz_class(set_size) * set_size);
  result.canonicalize();
  return result;
}

std::string to_string(const BigRational& q) { return q.get_str(); }

double jps_asym_variance(const ParentDistribution& dist, double t, int set_size) {
  const double u = dist.cdf(t);
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("jps_asym_variance: F(t) must lie strictly inside (0,1)");
  }
  double sum = 0.0;
  for (int r = 1; r <= set_size; ++r) {
    const double fr = order_stat_cdf_at(u, r, set_size);
    sum += fr * (1.0 - fr);
  }
  return sum / set_size;
}

namespace {

// Density of the r-th order statistic of a size-H sample (r >= 1), or the
// parent itself for r = 0.
double stratum_pdf(const ParentDistribution& dist, double x, int r, int set_size) {
  if (r == 0) return dist.pdf(x);
  const double u = dist.cdf(x);
  double logc = std::lgamma(set_size + 1.0) - std::lgamma(static_cast<double>(r)) -
                std::lgamma(static_cast<double>(set_size - r + 1));
  double base = std::exp(logc);
  return base * std::pow(u, r - 1) * std::pow(1.0 - u, set_size - r) * dist.pdf(x);
}

double stratum_cdf(const ParentDistribution& dist, double x, int r, int set_size) {
  return (r == 0) ? dist.cdf(x) : order_stat_cdf(dist, x, r, set_size);
}

}  // namespace

SmoothedStratumMoments smoothed_stratum_moments(const ParentDistribution& dist, double t, int r,
                                                int set_size,
                                                const std::optional<KernelSmoothing>& smoothing) {
  if (!smoothing) {
    const double mean = stratum_cdf(dist, t, r, set_size);
    return {mean, mean * (1.0 - mean)};
  }
  const KernelSpec& spec = smoothing->kernel;
  const double h = smoothing->h;
  if (!(h > 0.0)) throw std::invalid_argument("smoothed_stratum_moments: h must be positive");
  double lo = t - spec.a * h;
  double hi = t + spec.a * h;
  // Clamp the window to the support: below it the integrand vanishes, and
  // integrating across the density's jump at the support edge would leave
  // the discontinuity inside a quadrature panel.
  if (dist.support() == SupportKind::PositiveHalfLine) {
    lo = std::max(lo, 0.0);
    hi = std::max(hi, lo);
  }
  // E K^m((t-X)/h) = F_[r](t-ah) + int_{t-ah}^{t+ah} K^m((t-x)/h) f_[r](x) dx.
  const double tail = stratum_cdf(dist, lo, r, set_size);
  const auto moment = [&](int power) {
    if (!(hi > lo)) return tail;
    const auto integrand = [&](double x) {
      const double k = kernel_cdf(spec.kind, (t - x) / h);
      return (power == 1 ? k : k * k) * stratum_pdf(dist, x, r, set_size);
    };
    return tail + integrate(integrand, lo, hi, 1e-12, 1e-15).value;
  };
  const double m1 = moment(1);
  const double m2 = moment(2);
  return {m1, std::max(0.0, m2 - m1 * m1)};
}

double finite_n_variance(const ParentDistribution& dist, double t, long n, int set_size,
                         const std::optional<KernelSmoothing>& smoothing) {
  check_design(n, set_size);
  const WeightMoments wm = weight_moments(n, set_size);
  const SmoothedStratumMoments pooled = smoothed_stratum_moments(dist, t, 0, set_size, smoothing);
  double deviation_sq = 0.0;
  for (int r = 1; r <= set_size; ++r) {
    const double er = smoothed_stratum_moments(dist, t, r, set_size, smoothing).mean;
    deviation_sq += (er - pooled.mean) * (er - pooled.mean);
  }
  const double ew2j = wm.e_w2j_f();
  const double vw = wm.var_w_f();
  return set_size * ew2j * pooled.variance -
         (ew2j - set_size / (set_size - 1.0) * vw) * deviation_sq;
}

double finite_n_variance_stratum_form(const ParentDistribution& dist, double t, long n,
                                      int set_size,
                                      const std::optional<KernelSmoothing>& smoothing) {
  check_design(n, set_size);
  const WeightMoments wm = weight_moments(n, set_size);
  const double pooled_mean = smoothed_stratum_moments(dist, t, 0, set_size, smoothing).mean;
  double variance_sum = 0.0;
  double deviation_sq = 0.0;
  for (int r = 1; r <= set_size; ++r) {
    const SmoothedStratumMoments m = smoothed_stratum_moments(dist, t, r, set_size, smoothing);
    variance_sum += m.variance;
    deviation_sq += (m.mean - pooled_mean) * (m.mean - pooled_mean);
  }
  return wm.e_w2j_f() * variance_sum +
         set_size / (set_size - 1.0) * wm.var_w_f() * deviation_sq;
}

double efficiency_delta(const ParentDistribution& dist, double t, int set_size,
                        const std::optional<KernelSmoothing>& smoothing) {
  if (set_size < 2) throw std::invalid_argument("efficiency_delta: H must be >= 2");
  const SmoothedStratumMoments pooled = smoothed_stratum_moments(dist, t, 0, set_size, smoothing);
  if (!(pooled.variance > 0.0)) {
    throw std::domain_error("efficiency_delta: V(K_n(t-X)) must be positive");
  }
  double deviation_sq = 0.0;
  for (int r = 1; r <= set_size; ++r) {
    const double er = smoothed_stratum_moments(dist, t, r, set_size, smoothing).mean;
    deviation_sq += (er - pooled.mean) * (er - pooled.mean);
  }
  return deviation_sq / (set_size * pooled.variance);
}

}  // namespace jps
