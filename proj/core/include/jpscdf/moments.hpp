#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "jpscdf/distributions.hpp"
#include "jpscdf/kernels.hpp"

namespace jps {

using BigRational = mpq_class;

// Exact moments of the random post-strata weights for a JPS design with
// sample size n and set size H.
struct WeightMoments {
  long n = 0;
  int set_size = 0;
  BigRational var_w;   // V(W_r)
  BigRational e_w2j;   // E(W_r^2 J_r)

  double var_w_f() const { return var_w.get_d(); }
  double e_w2j_f() const { return e_w2j.get_d(); }
  // n H E(W_r^2 J_r), the factor entering the JPS bandwidth; tends to 1.
  double nh_e_w2j() const { return BigRational(e_w2j * n * set_size).get_d(); }
};

// V(W_r) = (1/H^2) sum_{l=1}^{H-1} (l/H)^(n-1), evaluated exactly.
BigRational var_w(long n, int set_size);

// E(W_r^2 J_r) via the closed-form alternating triple sum, evaluated in
// exact rational arithmetic (the alternating terms cancel catastrophically
// in doubles once n is a few dozen).
BigRational e_w2j(long n, int set_size);

WeightMoments weight_moments(long n, int set_size);

// Independent oracle: exact E(W_r^2 J_r) by full enumeration over the
// multinomial count vectors (N_1..N_H), weighted by multinomial
// coefficients. Guarded to n <= 10, H <= 4.
BigRational e_w2j_by_enumeration(long n, int set_size);
BigRational var_w_by_enumeration(long n, int set_size);

// Renders "p/q".
std::string to_string(const BigRational& q);

// Asymptotic variance of sqrt(n) (F_jps(t) - F(t)) under perfect ranking:
// (1/H) sum_r F_[r](t) (1 - F_[r](t)). Rejects t with F(t) in {0, 1}.
double jps_asym_variance(const ParentDistribution& dist, double t, int set_size);

// Optional kernel smoothing for the finite-n variance and the efficiency
// factor below; absent means the plain EDF (indicator) estimator.
struct KernelSmoothing {
  KernelSpec kernel;
  double h = 0.0;
};

// Exact finite-n variance of F_{n;jps}(t) under perfect ranking, in the
// form that expands V(K_n(t-X)) of the pooled sample:
//   H E(W1^2 J1) V(K_n(t-X))
//     - [E(W1^2 J1) - H/(H-1) V(W1)] sum_r (E K_n(t-X_[r]) - E K_n(t-X))^2.
double finite_n_variance(const ParentDistribution& dist, double t, long n, int set_size,
                         const std::optional<KernelSmoothing>& smoothing = std::nullopt);

// The algebraically equivalent stratum-wise form,
//   E(W1^2 J1) sum_r V(K_n(t-X_[r]))
//     + H/(H-1) V(W1) sum_r (E K_n(t-X_[r]) - E K_n(t-X))^2,
// computed through the per-stratum moments; kept as a separate evaluation
// route so the two can be checked against each other.
double finite_n_variance_stratum_form(const ParentDistribution& dist, double t, long n,
                                      int set_size,
                                      const std::optional<KernelSmoothing>& smoothing =
                                          std::nullopt);

// Asymptotic variance-reduction factor delta in
//   lim V(F_jps) = V(F_srs) (1 - delta);  0 <= delta < 1.
double efficiency_delta(const ParentDistribution& dist, double t, int set_size,
                        const std::optional<KernelSmoothing>& smoothing = std::nullopt);

// First two moments of K((t - X_[r])/h) against a perfectly ranked stratum
// (or the pooled parent with r = 0), by adaptive quadrature over the kernel
// support window. Exposed for the dual-route variance tests.
struct SmoothedStratumMoments {
  double mean = 0.0;
  double variance = 0.0;
};
SmoothedStratumMoments smoothed_stratum_moments(const ParentDistribution& dist, double t,
                                                int r, int set_size,
                                                const std::optional<KernelSmoothing>& smoothing);

}  // namespace jps
