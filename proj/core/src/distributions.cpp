#include "jpscdf/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "jpscdf/special_functions.hpp"

namespace jps {

namespace {

constexpr double kT5PdfNorm = 0.379606689821978608450797;  // Gamma(3)/(sqrt(5 pi) Gamma(5/2))

double t5_pdf(double x) {
  const double u = 1.0 + x * x / 5.0;
  return kT5PdfNorm / (u * u * u);
}

double t5_cdf(double x) {
  const double ib = reg_beta(2.5, 0.5, 5.0 / (5.0 + x * x));
  return (x >= 0.0) ? 1.0 - 0.5 * ib : 0.5 * ib;
}

double gamma_pdf(double shape, double x) {
  if (x <= 0.0) return 0.0;
  return std::exp((shape - 1.0) * std::log(x) - x - std::lgamma(shape));
}

double gamma_cdf(double shape, double x) { return (x <= 0.0) ? 0.0 : reg_gamma_p(shape, x); }

// Monotone CDF inversion: bracket by doubling around a starting guess, then
// safeguarded Newton. cdf must be strictly increasing where pdf > 0.
template <typename Cdf, typename Pdf>
double invert_cdf(const Cdf& cdf, const Pdf& pdf, double p, double guess, double lower_bound,
                  double upper_bound) {
  double lo = guess, hi = guess;
  double step = std::max(1.0, std::fabs(guess));
  while (cdf(lo) > p && lo > lower_bound) lo = std::max(lower_bound, lo - step), step *= 2.0;
  step = std::max(1.0, std::fabs(guess));
  while (cdf(hi) < p && hi < upper_bound) hi = std::min(upper_bound, hi + step), step *= 2.0;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = cdf(x) - p;
    if (fx > 0.0) hi = x; else lo = x;
    const double dx = pdf(x);
    double next = (dx > 0.0) ? x - fx / dx : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // Newton left the bracket
    if (std::fabs(next - x) <= 1e-14 * (1.0 + std::fabs(next))) return next;
    x = next;
  }
  return x;
}

}  // namespace

SupportKind ParentDistribution::support() const {
  switch (kind_) {
    case DistKind::StdNormal:
    case DistKind::StudentT5:
    case DistKind::StdLaplace:
      return SupportKind::RealLine;
    case DistKind::Exp1:
    case DistKind::GammaHalf:
    case DistKind::GammaTwo:
      return SupportKind::PositiveHalfLine;
  }
  throw std::logic_error("ParentDistribution: unknown kind");
}

double ParentDistribution::mean() const {
  switch (kind_) {
    case DistKind::StdNormal:
    case DistKind::StudentT5:
    case DistKind::StdLaplace:
      return 0.0;
    case DistKind::Exp1:
      return 1.0;
    case DistKind::GammaHalf:
      return 0.5;
    case DistKind::GammaTwo:
      return 2.0;
  }
  throw std::logic_error("ParentDistribution: unknown kind");
}

double ParentDistribution::variance() const {
  switch (kind_) {
    case DistKind::StdNormal:
      return 1.0;
    case DistKind::StudentT5:
      return 5.0 / 3.0;
    case DistKind::StdLaplace:
      return 2.0;
    case DistKind::Exp1:
      return 1.0;
    case DistKind::GammaHalf:
      return 0.5;
    case DistKind::GammaTwo:
      return 2.0;
  }
  throw std::logic_error("ParentDistribution: unknown kind");
}

double ParentDistribution::pdf(double x) const {
  switch (kind_) {
    case DistKind::StdNormal:
      return normal_pdf(x);
    case DistKind::StudentT5:
      return t5_pdf(x);
    case DistKind::StdLaplace:
      return 0.5 * std::exp(-std::fabs(x));
    case DistKind::Exp1:
      return (x < 0.0) ? 0.0 : std::exp(-x);
    case DistKind::GammaHalf:
      return gamma_pdf(0.5, x);
    case DistKind::GammaTwo:
      return gamma_pdf(2.0, x);
  }
  throw std::logic_error("ParentDistribution: unknown kind");
}

double ParentDistribution::cdf(double x) const {
  switch (kind_) {
    case DistKind::StdNormal:
      return normal_cdf(x);
    case DistKind::StudentT5:
      return t5_cdf(x);
    case DistKind::StdLaplace:
      return (x < 0.0) ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
    case DistKind::Exp1:
      return (x <= 0.0) ? 0.0 : -std::expm1(-x);
    case DistKind::GammaHalf:
      return gamma_cdf(0.5, x);
    case DistKind::GammaTwo:
      return gamma_cdf(2.0, x);
  }
  throw std::logic_error("ParentDistribution: unknown kind");
}

double ParentDistribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("ParentDistribution::quantile: p must be in (0,1)");
  }
  switch (kind_) {
    case DistKind::StdNormal:
      return normal_quantile(p);
    case DistKind::StudentT5: {
      const double guess = normal_quantile(p) * std::sqrt(5.0 / 3.0);
      return invert_cdf([](double x) { return t5_cdf(x); },
                        [](double x) { return t5_pdf(x); }, p, guess, -1e12, 1e12);
    }
    case DistKind::StdLaplace:
      return (p < 0.5) ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p));
    case DistKind::Exp1:
      return -std::log1p(-p);
    case DistKind::GammaHalf:
    case DistKind::GammaTwo: {
      const double shape = (kind_ == DistKind::GammaHalf) ? 0.5 : 2.0;
      // Wilson-Hilferty starting point.
      const double z = normal_quantile(p);
      const double c = 1.0 - 1.0 / (9.0 * shape) + z / (3.0 * std::sqrt(shape));
      const double guess = std::max(1e-12, shape * c * c * c);
      return invert_cdf([shape](double x) { return gamma_cdf(shape, x); },
                        [shape](double x) { return gamma_pdf(shape, x); }, p, guess, 0.0, 1e12);
    }
  }
  throw std::logic_error("ParentDistribution: unknown kind");
}

std::vector<double> ParentDistribution::sample(std::size_t n, RandomStream& rng) const {
  std::vector<double> draws(n);
  for (auto& x : draws) x = sample(rng);
  return draws;
}

double order_stat_cdf_at(double u, int r, int set_size) {
  if (set_size < 1 || r < 1 || r > set_size) {
    throw std::invalid_argument("order_stat_cdf: rank must satisfy 1 <= r <= H");
  }
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return reg_beta(static_cast<double>(r), static_cast<double>(set_size - r + 1), u);
}

double order_stat_cdf(const ParentDistribution& dist, double t, int r, int set_size) {
  return order_stat_cdf_at(dist.cdf(t), r, set_size);
}

const std::string& dist_name(DistKind kind) {
  static const std::string names[] = {"normal", "t5", "laplace", "exp1", "gamma05", "gamma2"};
  return names[static_cast<int>(kind)];
}

DistKind dist_from_name(const std::string& name) {
  if (name == "normal") return DistKind::StdNormal;
  if (name == "t5") return DistKind::StudentT5;
  if (name == "laplace") return DistKind::StdLaplace;
  if (name == "exp1") return DistKind::Exp1;
  if (name == "gamma05") return DistKind::GammaHalf;
  if (name == "gamma2") return DistKind::GammaTwo;
  throw std::invalid_argument("unknown distribution name: " + name);
}

}  // namespace jps
