#include "jpscdf/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "jpscdf/special_functions.hpp"

namespace jps {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kInvSqrtPi = 0.564189583547756286948079451561;
constexpr double kGaussHalfWidth = 4.0;

// Phi(4) - Phi(-4), the truncation normalizer.
double gauss_normalizer() {
  static const double c = normal_cdf(kGaussHalfWidth) - normal_cdf(-kGaussHalfWidth);
  return c;
}

double trunc_gauss_int_x2k() {
  // int x^2 phi over [-4,4] equals (Phi(4)-Phi(-4)) - 8 phi(4).
  static const double v = 1.0 - 8.0 * normal_pdf(kGaussHalfWidth) / gauss_normalizer();
  return v;
}

double trunc_gauss_int_k2() {
  // K(x) = (Phi(x) - Phi(-4)) / c on the support. Uses the antiderivative
  // int Phi^2 dx = x Phi^2 + 2 phi Phi - Phi(x sqrt 2)/sqrt(pi).
  static const double v = [] {
    const double a = kGaussHalfWidth;
    const double c = gauss_normalizer();
    const double phi_a = normal_pdf(a);
    const double cdf_hi = normal_cdf(a);
    const double cdf_lo = normal_cdf(-a);
    const double int_cdf_sq =
        a * (cdf_hi * cdf_hi + cdf_lo * cdf_lo) + 2.0 * phi_a * (cdf_hi - cdf_lo) -
        kInvSqrtPi * (normal_cdf(a * std::sqrt(2.0)) - normal_cdf(-a * std::sqrt(2.0)));
    // int over [-a,a] of Phi(x) dx is exactly a by symmetry.
    return (int_cdf_sq - 2.0 * cdf_lo * a + 2.0 * a * cdf_lo * cdf_lo) / (c * c);
  }();
  return v;
}

}  // namespace

double kernel_pdf(KernelKind kind, double x) {
  switch (kind) {
    case KernelKind::Epanechnikov:
      return (std::fabs(x) <= 1.0) ? 0.75 * (1.0 - x * x) : 0.0;
    case KernelKind::Triangular:
      return (std::fabs(x) <= 1.0) ? 1.0 - std::fabs(x) : 0.0;
    case KernelKind::Cosine:
      return (std::fabs(x) <= 1.0) ? 0.25 * kPi * std::cos(0.5 * kPi * x) : 0.0;
    case KernelKind::TruncatedGaussian:
      return (std::fabs(x) <= kGaussHalfWidth) ? normal_pdf(x) / gauss_normalizer() : 0.0;
  }
  throw std::logic_error("kernel_pdf: unknown kernel kind");
}

double kernel_cdf(KernelKind kind, double x) {
  const double a = (kind == KernelKind::TruncatedGaussian) ? kGaussHalfWidth : 1.0;
  if (x <= -a) return 0.0;
  if (x >= a) return 1.0;
  switch (kind) {
    case KernelKind::Epanechnikov:
      return 0.25 * (2.0 + 3.0 * x - x * x * x);
    case KernelKind::Triangular:
      return (x < 0.0) ? 0.5 * (1.0 + x) * (1.0 + x) : 1.0 - 0.5 * (1.0 - x) * (1.0 - x);
    case KernelKind::Cosine:
      return 0.5 * (1.0 + std::sin(0.5 * kPi * x));
    case KernelKind::TruncatedGaussian:
      return (normal_cdf(x) - normal_cdf(-kGaussHalfWidth)) / gauss_normalizer();
  }
  throw std::logic_error("kernel_cdf: unknown kernel kind");
}

KernelSpec kernel_spec(KernelKind kind) {
  switch (kind) {
    case KernelKind::Epanechnikov:
      return {kind, 1.0, 0.2, 26.0 / 35.0};
    case KernelKind::Triangular:
      return {kind, 1.0, 1.0 / 6.0, 23.0 / 30.0};
    case KernelKind::Cosine:
      return {kind, 1.0, 1.0 - 8.0 / (kPi * kPi), 0.75};
    case KernelKind::TruncatedGaussian:
      return {kind, kGaussHalfWidth, trunc_gauss_int_x2k(), trunc_gauss_int_k2()};
  }
  throw std::logic_error("kernel_spec: unknown kernel kind");
}

const std::string& kernel_name(KernelKind kind) {
  static const std::string names[] = {"epanechnikov", "triangular", "cosine", "gaussian"};
  return names[static_cast<int>(kind)];
}

KernelKind kernel_from_name(const std::string& name) {
  if (name == "epanechnikov") return KernelKind::Epanechnikov;
  if (name == "triangular") return KernelKind::Triangular;
  if (name == "cosine") return KernelKind::Cosine;
  if (name == "gaussian") return KernelKind::TruncatedGaussian;
  throw std::invalid_argument("unknown kernel name: " + name);
}

}  // namespace jps
