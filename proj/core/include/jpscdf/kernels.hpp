#pragma once

#include <string>

namespace jps {

enum class KernelKind { Epanechnikov, Triangular, Cosine, TruncatedGaussian };

// A symmetric kernel density with bounded support [-a, a], its integrated
// CDF, and the two integral constants the bandwidth formulas consume.
struct KernelSpec {
  KernelKind kind;
  double a;        // support half-width
  double int_x2k;  // integral of x^2 k(x) over the support
  double int_k2;   // integral of K(x)^2 over the support
};

// Kernel density k(x); zero outside [-a, a].
double kernel_pdf(KernelKind kind, double x);

// Integrated kernel K(x) = int_{-a}^{x} k; exactly 0 below -a, 1 above a.
double kernel_cdf(KernelKind kind, double x);

// Support half-width and integral constants for the given kind.
KernelSpec kernel_spec(KernelKind kind);

// CLI / CSV string names: "epanechnikov", "triangular", "cosine", "gaussian".
const std::string& kernel_name(KernelKind kind);
KernelKind kernel_from_name(const std::string& name);

}  // namespace jps
