#include "jpscdf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace jps {

namespace {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights; values from the QUADPACK dqk15 tables.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = f(center);
  double kronrod = kWgk[7] * f_center;
  double gauss = kWg[3] * f_center;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  const double diff = std::fabs(kronrod - gauss);
  // QUADPACK-style sharpened error estimate.
  const double err = (diff > 0.0) ? std::min(diff, std::pow(200.0 * diff, 1.5)) : 0.0;
  return Panel{lo, hi, kronrod, std::max(err, diff * 1e-6)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double rel_tol, double abs_tol, int max_intervals) {
  if (!(lo < hi)) {
    if (lo == hi) return {0.0, 0.0};
    QuadratureResult r = integrate(f, hi, lo, rel_tol, abs_tol, max_intervals);
    return {-r.value, r.error_estimate};
  }
  std::priority_queue<Panel> panels;
  panels.push(evaluate_panel(f, lo, hi));
  double total = panels.top().value;
  double total_err = panels.top().error;
  int used = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
    if (used >= max_intervals) {
      throw QuadratureError("integrate: subdivision budget exhausted before tolerance");
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      throw QuadratureError("integrate: interval no longer subdividable at requested tolerance");
    }
    const Panel left = evaluate_panel(f, worst.lo, mid);
    const Panel right = evaluate_panel(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++used;
  }
  return {total, total_err};
}

}  // namespace jps
