#pragma once

/// @file log_integral.hpp
/// @brief Generalized logarithmic integral  int_a^b dx / log(x)^m.
///
/// After x = e^t the integrand becomes e^t / t^m on [log a, log b], which is
/// smooth for a >= 2 and tames the dynamic range of x. The transformed
/// integral is evaluated by globally adaptive Gauss-Kronrod (7/15) bisection.

#include "compensated_sum.hpp"
#include "errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace ktuple {

struct log_integral_value {
  int m = 1;
  double lower = 2.0;
  double upper = 2.0;
  double value = 0.0;
  double abs_error_estimate = 0.0;
};

namespace detail {

struct gk_result {
  double value;
  double error;
};

// Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F> gk_result gauss_kronrod_15(F &&f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kronrod_nodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kronrod_weights[i] * pair;
    if (i % 2 == 1)
      gauss += gauss_weights[i / 2] * pair;
  }
  return {kronrod * half, std::fabs((kronrod - gauss) * half)};
}

struct gk_interval {
  double a, b, value, error;
  bool operator<(const gk_interval &o) const { return error < o.error; }
};

} // namespace detail

/// int_lower^upper dx / log(x)^m for 2 <= lower <= upper.
inline log_integral_value log_integral_between(int m, double lower,
                                               double upper,
                                               double rel_tol = 1e-12) {
  if (m < 1)
    throw domain_error("log integral order must be >= 1");
  if (!(lower >= 2.0))
    throw domain_error("log integral lower limit must be >= 2");
  if (!(upper >= lower))
    throw domain_error("log integral upper limit " + std::to_string(upper) +
                       " is below the lower limit");
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3))
    throw domain_error("relative tolerance must lie in (0, 1e-3]");

  log_integral_value out;
  out.m = m;
  out.lower = lower;
  out.upper = upper;
  if (upper == lower)
    return out;

  const auto integrand = [m](double t) {
    return std::exp(t - m * std::log(t));
  };
  const double ta = std::log(lower);
  const double tb = std::log(upper);

  std::priority_queue<detail::gk_interval> work;
  const int initial = std::max(1, static_cast<int>(std::ceil(tb - ta)));
  double total = 0.0, total_err = 0.0;
  for (int i = 0; i < initial; ++i) {
    const double a = ta + (tb - ta) * i / initial;
    const double b = i + 1 == initial ? tb : ta + (tb - ta) * (i + 1) / initial;
    const auto r = detail::gauss_kronrod_15(integrand, a, b);
    work.push({a, b, r.value, r.error});
    total += r.value;
    total_err += r.error;
  }

  constexpr int max_intervals = 20000;
  // |K15 - G7| bottoms out near a few ulps of the value
  const double floor_err = 64.0 * std::numeric_limits<double>::epsilon();
  while (total_err > rel_tol * std::fabs(total) &&
         static_cast<int>(work.size()) < max_intervals) {
    const detail::gk_interval worst = work.top();
    if (worst.error <= floor_err * std::fabs(worst.value))
      break;
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod_15(integrand, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(integrand, mid, worst.b);
    work.push({worst.a, mid, left.value, left.error});
    work.push({mid, worst.b, right.value, right.error});
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
  }

  compensated_sum value, error;
  for (; !work.empty(); work.pop()) {
    value.add(work.top().value);
    error.add(work.top().error);
  }
  out.value = value.value();
  out.abs_error_estimate = error.value();
  return out;
}

/// int_2^upper dx / log(x)^m.
inline log_integral_value log_integral(int m, double upper,
                                       double rel_tol = 1e-12) {
  if (!(upper >= 2.0))
    throw domain_error("log integral upper limit must be >= 2");
  return log_integral_between(m, 2.0, upper, rel_tol);
}

} // namespace ktuple
