#pragma once

/// @file rational.hpp
/// @brief Small-denominator rational approximations of a measured ratio.

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace ktuple {

struct rational_candidate {
  std::int64_t numerator;
  std::int64_t denominator;
  double distance;
};

namespace detail {

using sb_int = std::int64_t;

// p/q < x  (q > 0, or q == 0 meaning +infinity)
inline bool fraction_below(sb_int p, sb_int q, long double x) {
  if (q == 0)
    return false;
  return static_cast<long double>(p) < x * static_cast<long double>(q);
}

inline bool fraction_above(sb_int p, sb_int q, long double x) {
  if (q == 0)
    return true;
  return static_cast<long double>(p) > x * static_cast<long double>(q);
}

} // namespace detail

/// Every reduced fraction p/q > 0 with q <= max_denominator and
/// |p/q - x| <= tolerance, nearest first (ties by smaller denominator).
///
/// Walks the Stern-Brocot tree, whose nodes are exactly the mediants of their
/// bounding ancestors. Runs of steps in one direction are taken in a single
/// jump, which is the continued-fraction expansion of the window edges; any
/// subtree whose interval misses [x - tolerance, x + tolerance] or whose
/// denominators all exceed max_denominator is pruned.
inline std::vector<rational_candidate>
rational_candidates(double x, std::int64_t max_denominator, double tolerance) {
  if (!(x > 0.0))
    throw domain_error("rational_candidates needs x > 0");
  if (max_denominator < 1)
    throw domain_error("max_denominator must be >= 1");
  if (!(tolerance >= 0.0))
    throw domain_error("tolerance must be non-negative");

  using detail::sb_int;
  const long double lo = std::max<long double>(0.0L, (long double)x - tolerance);
  const long double hi = (long double)x + tolerance;

  struct node {
    sb_int a, b, c, d; // open interval (a/b, c/d)
  };
  std::vector<node> stack{{0, 1, 1, 0}};
  // first guess at how many same-direction steps stay outside the window;
  // refined exactly below
  // the cap keeps numerators in range; with a growing denominator any step
  // past max_denominator already prunes the subtree
  const auto step_cap = [&](sb_int step_denominator) -> sb_int {
    return step_denominator > 0 ? max_denominator + 1 : sb_int{1} << 40;
  };
  const auto run_length = [&](long double num, long double denom,
                              sb_int cap) -> sb_int {
    if (!(denom > 0))
      return cap;
    const long double k = std::floor(num / denom);
    return static_cast<sb_int>(std::clamp<long double>(k, 1, cap));
  };
  std::vector<rational_candidate> out;

  while (!stack.empty()) {
    auto [a, b, c, d] = stack.back();
    stack.pop_back();

    // Skip mediants below the window: (a + k c)/(b + k d) < lo.
    if (!detail::fraction_below(c, d, lo) && detail::fraction_below(a + c, b + d, lo)) {
      const long double denom = (long double)c - lo * (long double)d;
      const sb_int cap = step_cap(d);
      sb_int k = run_length(lo * b - a, denom, cap);
      while (k > 1 && !detail::fraction_below(a + k * c, b + k * d, lo))
        --k;
      while (k < cap &&
             detail::fraction_below(a + (k + 1) * c, b + (k + 1) * d, lo))
        ++k;
      a += k * c;
      b += k * d;
    }
    // Skip mediants above the window: (c + k a)/(d + k b) > hi.
    if (!detail::fraction_above(a, b, hi) && detail::fraction_above(a + c, b + d, hi)) {
      const long double denom = hi * (long double)b - (long double)a;
      const sb_int cap = step_cap(b);
      sb_int k = run_length((long double)c - hi * d, denom, cap);
      while (k > 1 && !detail::fraction_above(c + k * a, d + k * b, hi))
        --k;
      while (k < cap &&
             detail::fraction_above(c + (k + 1) * a, d + (k + 1) * b, hi))
        ++k;
      c += k * a;
      d += k * b;
    }

    const sb_int p = a + c;
    const sb_int q = b + d;
    if (q > max_denominator)
      continue;
    const bool below = detail::fraction_below(p, q, lo);
    const bool above = detail::fraction_above(p, q, hi);
    if (!below && !above)
      out.push_back({p, q, std::fabs(double(p) / double(q) - x)});
    if (!below)
      stack.push_back({a, b, p, q});
    if (!above)
      stack.push_back({p, q, c, d});
  }

  std::sort(out.begin(), out.end(), [](const auto &l, const auto &r) {
    if (l.distance != r.distance)
      return l.distance < r.distance;
    return l.denominator < r.denominator;
  });
  return out;
}

} // namespace ktuple
