#pragma once

/// @file pdf.hpp
/// @brief Prime distribution factors: empirical estimates and the conjectured
/// closed forms.
///
/// The prime distribution factor C of a pattern with m offsets is the constant
/// for which N(pattern, n) ~ C * int_2^n dx / log(x)^m. For the canonical
/// basic tuples the conjectured values are
///
///     C(2) = 2 c_2,   C(3) = (9/2) c_3,   C(4) = (27/2) c_4,
///
/// and a pair p, p + n (n even) scales C(2) by (q-1)/(q-2) for every odd prime
/// q dividing n. No rational factor is known for m >= 5.

#include "counter.hpp"
#include "errors.hpp"
#include "hardy_littlewood.hpp"
#include "log_integral.hpp"
#include "pattern.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace ktuple {

struct analysis_options {
  std::uint64_t prime_bound = default_hl_prime_bound;
  double li_rel_tol = 1e-12;
  unsigned threads = 1;
};

/// Below this limit an empirical factor is reported with a warning.
inline constexpr std::uint64_t meaningful_pdf_limit = 10'000;
/// Below this limit no estimate is produced at all.
inline constexpr std::uint64_t minimum_pdf_limit = 100;

struct rational_factor {
  std::int64_t numerator;
  std::int64_t denominator;
  double value() const { return double(numerator) / double(denominator); }
};

/// 2, 9/2, 27/2 for m = 2, 3, 4.
inline rational_factor conjectured_factor(int m) {
  switch (m) {
  case 2:
    return {2, 1};
  case 3:
    return {9, 2};
  case 4:
    return {27, 2};
  case 5:
  case 6:
    throw domain_error("no conjectured rational factor for m = " +
                       std::to_string(m) + "; measure it with ratio_to_hl");
  default:
    throw domain_error("conjectured factors exist only for m = 2..4, got " +
                       std::to_string(m));
  }
}

inline double conjectured_pdf(int m, const analysis_options &opt = {}) {
  const rational_factor f = conjectured_factor(m);
  return f.value() * cached_hl_constant(m, opt.prime_bound, opt.threads).value;
}

/// Ratio gap_pdf(n) / C(2): product of (q-1)/(q-2) over odd primes q | n.
inline double gap_factor(std::uint64_t n) {
  if (n < 2 || n % 2 != 0)
    throw domain_error("gap must be an even integer >= 2, got " +
                       std::to_string(n));
  while (n % 2 == 0)
    n /= 2;
  double factor = 1.0;
  for (std::uint64_t q = 3; q * q <= n; q += 2) {
    if (n % q != 0)
      continue;
    factor *= double(q - 1) / double(q - 2);
    while (n % q == 0)
      n /= q;
  }
  if (n > 1)
    factor *= double(n - 1) / double(n - 2);
  return factor;
}

/// Conjectured factor of the pair p, p + n.
inline double gap_pdf(std::uint64_t n, const analysis_options &opt = {}) {
  const double factor = gap_factor(n);
  return conjectured_pdf(2, opt) * factor;
}

/// Conjectured factor for patterns that have one, otherwise nullopt.
///
/// Covered: every pair (0, n), and the canonical basic triple and quadruple
/// together with their mirror images. Other basic patterns can have different
/// singular series (e.g. (0,6,12) occupies a single class mod 3), so they get
/// no conjecture attached.
inline std::optional<double> conjecture_for(const offset_pattern &pattern,
                                            const analysis_options &opt = {}) {
  const auto m = pattern.m();
  if (m == 2)
    return gap_pdf(pattern.span(), opt);
  if (m == 3 || m == 4) {
    const offset_pattern canonical = basic_pattern_for(m);
    if (pattern == canonical || pattern == canonical.mirrored())
      return conjectured_pdf(static_cast<int>(m), opt);
  }
  return std::nullopt;
}

struct pdf_estimate {
  offset_pattern pattern{0, 2};
  std::uint64_t limit = 0;
  std::uint64_t count = 0;
  log_integral_value denominator;
  double c_estimate = 0.0;
  std::optional<double> conjectured;
  /// |c_estimate - conjectured|
  std::optional<double> deviation;
  /// deviation / conjectured
  std::optional<double> relative_deviation;
  /// limit below meaningful_pdf_limit; the fit is not meaningful there.
  bool low_limit_warning = false;
};

inline pdf_estimate estimate_pdf(const offset_pattern &pattern,
                                 std::uint64_t limit, std::uint64_t count,
                                 const analysis_options &opt = {}) {
  if (limit < minimum_pdf_limit)
    throw domain_error("no PDF estimate below limit " +
                       std::to_string(minimum_pdf_limit));
  pdf_estimate e;
  e.pattern = pattern;
  e.limit = limit;
  e.count = count;
  e.low_limit_warning = limit < meaningful_pdf_limit;
  e.denominator = log_integral(static_cast<int>(pattern.m()),
                               static_cast<double>(limit), opt.li_rel_tol);
  e.c_estimate = static_cast<double>(count) / e.denominator.value;
  e.conjectured = conjecture_for(pattern, opt);
  if (e.conjectured) {
    e.deviation = std::fabs(e.c_estimate - *e.conjectured);
    e.relative_deviation = *e.deviation / *e.conjectured;
  }
  return e;
}

inline pdf_estimate estimate_pdf(const constellation_count &count,
                                 const analysis_options &opt = {}) {
  return estimate_pdf(count.job.pattern, count.job.limit, count.count, opt);
}

/// c_estimate / c_m: the empirical rational factor in front of c_m.
inline double ratio_to_hl(const pdf_estimate &estimate,
                          const analysis_options &opt = {}) {
  const int m = static_cast<int>(estimate.pattern.m());
  return estimate.c_estimate /
         cached_hl_constant(m, opt.prime_bound, opt.threads).value;
}

} // namespace ktuple
