#pragma once

/// @file hardy_littlewood.hpp
/// @brief Truncated Euler products for the Hardy-Littlewood numbers
///
///     c_m = prod_{p > m} p^{m-1} (p - m) / (p - 1)^m
///
/// The product runs over primes m < p <= prime_bound and is accumulated as a
/// compensated sum of logarithms. Each factor is rewritten as
/// (1 - (m-1)x)(1 + x)^{m-1} with x = 1/(p-1) so both logs go through log1p.

#include "compensated_sum.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "sieve.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace ktuple {

inline constexpr std::uint64_t default_hl_prime_bound = 100'000'000;

struct hl_constant {
  int m = 2;
  /// Truncated product; all omitted factors are < 1, so the true constant
  /// lies in [value * exp(-tail_bound), value].
  double value = 0.0;
  std::uint64_t prime_bound = 0;
  /// Upper bound on |log(truncated) - log(true)|.
  double tail_bound = 0.0;
};

namespace detail {

inline std::uint64_t next_prime_after(std::uint64_t n) {
  for (std::uint64_t c = n + 1;; ++c) {
    bool prime = c >= 2;
    for (std::uint64_t d = 2; d * d <= c && prime; ++d)
      prime = c % d != 0;
    if (prime)
      return c;
  }
}

inline double hl_log_factor(int m, std::uint64_t p) {
  const double x = 1.0 / static_cast<double>(p - 1);
  const double k = m - 1;
  return std::log1p(-k * x) + k * std::log1p(x);
}

} // namespace detail

/// Bound on the omitted tail sum_{p > P} |log factor_p|.
///
/// Per factor, with x = 1/(p-1) and y = (m-1)x <= (m-1)/P < 1,
///   0 <= -log factor_p <= ((m-1)^2 / (2(1-y)) + (m-1)/2) x^2,
/// and sum_{p > P} 1/(p-1)^2 <= ((P+1)/P)^2 * 2.51012 / (P ln P) by partial
/// summation with pi(t) < 1.25506 t / ln t (Rosser-Schoenfeld).
inline double hl_tail_bound(int m, std::uint64_t prime_bound) {
  const double P = static_cast<double>(prime_bound);
  const double k = m - 1;
  const double y = k / P;
  const double per_x2 = k * k / (2.0 * (1.0 - y)) + k / 2.0;
  const double growth = (P + 1.0) / P;
  const double inverse_square_tail =
      growth * growth * 2.51012 / (P * std::log(P));
  return per_x2 * inverse_square_tail;
}

/// c_m for m = 2..6 truncated at prime_bound. Blocks of primes are summed
/// independently and tree-merged, so the result does not depend on threads.
inline hl_constant compute_hl_constant(int m, std::uint64_t prime_bound,
                                       unsigned threads = 1) {
  if (m < 2 || m > 6)
    throw domain_error("Hardy-Littlewood numbers are provided for m = 2..6, "
                       "got m = " +
                       std::to_string(m));
  const std::uint64_t first = detail::next_prime_after(m);
  if (prime_bound < first)
    throw domain_error("prime bound " + std::to_string(prime_bound) +
                       " is below the first factor's prime " +
                       std::to_string(first));

  const std::uint64_t block = default_segment_length;
  const std::uint64_t lo0 = static_cast<std::uint64_t>(m) + 1;
  const std::uint64_t blocks = (prime_bound - lo0) / block + 1;
  const base_primes base(prime_bound);
  std::vector<compensated_sum> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::uint64_t lo = lo0 + b * block;
    const std::uint64_t hi = std::min(prime_bound, lo + block - 1);
    compensated_sum acc;
    for_each_prime(range_bounds(lo, hi), base,
                   [&](std::uint64_t p) { acc.add(detail::hl_log_factor(m, p)); });
    partial[b] = acc;
  });

  hl_constant out;
  out.m = m;
  out.prime_bound = prime_bound;
  out.value = std::exp(tree_merge(partial).value());
  out.tail_bound = hl_tail_bound(m, prime_bound);
  return out;
}

/// Process-wide memo of compute_hl_constant keyed by (m, prime_bound).
inline hl_constant cached_hl_constant(int m, std::uint64_t prime_bound,
                                      unsigned threads = 1) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::uint64_t>, hl_constant> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find({m, prime_bound}); it != memo.end())
      return it->second;
  }
  const hl_constant c = compute_hl_constant(m, prime_bound, threads);
  std::lock_guard lock(mutex);
  memo.emplace(std::pair{m, prime_bound}, c);
  return c;
}

} // namespace ktuple
