#pragma once

/// @file sieve.hpp
/// @brief Segmented sieve of Eratosthenes over arbitrary ranges [lo, hi].
///
/// Only odd numbers are represented in the sieve buffer; 2 is emitted
/// separately. Each window is processed in cache-sized blocks, carrying the
/// next multiple of every base prime from one block to the next.

#include "errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ktuple {

/// Default number of integers per segment.
inline constexpr std::uint64_t default_segment_length = 10'000'000;

/// Largest window (hi - lo + 1) a single primes_in_range call may materialize.
inline constexpr std::uint64_t default_buffer_budget = 1'000'000'000;

/// Upper limit on any sieved value; keeps p*p and hi + span clear of overflow.
inline constexpr std::uint64_t max_sieve_value = std::uint64_t{1} << 62;

/// Inclusive integer range with lo >= 1.
struct range_bounds {
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;

  range_bounds() = default;
  range_bounds(std::uint64_t lo_, std::uint64_t hi_) : lo(lo_), hi(hi_) {
    if (lo == 0)
      throw domain_error("range lower bound must be >= 1");
    if (hi < lo)
      throw domain_error("range upper bound " + std::to_string(hi) +
                         " is below lower bound " + std::to_string(lo));
    if (hi > max_sieve_value)
      throw domain_error("range upper bound exceeds 2^62");
  }

  std::uint64_t size() const { return hi - lo + 1; }
  bool contains(std::uint64_t v) const { return lo <= v && v <= hi; }

  friend bool operator==(const range_bounds &, const range_bounds &) = default;
};

/// Primes of a range in ascending order.
struct prime_segment {
  range_bounds bounds;
  std::vector<std::uint64_t> primes;
};

namespace detail {

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n)
    --r;
  while ((r + 1) * (r + 1) <= n)
    ++r;
  return r;
}

/// Plain sieve of Eratosthenes over [0, n]; returns the odd primes only.
inline std::vector<std::uint32_t> small_odd_primes(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 3)
    return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 3; i * i <= n; i += 2)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= n; j += 2 * i)
        composite[j] = true;
  for (std::uint32_t i = 3; i <= n; i += 2)
    if (!composite[i])
      out.push_back(i);
  return out;
}

inline constexpr std::size_t sieve_block_bytes = std::size_t{1} << 18;

} // namespace detail

/// Odd primes up to sqrt(max_hi), computed once and shared read-only by every
/// window sieved during a run.
class base_primes {
public:
  explicit base_primes(std::uint64_t max_hi)
      : max_hi_(std::max<std::uint64_t>(max_hi, 4)) {
    if (max_hi_ > max_sieve_value)
      throw domain_error("sieve bound exceeds 2^62");
    root_ = detail::isqrt(max_hi_);
    primes_ = detail::small_odd_primes(static_cast<std::uint32_t>(root_));
  }

  /// Largest hi this table can sieve.
  std::uint64_t max_hi() const {
    // every odd composite <= (root+1)^2 - 1 has a factor <= root
    return (root_ + 1) * (root_ + 1) - 1;
  }
  std::span<const std::uint32_t> odd_primes() const { return primes_; }

private:
  std::uint64_t max_hi_;
  std::uint64_t root_ = 0;
  std::vector<std::uint32_t> primes_;
};

/// Calls visit(p) for each prime p in [bounds.lo, bounds.hi] in ascending
/// order. base must cover bounds.hi.
template <typename Visit>
void for_each_prime(const range_bounds &bounds, const base_primes &base,
                    Visit &&visit) {
  if (bounds.hi > base.max_hi())
    throw contract_error("base prime table covers values up to " +
                         std::to_string(base.max_hi()) + ", window needs " +
                         std::to_string(bounds.hi));

  const std::uint64_t lo = bounds.lo;
  const std::uint64_t hi = bounds.hi;
  if (lo <= 2 && 2 <= hi)
    visit(std::uint64_t{2});

  const std::uint64_t first_odd = lo | 1u;
  if (first_odd > hi)
    return;
  const std::uint64_t odd_count = (hi - first_odd) / 2 + 1;

  // next[k] = index (relative to first_odd) of the next odd multiple of
  // primes[k] that still needs crossing off
  const auto primes = base.odd_primes();
  std::vector<std::uint64_t> next;
  next.reserve(primes.size());
  for (const std::uint32_t p32 : primes) {
    const std::uint64_t p = p32;
    if (p * p > hi)
      break;
    std::uint64_t start = std::max(p * p, (first_odd + p - 1) / p * p);
    if ((start & 1u) == 0)
      start += p;
    next.push_back((start - first_odd) / 2);
  }

  std::vector<std::uint8_t> block(detail::sieve_block_bytes);
  for (std::uint64_t block_lo = 0; block_lo < odd_count;
       block_lo += detail::sieve_block_bytes) {
    const std::uint64_t block_len =
        std::min<std::uint64_t>(detail::sieve_block_bytes, odd_count - block_lo);
    const std::uint64_t block_end = block_lo + block_len;
    std::fill_n(block.begin(), block_len, std::uint8_t{1});

    for (std::size_t k = 0; k < next.size(); ++k) {
      const std::uint64_t p = primes[k];
      std::uint64_t j = next[k];
      for (; j < block_end; j += p)
        block[j - block_lo] = 0;
      next[k] = j;
    }
    if (block_lo == 0 && first_odd == 1)
      block[0] = 0;

    for (std::uint64_t i = 0; i < block_len; ++i)
      if (block[i])
        visit(first_odd + 2 * (block_lo + i));
  }
}

/// Exactly the primes in [bounds.lo, bounds.hi].
/// Throws resource_error when the window exceeds buffer_budget integers.
inline prime_segment primes_in_range(const range_bounds &bounds,
                                     const base_primes &base,
                                     std::uint64_t buffer_budget =
                                         default_buffer_budget) {
  if (bounds.size() > buffer_budget)
    throw resource_error("range of " + std::to_string(bounds.size()) +
                         " integers exceeds the segment buffer budget of " +
                         std::to_string(buffer_budget) +
                         "; use a smaller segment");
  prime_segment out{bounds, {}};
  // pi(x) <= 1.25506 x / ln x; a rough reserve avoids most regrowth
  const double span = static_cast<double>(bounds.size());
  const double ln_hi = std::log(std::max<double>(3.0, double(bounds.hi)));
  out.primes.reserve(static_cast<std::size_t>(span / ln_hi * 1.3) + 16);
  for_each_prime(bounds, base,
                 [&](std::uint64_t p) { out.primes.push_back(p); });
  return out;
}

inline prime_segment primes_in_range(const range_bounds &bounds,
                                     std::uint64_t buffer_budget =
                                         default_buffer_budget) {
  if (bounds.size() > buffer_budget)
    throw resource_error("range of " + std::to_string(bounds.size()) +
                         " integers exceeds the segment buffer budget of " +
                         std::to_string(buffer_budget) +
                         "; use a smaller segment");
  return primes_in_range(bounds, base_primes(bounds.hi), buffer_budget);
}

/// All primes in [2, n].
inline prime_segment primes_up_to(std::uint64_t n,
                                  std::uint64_t buffer_budget =
                                      default_buffer_budget) {
  if (n < 2)
    throw domain_error("primes_up_to needs n >= 2, got " + std::to_string(n));
  return primes_in_range(range_bounds(2, n), buffer_budget);
}

/// pi(n), computed segment by segment without materializing the prime list.
inline std::uint64_t count_primes(std::uint64_t n, unsigned threads = 1,
                                  std::uint64_t segment_length =
                                      default_segment_length) {
  if (n < 2)
    throw domain_error("count_primes needs n >= 2, got " + std::to_string(n));
  if (segment_length == 0)
    throw domain_error("segment length must be positive");
  const base_primes base(n);
  const std::uint64_t segments = (n + segment_length - 1) / segment_length;
  std::vector<std::uint64_t> counts(segments, 0);
  parallel_for(segments, threads, [&](std::size_t s) {
    const std::uint64_t lo = s * segment_length + 1;
    const std::uint64_t hi = std::min(n, lo + segment_length - 1);
    std::uint64_t c = 0;
    for_each_prime(range_bounds(lo, hi), base, [&](std::uint64_t) { ++c; });
    counts[s] = c;
  });
  std::uint64_t total = 0;
  for (auto c : counts)
    total += c;
  return total;
}

} // namespace ktuple
