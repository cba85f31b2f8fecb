#pragma once

/// @file counter.hpp
/// @brief Exact, segment-parallel counting of prime constellations.
///
/// A constellation p, p+a_1, ..., p+a_{m-1} is attributed to the segment that
/// contains its smallest element p, and counts toward a limit n when p <= n
/// (larger elements may exceed n). Each segment [lo, hi] is sieved up to
/// hi + span so constellations straddling a boundary are neither lost nor
/// counted twice.

#include "checkpoint.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "pattern.hpp"
#include "sieve.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ktuple {

struct count_job {
  offset_pattern pattern;
  std::uint64_t limit;
  std::uint64_t segment_length;

  count_job(offset_pattern pattern_, std::uint64_t limit_,
            std::uint64_t segment_length_ = default_segment_length)
      : pattern(std::move(pattern_)), limit(limit_),
        segment_length(segment_length_) {
    if (limit < 2)
      throw domain_error("count limit must be >= 2, got " +
                         std::to_string(limit));
    if (limit > max_sieve_value / 2)
      throw domain_error("count limit exceeds 2^61");
    if (segment_length <= pattern.span())
      throw domain_error("segment length " + std::to_string(segment_length) +
                         " must exceed the pattern span " +
                         std::to_string(pattern.span()));
  }
};

struct constellation_count {
  count_job job;
  std::uint64_t count = 0;
  /// Segments completed toward this count, including ones restored from a
  /// checkpoint.
  std::uint64_t segments_processed = 0;
  /// Wall time of this invocation only.
  std::chrono::duration<double> elapsed{};
  /// False when the run stopped early (count_options::stop_after_segments).
  bool complete = true;
  /// First p examined by this invocation (1 for a fresh run).
  std::uint64_t resumed_from = 1;
};

/// Number of primes p in `attribution` for which every p + a_i is prime.
///
/// `extended` must list the primes of a range reaching from attribution.lo
/// (or earlier) through attribution.hi + span at least.
inline std::uint64_t count_in_segment(const offset_pattern &pattern,
                                      const range_bounds &attribution,
                                      const prime_segment &extended) {
  if (extended.bounds.lo > attribution.lo ||
      extended.bounds.hi < attribution.hi + pattern.span())
    throw contract_error(
        "segment primes cover [" + std::to_string(extended.bounds.lo) + ", " +
        std::to_string(extended.bounds.hi) + "] but counting [" +
        std::to_string(attribution.lo) + ", " +
        std::to_string(attribution.hi) + "] needs lookahead through " +
        std::to_string(attribution.hi + pattern.span()));

  const auto &primes = extended.primes;
  const auto offsets = pattern.offsets();
  std::uint64_t found = 0;
  auto it = std::lower_bound(primes.begin(), primes.end(), attribution.lo);
  for (; it != primes.end() && *it <= attribution.hi; ++it) {
    const std::uint64_t p = *it;
    auto probe = it;
    bool hit = true;
    for (std::size_t k = 1; k < offsets.size(); ++k) {
      const std::uint64_t want = p + offsets[k];
      while (probe != primes.end() && *probe < want)
        ++probe;
      if (probe == primes.end() || *probe != want) {
        hit = false;
        break;
      }
    }
    found += hit;
  }
  return found;
}

struct count_options {
  unsigned threads = 1;
  /// Resume from this file when it exists; keep it updated while counting.
  std::optional<std::filesystem::path> checkpoint;
  /// Persist the watermark after this many newly completed segments.
  std::uint64_t checkpoint_every = 16;
  /// Stop once this many segments completed in this invocation (0 = never).
  /// Mainly for exercising resume.
  std::uint64_t stop_after_segments = 0;
};

namespace detail {

inline void check_resumable(const checkpoint_state &saved, const count_job &job) {
  if (!(saved.pattern == job.pattern))
    throw integrity_error("checkpoint is for pattern " +
                          saved.pattern.to_string() + ", job counts " +
                          job.pattern.to_string());
  if (saved.next_lo - 1 > job.limit)
    throw integrity_error("checkpoint already counted past the requested "
                          "limit (watermark " +
                          std::to_string(saved.next_lo) + ")");
}

} // namespace detail

/// N(pattern, limit): constellations with smallest element p <= limit.
inline constellation_count count_up_to(const count_job &job,
                                       const count_options &options = {}) {
  const auto started = std::chrono::steady_clock::now();
  const std::uint64_t span = job.pattern.span();
  const std::uint64_t seg = job.segment_length;

  std::uint64_t start_lo = 1;
  std::uint64_t base_count = 0;
  std::uint64_t base_segments = 0;
  if (options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
    const checkpoint_state saved = load_checkpoint(*options.checkpoint);
    detail::check_resumable(saved, job);
    start_lo = saved.next_lo;
    base_count = saved.count;
    base_segments = saved.segments_done;
  }

  const std::uint64_t remaining =
      start_lo > job.limit ? 0 : job.limit - start_lo + 1;
  std::uint64_t segments = (remaining + seg - 1) / seg;
  if (options.stop_after_segments != 0)
    segments = std::min(segments, options.stop_after_segments);

  const base_primes base(job.limit + span);
  std::vector<std::uint64_t> counts(segments, 0);
  std::vector<char> done(segments, 0);
  std::uint64_t watermark = 0; // segments [0, watermark) merged
  std::uint64_t merged_count = base_count;
  std::uint64_t last_saved = 0;
  std::mutex merge_mutex;

  auto segment_lo = [&](std::uint64_t s) { return start_lo + s * seg; };
  auto persist = [&](std::uint64_t next_lo) {
    if (!options.checkpoint)
      return;
    save_checkpoint(*options.checkpoint,
                    checkpoint_state{job.pattern, job.limit, seg, next_lo,
                                     merged_count, base_segments + watermark});
  };

  parallel_for(segments, options.threads, [&](std::size_t s) {
    const std::uint64_t lo = segment_lo(s);
    const std::uint64_t hi = std::min(job.limit, lo + seg - 1);
    const prime_segment window =
        primes_in_range(range_bounds(lo, hi + span), base, seg + span + 1);
    const std::uint64_t c =
        count_in_segment(job.pattern, range_bounds(lo, hi), window);

    std::lock_guard lock(merge_mutex);
    counts[s] = c;
    done[s] = 1;
    while (watermark < segments && done[watermark])
      merged_count += counts[watermark++];
    if (watermark - last_saved >= options.checkpoint_every &&
        watermark < segments) {
      persist(segment_lo(watermark));
      last_saved = watermark;
    }
  });

  const std::uint64_t next_lo =
      segments == 0 ? start_lo
                    : std::min(job.limit, segment_lo(segments - 1) + seg - 1) + 1;
  persist(next_lo);

  constellation_count result{job};
  result.count = merged_count;
  result.segments_processed = base_segments + segments;
  result.complete = next_lo > job.limit;
  result.resumed_from = start_lo;
  result.elapsed = std::chrono::steady_clock::now() - started;
  return result;
}

/// Counts several patterns in one pass over the primes up to limit; the
/// sieve windows are shared and extended by the largest span. Results are in
/// the order of `patterns`.
inline std::vector<std::uint64_t>
count_many_up_to(std::span<const offset_pattern> patterns, std::uint64_t limit,
                 std::uint64_t segment_length = default_segment_length,
                 unsigned threads = 1) {
  if (patterns.empty())
    return {};
  std::uint64_t span = 0;
  for (const auto &p : patterns) {
    const count_job check(p, limit, segment_length);
    span = std::max(span, p.span());
  }
  const base_primes base(limit + span);
  const std::uint64_t segments = (limit + segment_length - 1) / segment_length;
  std::vector<std::uint64_t> per_segment(segments * patterns.size(), 0);
  parallel_for(segments, threads, [&](std::size_t s) {
    const std::uint64_t lo = 1 + s * segment_length;
    const std::uint64_t hi = std::min(limit, lo + segment_length - 1);
    const prime_segment window = primes_in_range(
        range_bounds(lo, hi + span), base, segment_length + span + 1);
    for (std::size_t k = 0; k < patterns.size(); ++k)
      per_segment[s * patterns.size() + k] =
          count_in_segment(patterns[k], range_bounds(lo, hi), window);
  });
  std::vector<std::uint64_t> totals(patterns.size(), 0);
  for (std::size_t s = 0; s < segments; ++s)
    for (std::size_t k = 0; k < patterns.size(); ++k)
      totals[k] += per_segment[s * patterns.size() + k];
  return totals;
}

} // namespace ktuple
