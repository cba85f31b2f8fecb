#pragma once

/// @file pattern.hpp
/// @brief Constellation offset patterns and their classification.

#include "errors.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ktuple {

/// Sorted offsets (0, a_1, ..., a_{m-1}) describing the tuple p, p+a_1, ...
///
/// Construction translates the offsets so the first one is 0 and rejects
/// anything but strictly increasing, even offsets with m >= 2.
class offset_pattern {
public:
  explicit offset_pattern(std::vector<std::uint64_t> offsets)
      : offsets_(std::move(offsets)) {
    if (offsets_.size() < 2)
      throw domain_error("a pattern needs at least two offsets");
    for (std::size_t i = 1; i < offsets_.size(); ++i)
      if (offsets_[i] <= offsets_[i - 1])
        throw domain_error("pattern offsets must be strictly increasing");
    const std::uint64_t base = offsets_.front();
    for (auto &a : offsets_)
      a -= base;
    if (offsets_.size() == 2 && offsets_[1] == 1)
      throw domain_error("pattern 0,1 is refused: only (2,3) is such a pair");
    for (const auto a : offsets_)
      if (a % 2 != 0)
        throw domain_error("pattern offset " + std::to_string(a) +
                           " is odd; such a tuple holds at most one prime "
                           "occurrence");
  }

  offset_pattern(std::initializer_list<std::uint64_t> offsets)
      : offset_pattern(std::vector<std::uint64_t>(offsets)) {}

  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::size_t m() const { return offsets_.size(); }
  std::uint64_t span() const { return offsets_.back(); }

  /// The reflected pattern (span - a_i), which has the same prime density.
  offset_pattern mirrored() const {
    std::vector<std::uint64_t> r;
    r.reserve(offsets_.size());
    for (auto it = offsets_.rbegin(); it != offsets_.rend(); ++it)
      r.push_back(span() - *it);
    return offset_pattern(std::move(r));
  }

  /// Comma-separated literal, e.g. "0,2,6,8".
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
      if (i)
        s += ',';
      s += std::to_string(offsets_[i]);
    }
    return s;
  }

  friend bool operator==(const offset_pattern &,
                         const offset_pattern &) = default;

private:
  std::vector<std::uint64_t> offsets_;
};

/// Parses the CLI literal "0,2,6,8". Whitespace around numbers is allowed.
inline offset_pattern parse_pattern(std::string_view text) {
  std::vector<std::uint64_t> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ')
      item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ')
      item.remove_suffix(1);
    if (item.empty() ||
        !std::all_of(item.begin(), item.end(),
                     [](char c) { return c >= '0' && c <= '9'; }) ||
        item.size() > 18)
      throw domain_error("bad pattern literal '" + std::string(text) +
                         "': expected comma-separated non-negative integers");
    values.push_back(std::stoull(std::string(item)));
    pos = comma + 1;
  }
  return offset_pattern(std::move(values));
}

/// True iff every prime factor of k is <= bound (k = 1 is smooth).
inline bool is_smooth(std::uint64_t k, std::uint64_t bound) {
  if (k == 0)
    throw domain_error("is_smooth needs k >= 1");
  for (std::uint64_t d = 2; d <= bound && d * d <= k; ++d)
    while (k % d == 0)
      k /= d;
  // whatever is left is 1, a prime, or has all factors > bound
  if (k == 1)
    return true;
  return k <= bound;
}

struct pattern_classification {
  bool is_admissible = true;
  bool is_basic = false;
  /// Smallest prime q whose residue classes are all hit by the offsets.
  std::optional<std::uint64_t> obstruction;
};

namespace detail {
inline bool is_small_prime(std::uint64_t q) {
  if (q < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0)
      return false;
  return true;
}

inline bool all_smooth(const offset_pattern &pattern) {
  const auto a = pattern.offsets();
  const std::uint64_t m = pattern.m();
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (!is_smooth(a[i], m))
      return false;
    for (std::size_t j = 1; j < i; ++j)
      if (!is_smooth(a[i] - a[j], m))
        return false;
  }
  return true;
}
} // namespace detail

/// Admissibility (no prime q <= m has all residues covered) together with the
/// "basic" property.
///
/// A pattern is basic when every offset and every pairwise difference is
/// m-smooth, i.e. a product of primes <= m where m is the tuple length, and
/// the pattern is admissible. Smoothness is taken relative to m itself; for
/// m <= 6 this agrees with the other plausible reading (relative to the
/// number of primes <= m) on all canonical patterns. Admissibility is part of
/// the definition here because (0,2,4) is 3-smooth yet only (3,5,7) realizes
/// it.
inline pattern_classification classify(const offset_pattern &pattern) {
  pattern_classification out;
  const std::uint64_t m = pattern.m();
  for (std::uint64_t q = 2; q <= m; ++q) {
    if (!detail::is_small_prime(q))
      continue;
    std::vector<bool> hit(q, false);
    std::uint64_t distinct = 0;
    for (const auto a : pattern.offsets())
      if (!hit[a % q]) {
        hit[a % q] = true;
        ++distinct;
      }
    if (distinct == q) {
      out.is_admissible = false;
      out.obstruction = q;
      break;
    }
  }
  out.is_basic = out.is_admissible && detail::all_smooth(pattern);
  return out;
}

inline bool is_admissible(const offset_pattern &pattern) {
  return classify(pattern).is_admissible;
}

inline bool is_basic(const offset_pattern &pattern) {
  return classify(pattern).is_basic;
}

/// The canonical basic m-tuple for m = 2..6:
/// (0,2), (0,2,6), (0,2,6,8), (0,2,6,8,12), (0,2,6,8,12,18).
inline offset_pattern basic_pattern_for(std::size_t m) {
  static constexpr std::uint64_t chain[] = {0, 2, 6, 8, 12, 18};
  if (m < 2 || m > 6)
    throw domain_error("basic patterns are defined for m = 2..6, got m = " +
                       std::to_string(m));
  return offset_pattern(std::vector<std::uint64_t>(chain, chain + m));
}

} // namespace ktuple
