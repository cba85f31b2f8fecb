#include "oracles.hpp"

#include <ktuple/hardy_littlewood.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace ktuple;

// Published constants carry truncated digits: the printed string must be a
// prefix of the computed value's decimal expansion.
namespace {
bool digits_match(double value, double printed, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(value * scale + 1e-6) == std::round(printed * scale);
}
} // namespace

TEST(HardyLittlewood, PublishedValuesAtHundredMillion) {
  const auto c2 = compute_hl_constant(2, 100'000'000);
  const auto c3 = compute_hl_constant(3, 100'000'000);
  const auto c4 = compute_hl_constant(4, 100'000'000);
  const auto c5 = compute_hl_constant(5, 100'000'000);
  EXPECT_TRUE(digits_match(c2.value, 0.6601618, 7)) << c2.value;
  EXPECT_TRUE(digits_match(c3.value, 0.6351663, 7)) << c3.value;
  EXPECT_TRUE(digits_match(c4.value, 0.3074948, 7)) << c4.value;
  EXPECT_TRUE(digits_match(c5.value, 0.409874, 6)) << c5.value;
  for (const auto &c : {c2, c3, c4, c5}) {
    EXPECT_GT(c.value, 0.0);
    EXPECT_LT(c.value, 1.0);
    EXPECT_LT(c.tail_bound, 1e-7);
  }
}

// The twin product written as prod (1 - 1/(p-1)^2) over odd primes.
TEST(HardyLittlewood, TwinProductReading) {
  long double direct = 1.0L;
  for (std::uint64_t p = 3; p <= 2'000'000; p += 2)
    if (oracle::is_prime(p)) {
      const long double d = static_cast<long double>(p - 1);
      direct *= 1.0L - 1.0L / (d * d);
    }
  const auto c2 = compute_hl_constant(2, 2'000'000);
  EXPECT_NEAR(c2.value, static_cast<double>(direct), 1e-13);
}

// Independent check of the general factor on a short product.
TEST(HardyLittlewood, MatchesDirectProductForEveryM) {
  for (int m = 2; m <= 6; ++m) {
    long double direct = 1.0L;
    for (std::uint64_t p = m + 1; p <= 100'000; ++p)
      if (oracle::is_prime(p)) {
        const long double lp = p;
        direct *= std::pow(lp, m - 1) * (lp - m) / std::pow(lp - 1, m);
      }
    EXPECT_NEAR(compute_hl_constant(m, 100'000).value,
                static_cast<double>(direct), 1e-13)
        << m;
  }
}

TEST(HardyLittlewood, RefinementWithinTailBound) {
  for (int m = 2; m <= 6; ++m) {
    const auto coarse = compute_hl_constant(m, 1'000'000);
    const auto fine = compute_hl_constant(m, 20'000'000);
    const double log_change = std::log(coarse.value) - std::log(fine.value);
    EXPECT_GE(log_change, 0.0) << m;
    EXPECT_LT(log_change, coarse.tail_bound) << m;
    EXPECT_LT(fine.tail_bound, coarse.tail_bound) << m;
  }
}

TEST(HardyLittlewood, TailBoundDecreases) {
  double prev = std::numeric_limits<double>::infinity();
  for (std::uint64_t b = 10; b <= 1'000'000'000; b *= 10) {
    const double t = hl_tail_bound(4, b);
    EXPECT_LT(t, prev);
    prev = t;
  }
}

TEST(HardyLittlewood, ThreadInvariant) {
  const auto one = compute_hl_constant(3, 30'000'000, 1);
  const auto four = compute_hl_constant(3, 30'000'000, 4);
  EXPECT_EQ(one.value, four.value);
}

TEST(HardyLittlewood, DomainErrors) {
  EXPECT_THROW(compute_hl_constant(1, 1000), domain_error);
  EXPECT_THROW(compute_hl_constant(7, 1000), domain_error);
  EXPECT_THROW(compute_hl_constant(2, 2), domain_error);
  EXPECT_THROW(compute_hl_constant(5, 6), domain_error);
  EXPECT_NO_THROW(compute_hl_constant(5, 7));
  EXPECT_NO_THROW(compute_hl_constant(2, 3));
}

TEST(HardyLittlewood, CacheReturnsSameValue) {
  const auto a = cached_hl_constant(4, 1'000'000);
  const auto b = cached_hl_constant(4, 1'000'000);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.value, compute_hl_constant(4, 1'000'000).value);
}

TEST(CompensatedSum, BeatsNaiveSummation) {
  compensated_sum s;
  double naive = 0.0;
  s.add(1.0);
  naive += 1.0;
  for (int i = 0; i < 1'000'000; ++i) {
    s.add(1e-16);
    naive += 1e-16;
  }
  EXPECT_DOUBLE_EQ(s.value(), 1.0 + 1e-10);
  EXPECT_EQ(naive, 1.0);
}

TEST(CompensatedSum, TreeMergeIndependentOfSplit) {
  std::vector<compensated_sum> parts(37);
  compensated_sum all;
  for (int i = 0; i < 37 * 1000; ++i) {
    const double x = 1.0 / (1.0 + i);
    parts[i % 37].add(x);
    all.add(x);
  }
  EXPECT_NEAR(tree_merge(parts).value(), all.value(), 1e-14);
}
