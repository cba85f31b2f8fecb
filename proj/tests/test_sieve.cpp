#include "oracles.hpp"

#include <ktuple/sieve.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace ktuple;

TEST(PrimesUpTo, SmallValues) {
  EXPECT_EQ(primes_up_to(10).primes, (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(primes_up_to(2).primes, (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(primes_up_to(3).primes, (std::vector<std::uint64_t>{2, 3}));
}

TEST(PrimesUpTo, RejectsBelowTwo) {
  EXPECT_THROW(primes_up_to(1), domain_error);
  EXPECT_THROW(primes_up_to(0), domain_error);
}

TEST(PrimesUpTo, MillionMatchesTrialDivision) {
  const auto got = primes_up_to(1'000'000).primes;
  const auto want = oracle::primes_between(2, 1'000'000);
  EXPECT_EQ(got.size(), want.size());
  EXPECT_EQ(got, want);
}

TEST(PrimesInRange, HandExamples) {
  EXPECT_EQ(primes_in_range({90, 100}).primes, std::vector<std::uint64_t>{97});
  EXPECT_EQ(primes_in_range({1, 10}).primes,
            (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_TRUE(primes_in_range({24, 28}).primes.empty());
  EXPECT_EQ(primes_in_range({1, 1}).primes.size(), 0u);
  EXPECT_EQ(primes_in_range({2, 2}).primes, std::vector<std::uint64_t>{2});
}

TEST(PrimesInRange, KeepsBasePrimesInsideWindow) {
  // window overlaps the base primes used to sieve it
  EXPECT_EQ(primes_in_range({3, 50}).primes,
            oracle::primes_between(3, 50));
  EXPECT_EQ(primes_in_range({5, 7}).primes,
            (std::vector<std::uint64_t>{5, 7}));
}

TEST(PrimesInRange, HighWindowMatchesTrialDivision) {
  const range_bounds r(1'000'000'000, 1'000'010'000);
  EXPECT_EQ(primes_in_range(r).primes,
            oracle::primes_between(r.lo, r.hi));
}

TEST(PrimesInRange, WindowAroundSquareOfLargestBasePrime) {
  // 999983 is the largest prime below 1e6; its square must be crossed off
  const std::uint64_t sq = 999983ull * 999983ull;
  const range_bounds r(sq - 200, sq + 200);
  EXPECT_EQ(primes_in_range(r).primes, oracle::primes_between(r.lo, r.hi));
}

TEST(RangeBounds, Validation) {
  EXPECT_THROW(range_bounds(0, 10), domain_error);
  EXPECT_THROW(range_bounds(10, 9), domain_error);
  EXPECT_NO_THROW(range_bounds(10, 10));
}

TEST(PrimesInRange, BudgetExceededIsResourceError) {
  EXPECT_THROW(primes_in_range({1, 1'000'000}, 999'999), resource_error);
  EXPECT_NO_THROW(primes_in_range({1, 1'000'000}, 1'000'000));
}

TEST(PrimesInRange, BaseTableTooSmallIsContractError) {
  const base_primes base(1000);
  EXPECT_THROW(primes_in_range({1, 2000}, base), contract_error);
}

TEST(CountPrimes, Values) {
  EXPECT_EQ(count_primes(10), 4u);
  EXPECT_EQ(count_primes(100), 25u);
  EXPECT_EQ(count_primes(2), 1u);
  EXPECT_THROW(count_primes(1), domain_error);
}

TEST(CountPrimes, EqualsListLength) {
  for (std::uint64_t n : {2ull, 3ull, 97ull, 1000ull, 65536ull, 1'000'003ull})
    EXPECT_EQ(count_primes(n), primes_up_to(n).primes.size()) << n;
}

TEST(CountPrimes, HundredMillionMatchesOneShotSieve) {
  const std::uint64_t n = 100'000'000;
  EXPECT_EQ(count_primes(n, 2), oracle::sieve_count(n));
}

TEST(CountPrimes, IndependentOfSegmentAndThreads) {
  const std::uint64_t n = 3'000'000;
  const auto ref = count_primes(n);
  EXPECT_EQ(count_primes(n, 1, 1'000), ref);
  EXPECT_EQ(count_primes(n, 3, 77'777), ref);
  EXPECT_EQ(count_primes(n, 4, n), ref);
}

TEST(SieveProperties, OracleEquivalenceOnRandomRanges) {
  std::mt19937_64 rng(20050201);
  std::uniform_int_distribution<std::uint64_t> start(1, 1'000'000);
  std::uniform_int_distribution<std::uint64_t> width(0, 5'000);
  for (int i = 0; i < 60; ++i) {
    const std::uint64_t lo = start(rng);
    const std::uint64_t hi = std::min<std::uint64_t>(1'000'000, lo + width(rng));
    if (hi < lo)
      continue;
    EXPECT_EQ(primes_in_range({lo, hi}).primes, oracle::primes_between(lo, hi))
        << lo << ".." << hi;
  }
}

TEST(SieveProperties, SegmentJoin) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint64_t> pick(1, 1'000'000);
  for (int i = 0; i < 40; ++i) {
    std::uint64_t lo = pick(rng), hi = pick(rng);
    if (lo > hi)
      std::swap(lo, hi);
    if (lo == hi)
      continue;
    std::uniform_int_distribution<std::uint64_t> split(lo, hi - 1);
    const std::uint64_t s = split(rng);
    auto left = primes_in_range({lo, s}).primes;
    const auto right = primes_in_range({s + 1, hi}).primes;
    left.insert(left.end(), right.begin(), right.end());
    EXPECT_EQ(left, primes_in_range({lo, hi}).primes);
  }
}

TEST(SieveProperties, OutputSortedAndPrime) {
  const auto seg = primes_in_range({123'456'789, 123'556'789});
  for (std::size_t i = 1; i < seg.primes.size(); ++i)
    ASSERT_LT(seg.primes[i - 1], seg.primes[i]);
  for (std::size_t i = 0; i < seg.primes.size(); i += 97)
    EXPECT_TRUE(oracle::is_prime(seg.primes[i])) << seg.primes[i];
}
