#include "oracles.hpp"

#include <ktuple/pattern.hpp>

#include <gtest/gtest.h>

using namespace ktuple;

TEST(OffsetPattern, Construction) {
  const offset_pattern p{0, 2, 6, 8};
  EXPECT_EQ(p.m(), 4u);
  EXPECT_EQ(p.span(), 8u);
  EXPECT_EQ(p.to_string(), "0,2,6,8");
}

TEST(OffsetPattern, TranslatesToZero) {
  EXPECT_EQ(offset_pattern({4, 6, 10}), offset_pattern({0, 2, 6}));
}

TEST(OffsetPattern, RejectsInvalid) {
  EXPECT_THROW(offset_pattern({0}), domain_error);
  EXPECT_THROW(offset_pattern({0, 0}), domain_error);
  EXPECT_THROW(offset_pattern({0, 6, 2}), domain_error);
  EXPECT_THROW(offset_pattern({0, 1}), domain_error);
  EXPECT_THROW(offset_pattern({0, 2, 5}), domain_error);
  EXPECT_THROW(offset_pattern({1, 4}), domain_error);
}

TEST(OffsetPattern, Mirror) {
  EXPECT_EQ(offset_pattern({0, 2, 6}).mirrored(), offset_pattern({0, 4, 6}));
  EXPECT_EQ(offset_pattern({0, 2, 6, 8}).mirrored(),
            offset_pattern({0, 2, 6, 8}));
}

TEST(ParsePattern, Literals) {
  EXPECT_EQ(parse_pattern("0,2,6,8"), offset_pattern({0, 2, 6, 8}));
  EXPECT_EQ(parse_pattern(" 0, 2 ,6"), offset_pattern({0, 2, 6}));
  EXPECT_THROW(parse_pattern("0,,2"), domain_error);
  EXPECT_THROW(parse_pattern("0;2"), domain_error);
  EXPECT_THROW(parse_pattern(""), domain_error);
  EXPECT_THROW(parse_pattern("0,-2"), domain_error);
}

TEST(IsSmooth, Examples) {
  EXPECT_TRUE(is_smooth(6, 3));
  EXPECT_FALSE(is_smooth(10, 3));
  EXPECT_TRUE(is_smooth(8, 2));
  EXPECT_TRUE(is_smooth(1, 2));
  EXPECT_FALSE(is_smooth(7, 6));
  EXPECT_TRUE(is_smooth(7, 7));
  EXPECT_TRUE(is_smooth(2 * 3 * 5 * 5 * 7, 7));
  EXPECT_THROW(is_smooth(0, 3), domain_error);
}

TEST(IsSmooth, MonotoneInBound) {
  for (std::uint64_t k = 1; k <= 2000; ++k)
    for (std::uint64_t b = 2; b < 20; ++b)
      if (is_smooth(k, b)) {
        ASSERT_TRUE(is_smooth(k, b + 1)) << k << " " << b;
      }
}

TEST(IsSmooth, AgreesWithFactorization) {
  for (std::uint64_t k = 1; k <= 5000; ++k) {
    std::uint64_t largest = 1, r = k;
    for (std::uint64_t d = 2; d <= r; ++d)
      while (r % d == 0) {
        largest = d;
        r /= d;
      }
    for (std::uint64_t b : {2ull, 3ull, 5ull, 6ull, 11ull})
      ASSERT_EQ(is_smooth(k, b), largest <= b) << k << " " << b;
  }
}

TEST(IsBasic, CanonicalTuples) {
  EXPECT_TRUE(is_basic(offset_pattern({0, 2})));
  EXPECT_TRUE(is_basic(offset_pattern({0, 2, 6})));
  EXPECT_TRUE(is_basic(offset_pattern({0, 2, 6, 8, 12})));
  EXPECT_FALSE(is_basic(offset_pattern({0, 2, 10})));
}

TEST(IsBasic, SmoothButInadmissibleIsNotBasic) {
  const auto c = classify(offset_pattern({0, 2, 4}));
  EXPECT_FALSE(c.is_admissible);
  EXPECT_FALSE(c.is_basic);
}

TEST(Admissibility, Examples) {
  const auto bad = classify(offset_pattern({0, 2, 4}));
  EXPECT_FALSE(bad.is_admissible);
  ASSERT_TRUE(bad.obstruction.has_value());
  EXPECT_EQ(*bad.obstruction, 3u);

  EXPECT_TRUE(is_admissible(offset_pattern({0, 2, 6})));
  EXPECT_FALSE(classify(offset_pattern({0, 2, 6})).obstruction.has_value());
  EXPECT_TRUE(is_admissible(offset_pattern({0, 2, 6, 8})));
  // covers 0..4 mod 5
  EXPECT_FALSE(is_admissible(offset_pattern({0, 2, 6, 8, 14})));
  EXPECT_EQ(*classify(offset_pattern({0, 2, 6, 8, 14})).obstruction, 5u);
}

TEST(BasicPatternFor, Values) {
  EXPECT_EQ(basic_pattern_for(2), offset_pattern({0, 2}));
  EXPECT_EQ(basic_pattern_for(4), offset_pattern({0, 2, 6, 8}));
  EXPECT_EQ(basic_pattern_for(6), offset_pattern({0, 2, 6, 8, 12, 18}));
  EXPECT_THROW(basic_pattern_for(1), domain_error);
  EXPECT_THROW(basic_pattern_for(7), domain_error);
}

TEST(BasicPatternFor, AllAreBasic) {
  for (std::size_t m = 2; m <= 6; ++m)
    EXPECT_TRUE(is_basic(basic_pattern_for(m))) << m;
}

// Every inadmissible pattern with small offsets has at most one occurrence
// with p above its obstruction prime, checked by trial division up to 1e4.
TEST(Admissibility, InadmissibleHaveAtMostOneLateOccurrence) {
  int checked = 0;
  for (std::uint64_t a = 2; a <= 20; a += 2)
    for (std::uint64_t b = a + 2; b <= 24; b += 2)
      for (std::uint64_t c = b + 2; c <= 26; c += 2) {
        for (const auto &pat : {offset_pattern({0, a, b}),
                                offset_pattern({0, a, b, c})}) {
          const auto cls = classify(pat);
          if (cls.is_admissible)
            continue;
          ++checked;
          int late = 0;
          for (std::uint64_t p = *cls.obstruction + 1; p <= 10'000; ++p) {
            bool all = true;
            for (auto off : pat.offsets())
              all = all && oracle::is_prime(p + off);
            late += all;
          }
          EXPECT_LE(late, 1) << pat.to_string();
        }
      }
  EXPECT_GT(checked, 10);
}
