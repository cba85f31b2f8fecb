#include <ktuple/checkpoint.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace ktuple;

namespace {
checkpoint_state sample() {
  return {offset_pattern{0, 2, 6}, 20'000'000'000ull, 10'000'000,
          7'230'000'001ull, 2'105'874, 723};
}
} // namespace

TEST(CheckpointFormat, ExactLayout) {
  const std::string text = serialize_checkpoint(sample());
  const std::string body = "ktuple-checkpoint 1\n"
                           "pattern 0,2,6\n"
                           "limit 20000000000\n"
                           "segment_length 10000000\n"
                           "next_lo 7230000001\n"
                           "count 2105874\n"
                           "segments_done 723\n";
  ASSERT_EQ(text.substr(0, body.size()), body);
  const std::string crc_line = text.substr(body.size());
  ASSERT_EQ(crc_line.size(), 6u + 8u + 1u);
  EXPECT_EQ(crc_line.substr(0, 6), "crc32 ");
}

TEST(CheckpointFormat, RoundTripProperty) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::uint64_t> offs{0};
    const int m = 2 + static_cast<int>(rng() % 5);
    for (int k = 1; k < m; ++k)
      offs.push_back(offs.back() + 2 * (1 + rng() % 10));
    checkpoint_state s{offset_pattern(offs), 0, 0, 0, 0, 0};
    s.limit = 2 + rng() % (1ull << 50);
    s.segment_length = offs.back() + 1 + rng() % 100'000'000;
    s.next_lo = 1 + rng() % (s.limit + 1);
    s.count = rng() % (1ull << 40);
    s.segments_done = rng() % 100'000;
    ASSERT_EQ(deserialize_checkpoint(serialize_checkpoint(s)), s);
  }
}

TEST(CheckpointFormat, SingleByteCorruptionDetected) {
  const std::string good = serialize_checkpoint(sample());
  for (std::size_t i = 0; i < good.size(); ++i) {
    std::string bad = good;
    bad[i] = static_cast<char>(bad[i] ^ 0x01);
    EXPECT_THROW(deserialize_checkpoint(bad), integrity_error) << i;
  }
}

TEST(CheckpointFormat, RejectsStructuralProblems) {
  const std::string good = serialize_checkpoint(sample());
  EXPECT_THROW(deserialize_checkpoint(""), integrity_error);
  EXPECT_THROW(deserialize_checkpoint(good + "extra\n"), integrity_error);
  EXPECT_THROW(deserialize_checkpoint(good.substr(0, good.size() - 1)),
               integrity_error);

  // well-formed checksum over a body with an unknown version
  auto with_body = [](std::string body) {
    body += "crc32 " + detail::hex32(detail::crc32_of(body)) + "\n";
    return body;
  };
  EXPECT_THROW(deserialize_checkpoint(with_body("ktuple-checkpoint 2\n"
                                                "pattern 0,2\n"
                                                "limit 100\n"
                                                "segment_length 10\n"
                                                "next_lo 1\n"
                                                "count 0\n"
                                                "segments_done 0\n")),
               integrity_error);
  // keys out of order
  EXPECT_THROW(deserialize_checkpoint(with_body("ktuple-checkpoint 1\n"
                                                "limit 100\n"
                                                "pattern 0,2\n"
                                                "segment_length 10\n"
                                                "next_lo 1\n"
                                                "count 0\n"
                                                "segments_done 0\n")),
               integrity_error);
  // watermark beyond limit + 1
  EXPECT_THROW(deserialize_checkpoint(with_body("ktuple-checkpoint 1\n"
                                                "pattern 0,2\n"
                                                "limit 100\n"
                                                "segment_length 10\n"
                                                "next_lo 200\n"
                                                "count 0\n"
                                                "segments_done 0\n")),
               integrity_error);
  // invalid pattern
  EXPECT_THROW(deserialize_checkpoint(with_body("ktuple-checkpoint 1\n"
                                                "pattern 0,3\n"
                                                "limit 100\n"
                                                "segment_length 10\n"
                                                "next_lo 1\n"
                                                "count 0\n"
                                                "segments_done 0\n")),
               integrity_error);
}

TEST(CheckpointFile, MissingFileIsIntegrityError) {
  EXPECT_THROW(load_checkpoint("/nonexistent/dir/x.ckpt"), integrity_error);
}
