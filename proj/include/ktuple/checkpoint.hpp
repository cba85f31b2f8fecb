#pragma once

/// @file checkpoint.hpp
/// @brief Restart files for long constellation counts.
///
/// Format (version 1), UTF-8 text, one `key value` pair per line, keys in
/// exactly this order, lines terminated by '\n':
///
///     ktuple-checkpoint 1
///     pattern 0,2,6
///     limit 20000000000
///     segment_length 10000000
///     next_lo 7230000001
///     count 2105874
///     segments_done 723
///     crc32 1a2b3c4d
///
/// `next_lo` is the watermark: every constellation whose smallest element p
/// satisfies p < next_lo is included in `count`, and none above it. `crc32`
/// is the zlib CRC-32 of all preceding bytes, as 8 lowercase hex digits.
/// Readers reject unknown versions, missing or reordered keys, trailing
/// garbage and checksum mismatches with integrity_error.

#include "errors.hpp"
#include "pattern.hpp"

#include <zlib.h>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace ktuple {

inline constexpr int checkpoint_version = 1;

struct checkpoint_state {
  offset_pattern pattern{0, 2};
  std::uint64_t limit = 0;
  std::uint64_t segment_length = 0;
  std::uint64_t next_lo = 1;
  std::uint64_t count = 0;
  std::uint64_t segments_done = 0;

  friend bool operator==(const checkpoint_state &,
                         const checkpoint_state &) = default;
};

namespace detail {

inline std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  crc = ::crc32(crc, reinterpret_cast<const Bytef *>(bytes.data()),
                static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

inline std::string hex32(std::uint32_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(8) << std::setfill('0') << v;
  return os.str();
}

inline std::uint64_t parse_u64_field(std::string_view value,
                                     std::string_view key) {
  std::uint64_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty())
    throw integrity_error("checkpoint field '" + std::string(key) +
                          "' is not an unsigned integer");
  return out;
}

} // namespace detail

inline std::string serialize_checkpoint(const checkpoint_state &s) {
  std::ostringstream body;
  body << "ktuple-checkpoint " << checkpoint_version << '\n'
       << "pattern " << s.pattern.to_string() << '\n'
       << "limit " << s.limit << '\n'
       << "segment_length " << s.segment_length << '\n'
       << "next_lo " << s.next_lo << '\n'
       << "count " << s.count << '\n'
       << "segments_done " << s.segments_done << '\n';
  std::string text = body.str();
  text += "crc32 " + detail::hex32(detail::crc32_of(text)) + '\n';
  return text;
}

inline checkpoint_state deserialize_checkpoint(std::string_view text) {
  const auto crc_pos = text.rfind("crc32 ");
  if (crc_pos == std::string_view::npos)
    throw integrity_error("checkpoint has no checksum line");
  const std::string_view body = text.substr(0, crc_pos);
  std::string_view crc_line = text.substr(crc_pos + 6);
  if (crc_line.size() != 9 || crc_line.back() != '\n')
    throw integrity_error("checkpoint checksum line is malformed");
  crc_line.remove_suffix(1);
  if (crc_line != detail::hex32(detail::crc32_of(body)))
    throw integrity_error("checkpoint checksum mismatch; file is corrupt");

  static constexpr std::string_view keys[] = {
      "ktuple-checkpoint", "pattern", "limit",        "segment_length",
      "next_lo",           "count",   "segments_done"};
  std::vector<std::string_view> values;
  std::string_view rest = body;
  for (const auto key : keys) {
    const auto eol = rest.find('\n');
    if (eol == std::string_view::npos)
      throw integrity_error("checkpoint is truncated before '" +
                            std::string(key) + "'");
    const std::string_view line = rest.substr(0, eol);
    rest.remove_prefix(eol + 1);
    if (line.size() <= key.size() || line.substr(0, key.size()) != key ||
        line[key.size()] != ' ')
      throw integrity_error("checkpoint expected key '" + std::string(key) +
                            "'");
    values.push_back(line.substr(key.size() + 1));
  }
  if (!rest.empty())
    throw integrity_error("checkpoint has unexpected trailing content");

  if (detail::parse_u64_field(values[0], keys[0]) != checkpoint_version)
    throw integrity_error("unsupported checkpoint version '" +
                          std::string(values[0]) + "'");

  checkpoint_state s;
  try {
    s.pattern = parse_pattern(values[1]);
  } catch (const domain_error &e) {
    throw integrity_error(std::string("checkpoint pattern invalid: ") +
                          e.what());
  }
  s.limit = detail::parse_u64_field(values[2], keys[2]);
  s.segment_length = detail::parse_u64_field(values[3], keys[3]);
  s.next_lo = detail::parse_u64_field(values[4], keys[4]);
  s.count = detail::parse_u64_field(values[5], keys[5]);
  s.segments_done = detail::parse_u64_field(values[6], keys[6]);
  if (s.next_lo == 0 || s.next_lo > s.limit + 1)
    throw integrity_error("checkpoint watermark lies outside [1, limit + 1]");
  return s;
}

/// Writes via a temporary file and rename, so a crash mid-write leaves the
/// previous checkpoint intact.
inline void save_checkpoint(const std::filesystem::path &path,
                            const checkpoint_state &s) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw integrity_error("cannot write checkpoint " + tmp.string());
    out << serialize_checkpoint(s);
    out.flush();
    if (!out)
      throw integrity_error("short write on checkpoint " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw integrity_error("cannot move checkpoint into place: " +
                          ec.message());
}

inline checkpoint_state load_checkpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw integrity_error("cannot read checkpoint " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_checkpoint(buf.str());
}

} // namespace ktuple
