#pragma once

/// @file cli.hpp
/// @brief Command implementations behind the `ktuple` executable.
///
/// Every command writes its result to an output stream in one of three
/// formats and returns the process exit code. Argument parsing lives in
/// tools/ktuple.cpp; everything here is testable without a process boundary.

#include "counter.hpp"
#include "errors.hpp"
#include "hardy_littlewood.hpp"
#include "log_integral.hpp"
#include "pattern.hpp"
#include "pdf.hpp"
#include "rational.hpp"
#include "sieve.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ktuple::cli {

enum exit_code : int {
  exit_ok = 0,
  exit_domain = 1,
  exit_threshold = 2,
  exit_resource = 3,
};

enum class command { sieve, count, hl, li, predict, verify, ratios };
enum class output_format { table, json, csv };

struct run_config {
  command cmd = command::count;
  std::optional<offset_pattern> pattern;
  std::uint64_t limit = 0;
  std::uint64_t from = 1;
  std::uint64_t to = 1;
  std::uint64_t segment_length = default_segment_length;
  std::uint64_t prime_bound = default_hl_prime_bound;
  unsigned threads = 1;
  output_format format = output_format::table;
  std::optional<std::filesystem::path> checkpoint_path;
  std::uint64_t checkpoint_every = 16;

  std::vector<int> m_values{2};
  double upper = 2.0;
  double rel_tol = 1e-12;
  std::vector<std::uint64_t> gaps;
  int max_m = 6;
  std::int64_t max_denominator = 100;
  double tolerance = 0.05;
  /// verify pass thresholds on |estimate - conjecture|, keyed by m
  std::map<int, double> thresholds{{2, 5e-3}, {3, 5e-3}, {4, 2e-2}};
};

// ---------------------------------------------------------------------------
// argument helpers

/// Exact integer from "10000", "10_000", "1e10", "2.5e3". Non-integral
/// values are rejected.
inline std::uint64_t parse_limit(std::string_view text) {
  std::string s;
  for (const char c : text)
    if (c != '_')
      s += c;
  const auto bad = [&] {
    return domain_error("'" + std::string(text) +
                        "' is not a non-negative integer (forms: 1000, "
                        "1_000, 1e3, 2.5e3)");
  };
  if (s.empty())
    throw bad();

  const auto epos = s.find_first_of("eE");
  const std::string mantissa = s.substr(0, epos);
  int exponent = 0;
  if (epos != std::string::npos) {
    const std::string e = s.substr(epos + 1);
    if (e.empty() || e.size() > 3 ||
        !std::all_of(e.begin() + (e[0] == '+' ? 1 : 0), e.end(),
                     [](char c) { return c >= '0' && c <= '9'; }) ||
        e == "+")
      throw bad();
    exponent = std::stoi(e);
  }
  const auto dot = mantissa.find('.');
  std::string digits = mantissa;
  if (dot != std::string::npos) {
    digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    exponent -= static_cast<int>(mantissa.size() - dot - 1);
  }
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](char c) { return c >= '0' && c <= '9'; }))
    throw bad();
  while (exponent < 0) {
    if (digits.empty() || digits.back() != '0')
      throw bad();
    digits.pop_back();
    ++exponent;
  }
  digits.append(static_cast<std::size_t>(exponent), '0');
  const auto first = digits.find_first_not_of('0');
  if (first == std::string::npos)
    return 0;
  digits = digits.substr(first);
  if (digits.size() > 19)
    throw domain_error("'" + std::string(text) + "' is too large");
  return std::stoull(digits);
}

/// "2..5", "2,3,4" or "4".
inline std::vector<int> parse_m_list(std::string_view text) {
  std::vector<int> out;
  const auto range = text.find("..");
  if (range != std::string_view::npos) {
    const auto a = parse_limit(text.substr(0, range));
    const auto b = parse_limit(text.substr(range + 2));
    if (b < a || b > 64)
      throw domain_error("bad m range '" + std::string(text) + "'");
    for (auto m = a; m <= b; ++m)
      out.push_back(static_cast<int>(m));
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto v = parse_limit(text.substr(pos, comma - pos));
    if (v > 64)
      throw domain_error("m value " + std::to_string(v) + " is out of range");
    out.push_back(static_cast<int>(v));
    pos = comma + 1;
  }
  return out;
}

inline std::vector<std::uint64_t> parse_gap_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    out.push_back(parse_limit(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

inline double parse_real(std::string_view text) {
  std::string s;
  for (const char c : text)
    if (c != '_')
      s += c;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v))
    throw domain_error("'" + std::string(text) + "' is not a number");
  return v;
}

// ---------------------------------------------------------------------------
// output

namespace detail {

inline std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

inline std::string format_count(std::uint64_t v) {
  std::string s = std::to_string(v);
  for (int i = static_cast<int>(s.size()) - 3; i > 0; i -= 3)
    s.insert(static_cast<std::size_t>(i), ",");
  return s;
}

inline nlohmann::json opt_json(const std::optional<double> &v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

/// Aligned plain-text table; the first column is left-aligned, the rest
/// right-aligned.
class text_table {
public:
  explicit text_table(std::vector<std::string> header)
      : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream &out) const {
    std::vector<std::size_t> width;
    for (const auto &row : rows_)
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (width.size() <= i)
          width.push_back(0);
        width[i] = std::max(width[i], row[i].size());
      }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto &row = rows_[r];
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i)
          out << "  ";
        out << (i == 0 ? std::left : std::right) << std::setw(int(width[i]))
            << row[i];
      }
      out << std::right << '\n';
      if (r == 0) {
        std::size_t total = 0;
        for (auto w : width)
          total += w + 2;
        out << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
      }
    }
  }

private:
  std::vector<std::vector<std::string>> rows_;
};

/// Writes a JSON value as CSV: arrays of flat objects become a header line
/// plus one row each; null becomes an empty cell.
inline void write_csv(std::ostream &out, const nlohmann::json &rows,
                      const std::vector<std::string> &columns) {
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto &row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i)
        out << ',';
      const auto &v = row.at(columns[i]);
      if (v.is_null())
        continue;
      if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"") != std::string::npos) {
          out << '"';
          for (char c : s)
            out << (c == '"' ? "\"\"" : std::string(1, c));
          out << '"';
        } else {
          out << s;
        }
      } else {
        out << v.dump();
      }
    }
    out << '\n';
  }
}

// Published reference values, shown next to computed ones in tables.
struct published_run {
  offset_pattern pattern;
  std::uint64_t limit;
  std::uint64_t count;
  const char *pdf;
};

inline const std::vector<published_run> &published_runs() {
  static const std::vector<published_run> runs = {
      {basic_pattern_for(2), 10'000'000'000ULL, 27'412'673, "1.32038"},
      {basic_pattern_for(3), 20'000'000'000ULL, 4'942'554, "2.85768"},
      {basic_pattern_for(4), 70'000'000'000ULL, 898'998, "4.1503"},
      {basic_pattern_for(5), 400'000'000'000ULL, 370'502, "10.1193"},
  };
  return runs;
}

inline const char *published_hl(int m) {
  switch (m) {
  case 2:
    return "0.6601618";
  case 3:
    return "0.6351663";
  case 4:
    return "0.3074948";
  case 5:
    return "0.409874";
  default:
    return "";
  }
}

inline const char *published_conjecture(int m) {
  switch (m) {
  case 2:
    return "1.32032";
  case 3:
    return "2.858248";
  case 4:
    return "4.1511808";
  default:
    return "";
  }
}

inline std::optional<published_run> published_for(const offset_pattern &p,
                                                  std::uint64_t limit) {
  for (const auto &r : published_runs())
    if (r.pattern == p && r.limit == limit)
      return r;
  return std::nullopt;
}

} // namespace detail

/// Analysis of one counted pattern; the JSON/CSV field set.
struct pdf_record {
  offset_pattern pattern{0, 2};
  std::uint64_t limit = 0;
  std::uint64_t count = 0;
  std::optional<double> li_value;
  std::optional<double> c_estimate;
  std::optional<double> conjectured;
  std::optional<double> deviation;
  std::optional<double> relative_deviation;
  std::optional<double> c_m;
  std::optional<double> ratio;
  double elapsed_seconds = 0.0;
};

inline const std::vector<std::string> &record_columns() {
  static const std::vector<std::string> cols = {
      "pattern",   "limit",          "count",    "li_value",
      "c_estimate", "conjectured",   "deviation", "relative_deviation",
      "c_m",       "ratio",          "elapsed_seconds"};
  return cols;
}

inline nlohmann::json to_json(const pdf_record &r) {
  nlohmann::json j = nlohmann::json::object();
  j["pattern"] = r.pattern.to_string();
  j["limit"] = r.limit;
  j["count"] = r.count;
  j["li_value"] = detail::opt_json(r.li_value);
  j["c_estimate"] = detail::opt_json(r.c_estimate);
  j["conjectured"] = detail::opt_json(r.conjectured);
  j["deviation"] = detail::opt_json(r.deviation);
  j["relative_deviation"] = detail::opt_json(r.relative_deviation);
  j["c_m"] = detail::opt_json(r.c_m);
  j["ratio"] = detail::opt_json(r.ratio);
  j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

/// Fills the analysis fields of a record from a count. Limits below
/// minimum_pdf_limit leave them empty.
inline pdf_record analyse(const offset_pattern &pattern, std::uint64_t limit,
                          std::uint64_t count, double elapsed,
                          const run_config &cfg) {
  pdf_record r;
  r.pattern = pattern;
  r.limit = limit;
  r.count = count;
  r.elapsed_seconds = elapsed;
  if (limit < minimum_pdf_limit)
    return r;
  const analysis_options opt{cfg.prime_bound, 1e-12, cfg.threads};
  const pdf_estimate e = estimate_pdf(pattern, limit, count, opt);
  r.li_value = e.denominator.value;
  r.c_estimate = e.c_estimate;
  r.conjectured = e.conjectured;
  r.deviation = e.deviation;
  r.relative_deviation = e.relative_deviation;
  if (pattern.m() <= 6) {
    r.c_m = cached_hl_constant(static_cast<int>(pattern.m()), cfg.prime_bound,
                               cfg.threads)
                .value;
    r.ratio = *r.c_estimate / *r.c_m;
  }
  return r;
}

inline void warn_small_limit(std::uint64_t limit, std::ostream &err) {
  if (limit < meaningful_pdf_limit)
    err << "warning: limit " << limit << " is below "
        << meaningful_pdf_limit
        << "; density estimates are not meaningful at this size\n";
}

namespace detail {
inline std::string opt_str(const std::optional<double> &v, int digits) {
  return v ? fixed(*v, digits) : std::string("-");
}
} // namespace detail

// ---------------------------------------------------------------------------
// commands

inline int run_sieve(const run_config &cfg, std::ostream &out) {
  const prime_segment seg = primes_in_range(range_bounds(cfg.from, cfg.to));
  switch (cfg.format) {
  case output_format::json: {
    nlohmann::json j;
    j["from"] = cfg.from;
    j["to"] = cfg.to;
    j["count"] = seg.primes.size();
    j["primes"] = seg.primes;
    out << j.dump() << '\n';
    break;
  }
  case output_format::csv:
    out << "prime\n";
    for (auto p : seg.primes)
      out << p << '\n';
    break;
  case output_format::table:
    out << seg.primes.size() << " primes in [" << cfg.from << ", " << cfg.to
        << "]\n";
    for (std::size_t i = 0; i < seg.primes.size(); ++i)
      out << seg.primes[i] << ((i % 10 == 9 || i + 1 == seg.primes.size())
                                   ? '\n'
                                   : ' ');
    break;
  }
  return exit_ok;
}

inline void print_records(const std::vector<pdf_record> &records,
                          std::ostream &out, output_format format) {
  if (format == output_format::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &r : records)
      arr.push_back(to_json(r));
    out << (records.size() == 1 ? arr[0] : arr).dump(2) << '\n';
    return;
  }
  if (format == output_format::csv) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &r : records)
      arr.push_back(to_json(r));
    detail::write_csv(out, arr, record_columns());
    return;
  }
  detail::text_table t({"pattern", "limit", "count", "C estimate",
                        "conjectured", "deviation", "c_m", "ratio",
                        "published count", "published C"});
  for (const auto &r : records) {
    const auto pub = detail::published_for(r.pattern, r.limit);
    t.add({r.pattern.to_string(), detail::format_count(r.limit),
           detail::format_count(r.count), detail::opt_str(r.c_estimate, 8),
           detail::opt_str(r.conjectured, 8), detail::opt_str(r.deviation, 3),
           detail::opt_str(r.c_m, 9), detail::opt_str(r.ratio, 7),
           pub ? detail::format_count(pub->count) : "-",
           pub ? pub->pdf : "-"});
  }
  t.print(out);
}

inline int run_count(const run_config &cfg, std::ostream &out,
                     std::ostream &err) {
  if (!cfg.pattern)
    throw domain_error("count needs --pattern");
  const count_job job(*cfg.pattern, cfg.limit, cfg.segment_length);
  count_options opt;
  opt.threads = cfg.threads;
  opt.checkpoint = cfg.checkpoint_path;
  opt.checkpoint_every = cfg.checkpoint_every;
  const constellation_count c = count_up_to(job, opt);
  if (c.resumed_from > 1)
    err << "resumed from checkpoint at p >= " << c.resumed_from << '\n';
  warn_small_limit(cfg.limit, err);
  print_records({analyse(job.pattern, job.limit, c.count, c.elapsed.count(),
                         cfg)},
                out, cfg.format);
  return exit_ok;
}

inline int run_hl(const run_config &cfg, std::ostream &out) {
  std::vector<hl_constant> values;
  for (const int m : cfg.m_values)
    values.push_back(cached_hl_constant(m, cfg.prime_bound, cfg.threads));
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &c : values)
    arr.push_back({{"m", c.m},
                   {"value", c.value},
                   {"prime_bound", c.prime_bound},
                   {"tail_bound", c.tail_bound}});
  switch (cfg.format) {
  case output_format::json:
    out << arr.dump(2) << '\n';
    break;
  case output_format::csv:
    detail::write_csv(out, arr, {"m", "value", "prime_bound", "tail_bound"});
    break;
  case output_format::table: {
    detail::text_table t({"m", "c_m", "prime bound", "tail bound (log)",
                          "published"});
    for (const auto &c : values) {
      std::ostringstream v;
      v << std::fixed << std::setprecision(10) << c.value;
      t.add({std::to_string(c.m), v.str(), detail::format_count(c.prime_bound),
             detail::fixed(c.tail_bound, 3), detail::published_hl(c.m)});
    }
    t.print(out);
  }
  }
  return exit_ok;
}

inline int run_li(const run_config &cfg, std::ostream &out) {
  std::vector<log_integral_value> values;
  for (const int m : cfg.m_values)
    values.push_back(log_integral(m, cfg.upper, cfg.rel_tol));
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &v : values)
    arr.push_back({{"m", v.m},
                   {"upper", v.upper},
                   {"value", v.value},
                   {"abs_error_estimate", v.abs_error_estimate}});
  switch (cfg.format) {
  case output_format::json:
    out << (values.size() == 1 ? arr[0] : arr).dump(2) << '\n';
    break;
  case output_format::csv:
    detail::write_csv(out, arr, {"m", "upper", "value", "abs_error_estimate"});
    break;
  case output_format::table: {
    detail::text_table t({"m", "upper", "integral", "error estimate"});
    for (const auto &v : values)
      t.add({std::to_string(v.m), detail::fixed(v.upper, 12),
             detail::fixed(v.value, 15), detail::fixed(v.abs_error_estimate, 3)});
    t.print(out);
  }
  }
  return exit_ok;
}

inline int run_predict(const run_config &cfg, std::ostream &out,
                       std::ostream &err) {
  if (cfg.gaps.empty())
    throw domain_error("predict needs --gaps");
  for (const auto g : cfg.gaps)
    gap_factor(g); // validates before any counting starts
  const analysis_options opt{cfg.prime_bound, 1e-12, cfg.threads};

  std::vector<std::uint64_t> counts;
  if (cfg.limit != 0) {
    warn_small_limit(cfg.limit, err);
    std::vector<offset_pattern> pairs;
    for (const auto g : cfg.gaps)
      pairs.emplace_back(std::vector<std::uint64_t>{0, g});
    counts = count_many_up_to(pairs, cfg.limit, cfg.segment_length,
                              cfg.threads);
  }

  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < cfg.gaps.size(); ++i) {
    const auto g = cfg.gaps[i];
    nlohmann::json row;
    row["gap"] = g;
    row["factor"] = gap_factor(g);
    row["predicted"] = gap_pdf(g, opt);
    row["limit"] = cfg.limit == 0 ? nlohmann::json(nullptr)
                                  : nlohmann::json(cfg.limit);
    row["count"] = nullptr;
    row["c_estimate"] = nullptr;
    row["deviation"] = nullptr;
    row["relative_deviation"] = nullptr;
    if (!counts.empty()) {
      row["count"] = counts[i];
      if (cfg.limit >= minimum_pdf_limit) {
        const auto e = estimate_pdf(offset_pattern{0, g}, cfg.limit,
                                    counts[i], opt);
        row["c_estimate"] = e.c_estimate;
        row["deviation"] = detail::opt_json(e.deviation);
        row["relative_deviation"] = detail::opt_json(e.relative_deviation);
      }
    }
    arr.push_back(row);
  }

  const std::vector<std::string> cols = {
      "gap",        "factor",    "predicted",          "limit", "count",
      "c_estimate", "deviation", "relative_deviation"};
  switch (cfg.format) {
  case output_format::json:
    out << arr.dump(2) << '\n';
    break;
  case output_format::csv:
    detail::write_csv(out, arr, cols);
    break;
  case output_format::table: {
    detail::text_table t({"gap", "factor vs C(2)", "predicted C", "count",
                          "C estimate", "rel. deviation"});
    for (const auto &row : arr) {
      const auto num = [](const nlohmann::json &v, int digits) {
        return v.is_null() ? std::string("-")
                           : detail::fixed(v.get<double>(), digits);
      };
      t.add({std::to_string(row["gap"].get<std::uint64_t>()),
             num(row["factor"], 8), num(row["predicted"], 8),
             row["count"].is_null()
                 ? std::string("-")
                 : detail::format_count(row["count"].get<std::uint64_t>()),
             num(row["c_estimate"], 8), num(row["relative_deviation"], 3)});
    }
    t.print(out);
  }
  }
  return exit_ok;
}

/// Counts every basic pattern m = 2..max_m (or just --pattern) and checks
/// each deviation with a configured threshold against it. Patterns without
/// a conjecture are measured only.
inline int run_verify(const run_config &cfg, std::ostream &out,
                      std::ostream &err) {
  warn_small_limit(cfg.limit, err);
  std::vector<offset_pattern> patterns;
  if (cfg.pattern) {
    patterns.push_back(*cfg.pattern);
  } else {
    if (cfg.max_m < 2 || cfg.max_m > 6)
      throw domain_error("--max-m must lie in 2..6");
    for (int m = 2; m <= cfg.max_m; ++m)
      patterns.push_back(basic_pattern_for(static_cast<std::size_t>(m)));
  }

  const auto started = std::chrono::steady_clock::now();
  const auto counts =
      count_many_up_to(patterns, cfg.limit, cfg.segment_length, cfg.threads);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();

  std::vector<pdf_record> records;
  std::vector<std::optional<double>> thresholds;
  std::vector<std::string> status;
  bool all_pass = true;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    records.push_back(analyse(patterns[i], cfg.limit, counts[i], elapsed, cfg));
    const auto &r = records.back();
    const auto it = cfg.thresholds.find(static_cast<int>(patterns[i].m()));
    std::optional<double> threshold;
    if (it != cfg.thresholds.end() && r.deviation)
      threshold = it->second;
    thresholds.push_back(threshold);
    if (!threshold) {
      status.push_back("measured");
    } else if (std::fabs(*r.deviation) < *threshold) {
      status.push_back("pass");
    } else {
      status.push_back("fail");
      all_pass = false;
    }
  }

  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto j = to_json(records[i]);
    j["threshold"] = detail::opt_json(thresholds[i]);
    j["status"] = status[i];
    arr.push_back(j);
  }
  switch (cfg.format) {
  case output_format::json:
    out << nlohmann::json{{"limit", cfg.limit},
                          {"passed", all_pass},
                          {"records", arr}}
                .dump(2)
        << '\n';
    break;
  case output_format::csv: {
    auto cols = record_columns();
    cols.push_back("threshold");
    cols.push_back("status");
    detail::write_csv(out, arr, cols);
    break;
  }
  case output_format::table: {
    detail::text_table t({"pattern", "count", "C estimate", "conjectured",
                          "deviation", "threshold", "status", "c_m", "ratio",
                          "published C", "published count"});
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto &r = records[i];
      const int m = static_cast<int>(r.pattern.m());
      const auto pub = detail::published_for(r.pattern, r.limit);
      const bool canonical =
          m <= 6 && r.pattern == basic_pattern_for(static_cast<std::size_t>(m));
      t.add({r.pattern.to_string(), detail::format_count(r.count),
             detail::opt_str(r.c_estimate, 8),
             detail::opt_str(r.conjectured, 8), detail::opt_str(r.deviation, 3),
             detail::opt_str(thresholds[i], 3), status[i],
             detail::opt_str(r.c_m, 9), detail::opt_str(r.ratio, 7),
             canonical && *detail::published_conjecture(m)
                 ? detail::published_conjecture(m)
                 : "-",
             pub ? detail::format_count(pub->count) : "-"});
    }
    out << "limit " << detail::format_count(cfg.limit) << '\n';
    t.print(out);
    out << (all_pass ? "all checked deviations within thresholds\n"
                     : "some deviations exceed their thresholds\n");
  }
  }
  return all_pass ? exit_ok : exit_threshold;
}

/// Measures c_estimate / c_m for the basic m-tuple and lists nearby
/// fractions with small denominators.
inline int run_ratios(const run_config &cfg, std::ostream &out,
                      std::ostream &err) {
  if (cfg.m_values.size() != 1)
    throw domain_error("ratios takes a single --m");
  const int m = cfg.m_values.front();
  if (m < 2 || m > 6)
    throw domain_error("ratios supports m = 2..6");
  const offset_pattern pattern =
      cfg.pattern ? *cfg.pattern : basic_pattern_for(static_cast<std::size_t>(m));
  if (static_cast<int>(pattern.m()) != m)
    throw domain_error("--pattern length does not match --m");
  if (cfg.limit < minimum_pdf_limit)
    throw domain_error("ratios needs --limit >= " +
                       std::to_string(minimum_pdf_limit));
  warn_small_limit(cfg.limit, err);

  const count_job job(pattern, cfg.limit, cfg.segment_length);
  count_options opt;
  opt.threads = cfg.threads;
  const auto c = count_up_to(job, opt);
  const pdf_record r =
      analyse(pattern, cfg.limit, c.count, c.elapsed.count(), cfg);
  const auto candidates =
      rational_candidates(*r.ratio, cfg.max_denominator, cfg.tolerance);

  nlohmann::json cand = nlohmann::json::array();
  for (const auto &q : candidates)
    cand.push_back({{"numerator", q.numerator},
                    {"denominator", q.denominator},
                    {"distance", q.distance}});
  switch (cfg.format) {
  case output_format::json: {
    auto j = to_json(r);
    j["candidates"] = cand;
    out << j.dump(2) << '\n';
    break;
  }
  case output_format::csv:
    detail::write_csv(out, cand, {"numerator", "denominator", "distance"});
    break;
  case output_format::table: {
    print_records({r}, out, output_format::table);
    out << "\nfractions within " << cfg.tolerance << " of "
        << detail::fixed(*r.ratio, 8) << " (denominator <= "
        << cfg.max_denominator << ")\n";
    detail::text_table t({"fraction", "value", "distance"});
    for (const auto &q : candidates)
      t.add({std::to_string(q.numerator) + "/" + std::to_string(q.denominator),
             detail::fixed(double(q.numerator) / double(q.denominator), 10),
             detail::fixed(q.distance, 3)});
    t.print(out);
  }
  }
  return exit_ok;
}

/// Dispatches cfg.cmd and maps library exceptions onto exit codes.
inline int run(const run_config &cfg, std::ostream &out, std::ostream &err) {
  try {
    if (cfg.threads == 0)
      throw domain_error("--threads must be >= 1");
    if (cfg.pattern && cfg.segment_length <= cfg.pattern->span())
      throw domain_error("--segment must exceed the pattern span");
    switch (cfg.cmd) {
    case command::sieve:
      return run_sieve(cfg, out);
    case command::count:
      return run_count(cfg, out, err);
    case command::hl:
      return run_hl(cfg, out);
    case command::li:
      return run_li(cfg, out);
    case command::predict:
      return run_predict(cfg, out, err);
    case command::verify:
      return run_verify(cfg, out, err);
    case command::ratios:
      return run_ratios(cfg, out, err);
    }
  } catch (const domain_error &e) {
    err << "error: " << e.what() << '\n';
    return exit_domain;
  } catch (const resource_error &e) {
    err << "error: " << e.what() << '\n';
    return exit_resource;
  } catch (const integrity_error &e) {
    err << "error: " << e.what() << '\n';
    return exit_resource;
  } catch (const contract_error &e) {
    err << "internal error: " << e.what() << '\n';
    return exit_domain;
  }
  return exit_domain;
}

} // namespace ktuple::cli
