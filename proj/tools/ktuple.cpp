// ktuple: count prime constellations and compare their densities with
// Hardy-Littlewood predictions.

#include <ktuple/cli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

using ktuple::cli::command;
using ktuple::cli::output_format;
using ktuple::cli::run_config;

struct raw_args {
  std::string pattern;
  std::string limit;
  std::string from, to;
  std::string segment;
  std::string prime_bound;
  std::string m;
  std::string upper;
  std::string gaps;
  std::string thresholds;
  std::string format = "table";
  std::string checkpoint;
};

// Thresholds as "2=5e-3,3=5e-3,4=2e-2".
std::map<int, double> parse_thresholds(const std::string &text) {
  std::map<int, double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ktuple::domain_error("threshold '" + item + "' must look like m=value");
    out[static_cast<int>(ktuple::cli::parse_limit(item.substr(0, eq)))] =
        ktuple::cli::parse_real(item.substr(eq + 1));
    pos = comma + 1;
  }
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Prime constellation counting and Hardy-Littlewood densities"};
  app.require_subcommand(1);
  app.fallthrough();

  run_config cfg;
  raw_args raw;

  app.add_option("--threads", cfg.threads, "worker threads (>= 1)")
      ->default_val(1);
  app.add_option("--format", raw.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--segment", raw.segment,
                 "integers per sieve segment (default 1e7)");
  app.add_option("--prime-bound", raw.prime_bound,
                 "truncation point of the Hardy-Littlewood products (default 1e8)");

  auto *sieve = app.add_subcommand("sieve", "list primes in [from, to]");
  sieve->add_option("--from", raw.from)->required();
  sieve->add_option("--to", raw.to)->required();

  auto *count = app.add_subcommand("count", "count a constellation up to a limit");
  count->add_option("--pattern", raw.pattern, "offsets, e.g. 0,2,6,8")
      ->required();
  count->add_option("--limit", raw.limit)->required();
  count->add_option("--segment", raw.segment);
  count->add_option("--checkpoint", raw.checkpoint,
                    "resume from / keep saving to this file");
  count->add_option("--checkpoint-every", cfg.checkpoint_every,
                    "segments between checkpoint writes");

  auto *hl = app.add_subcommand("hl", "Hardy-Littlewood numbers c_m");
  hl->add_option("--m", raw.m, "m, list 2,3 or range 2..5")->required();
  hl->add_option("--prime-bound", raw.prime_bound);

  auto *li = app.add_subcommand("li", "integral of 1/log(x)^m from 2 to upper");
  li->add_option("--m", raw.m)->required();
  li->add_option("--upper", raw.upper)->required();
  li->add_option("--rel-tol", cfg.rel_tol)->default_val(1e-12);

  auto *predict = app.add_subcommand("predict", "conjectured factors of p, p+n");
  predict->add_option("--gaps", raw.gaps, "even gaps, e.g. 2,4,6")->required();
  predict->add_option("--limit", raw.limit, "also measure up to this bound");
  predict->add_option("--prime-bound", raw.prime_bound);

  auto *verify = app.add_subcommand("verify", "count basic tuples and compare "
                                              "with the conjectured factors");
  verify->add_option("--limit", raw.limit)->required();
  verify->add_option("--max-m", cfg.max_m)->default_val(6);
  verify->add_option("--pattern", raw.pattern, "verify this pattern only");
  verify->add_option("--thresholds", raw.thresholds,
                     "per-m limits on |estimate - conjecture|, e.g. 2=5e-3,4=2e-2");
  verify->add_option("--prime-bound", raw.prime_bound);

  auto *ratios = app.add_subcommand(
      "ratios", "measured factor in front of c_m and nearby fractions");
  ratios->add_option("--m", raw.m)->required();
  ratios->add_option("--limit", raw.limit)->required();
  ratios->add_option("--pattern", raw.pattern);
  ratios->add_option("--max-denominator", cfg.max_denominator)->default_val(100);
  ratios->add_option("--tolerance", cfg.tolerance)->default_val(0.05);
  ratios->add_option("--prime-bound", raw.prime_bound);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ktuple::cli::exit_domain;
  }

  try {
    using ktuple::cli::parse_limit;
    if (app.got_subcommand(sieve))
      cfg.cmd = command::sieve;
    else if (app.got_subcommand(count))
      cfg.cmd = command::count;
    else if (app.got_subcommand(hl))
      cfg.cmd = command::hl;
    else if (app.got_subcommand(li))
      cfg.cmd = command::li;
    else if (app.got_subcommand(predict))
      cfg.cmd = command::predict;
    else if (app.got_subcommand(verify))
      cfg.cmd = command::verify;
    else
      cfg.cmd = command::ratios;

    if (!raw.pattern.empty())
      cfg.pattern = ktuple::parse_pattern(raw.pattern);
    if (!raw.limit.empty())
      cfg.limit = parse_limit(raw.limit);
    if (!raw.from.empty())
      cfg.from = parse_limit(raw.from);
    if (!raw.to.empty())
      cfg.to = parse_limit(raw.to);
    if (!raw.segment.empty())
      cfg.segment_length = parse_limit(raw.segment);
    if (!raw.prime_bound.empty())
      cfg.prime_bound = parse_limit(raw.prime_bound);
    if (!raw.m.empty())
      cfg.m_values = ktuple::cli::parse_m_list(raw.m);
    if (!raw.upper.empty())
      cfg.upper = ktuple::cli::parse_real(raw.upper);
    if (!raw.gaps.empty())
      cfg.gaps = ktuple::cli::parse_gap_list(raw.gaps);
    if (!raw.thresholds.empty())
      for (const auto &[m, t] : parse_thresholds(raw.thresholds))
        cfg.thresholds[m] = t;
    if (!raw.checkpoint.empty())
      cfg.checkpoint_path = raw.checkpoint;
    cfg.format = raw.format == "json"  ? output_format::json
                 : raw.format == "csv" ? output_format::csv
                                       : output_format::table;
  } catch (const ktuple::domain_error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return ktuple::cli::exit_domain;
  }

  return ktuple::cli::run(cfg, std::cout, std::cerr);
}
