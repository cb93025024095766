#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "apth/coloring.hpp"
#include "apth/errors.hpp"
#include "apth/io.hpp"
#include "apth/montecarlo.hpp"
#include "apth/probability.hpp"
#include "apth/progressions.hpp"
#include "apth/selftest.hpp"

namespace apth::cli {

namespace {

using io::json;

/// Argument problem detected after parsing; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit_error(std::ostream& err, int code, const std::string& message) {
  std::string line = message;
  for (char& ch : line) {
    if (ch == '\n') ch = ' ';
  }
  err << "error: " << code << ": " << line << '\n';
}

int require_k(const RunConfig& c) {
  if (!c.k) throw UsageError("--k is required");
  if (*c.k < 3) throw UsageError("--k must be >= 3");
  return *c.k;
}

std::int64_t require_n(const RunConfig& c) {
  if (!c.n) throw UsageError("--n is required");
  if (*c.n < 1 || *c.n > kMaxN) throw UsageError("--n must lie in [1, 2^40]");
  return *c.n;
}

int resolve_brute_cap(const RunConfig& c, const std::optional<std::string>& env) {
  if (c.brute_cap) {
    if (*c.brute_cap < 1 || *c.brute_cap > kMaxBruteCap) {
      throw UsageError("--brute-cap must lie in [1, " + std::to_string(kMaxBruteCap) + "]");
    }
    return *c.brute_cap;
  }
  if (env && !env->empty()) {
    int cap = 0;
    try {
      std::size_t used = 0;
      cap = std::stoi(*env, &used);
      if (used != env->size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw UsageError("APTH_BRUTE_CAP is not an integer: '" + *env + "'");
    }
    if (cap < 1 || cap > kMaxBruteCap) {
      throw UsageError("APTH_BRUTE_CAP must lie in [1, " + std::to_string(kMaxBruteCap) + "]");
    }
    return cap;
  }
  return kDefaultBruteCap;
}

Format format_or(const RunConfig& c, Format fallback) { return c.format.value_or(fallback); }

std::string json_line(const json& j) { return j.dump() + "\n"; }

/// Flat object -> two-line CSV (header + values) for scalar-valued reports.
std::string flat_csv(const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string header;
  std::string values;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) {
      header += ',';
      values += ',';
    }
    header += fields[i].first;
    values += fields[i].second;
  }
  return header + "\n" + values + "\n";
}

std::string count_output(const RunConfig& c) {
  const int k = require_k(c);
  const std::int64_t n = require_n(c);
  const Count count = count_aps(k, n);
  if (format_or(c, Format::kJson) == Format::kJson) return json_line(io::count_report(k, n, count));
  return flat_csv({{"k", std::to_string(k)}, {"n", std::to_string(n)}, {"count", count.str()}});
}

std::string enumerate_output(const RunConfig& c) {
  const int k = require_k(c);
  const std::int64_t n = require_n(c);
  std::optional<DiffRange> range;
  if (c.d_min || c.d_max) {
    const std::int64_t d_top = n >= k ? max_diff(k, n) : 0;
    range = DiffRange{c.d_min.value_or(1), c.d_max.value_or(d_top)};
    try {
      detail::checked_diff_range(k, n, range);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--d-min/--d-max: ") + e.what());
    }
  }
  const auto aps = enumerate_aps(k, n, range);
  if (format_or(c, Format::kCsv) == Format::kCsv) return io::progressions_to_csv(k, aps);
  json arr = json::array();
  for (const auto& p : aps) arr.push_back({{"start", p.start()}, {"diff", p.diff()}});
  return json_line(arr);
}

std::string family_output(const RunConfig& c, const APFamily& family) {
  if (format_or(c, Format::kCsv) == Format::kCsv) return io::family_to_csv(family);
  return json_line(io::family_to_json(family));
}

std::string exact_output(const RunConfig& c, int cap) {
  const int k = require_k(c);
  const std::int64_t n = require_n(c);
  const Rational p = exact_prob_mono(k, n, cap);
  const BigCount total = BigCount(1) << static_cast<unsigned>(n);
  const BigCount mono = boost::multiprecision::numerator(p) * total /
                        boost::multiprecision::denominator(p);
  const double value = p.convert_to<double>();
  if (format_or(c, Format::kJson) == Format::kJson) {
    return json_line({{"k", k},
                      {"n", n},
                      {"mono_colorings", mono.convert_to<std::uint64_t>()},
                      {"total", total.convert_to<std::uint64_t>()},
                      {"probability", value}});
  }
  return flat_csv({{"k", std::to_string(k)},
                   {"n", std::to_string(n)},
                   {"mono_colorings", mono.str()},
                   {"total", total.str()},
                   {"probability", io::format_double(value)}});
}

std::string dist_output(const RunConfig& c, int cap) {
  const ExactDistribution dist = mono_count_distribution(require_k(c), require_n(c), cap);
  if (format_or(c, Format::kCsv) == Format::kCsv) return io::distribution_to_csv(dist);
  return json_line(io::distribution_to_json(dist));
}

std::string bounds_output(const RunConfig& c) {
  const int k = require_k(c);
  if (c.f && *c.f < 1.0) throw UsageError("--f must be >= 1");
  if (c.g && !(*c.g > 0.0 && *c.g <= 1.0)) throw UsageError("--g must lie in (0, 1]");
  std::int64_t n = 0;
  if (c.n) {
    n = require_n(c);
  } else if (c.f) {
    n = nplus(k, *c.f);
  } else if (c.g) {
    n = nminus(k, *c.g);
  } else {
    throw UsageError("bounds needs --n, --f or --g");
  }
  json out{{"k", k},
           {"n", n},
           {"count_aps", io::count_to_json(count_aps(k, n))},
           {"expected_mono", expected_mono(k, n)},
           {"markov_upper", markov_upper(k, n)}};
  if (c.f) {
    out["f"] = *c.f;
    out["nplus"] = nplus(k, *c.f);
    try {
      out["thm1"] = io::bound_to_json(thm1_p0_upper(k, n, *c.f));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--f: ") + e.what());
    }
  }
  if (c.g) {
    out["g"] = *c.g;
    out["nminus"] = nminus(k, *c.g);
    out["thm2_p0_lower"] = thm2_p0_lower(k, *c.g);
    out["thm2_expectation_bound"] = k * *c.g * *c.g / (k - 2.0);
  }
  if (format_or(c, Format::kJson) == Format::kJson) return json_line(out);

  std::string csv = "quantity,value\n";
  const auto add = [&](const std::string& key, const json& v) {
    std::string text;
    if (v.is_boolean()) {
      text = v.get<bool>() ? "1" : "0";
    } else if (v.is_number_float()) {
      text = io::format_double(v.get<double>());
    } else if (v.is_string()) {
      text = v.get<std::string>();
    } else {
      text = v.dump();
    }
    csv += key + "," + text + "\n";
  };
  for (const auto& [key, value] : out.items()) {
    if (key != "thm1") add(key, value);
  }
  if (out.contains("thm1")) {
    for (const auto& [key, value] : out["thm1"].items()) {
      if (key == "flags") {
        for (const auto& [flag, on] : value.items()) add("thm1." + flag, on);
      } else if (key != "bound") {
        add("thm1." + key, value);
      }
    }
  }
  return csv;
}

std::string simulate_output(const RunConfig& c) {
  const int k = require_k(c);
  const std::int64_t n = require_n(c);
  const ProbEstimate e = estimate_prob(k, n, c.samples, c.seed, c.workers);
  if (format_or(c, Format::kJson) == Format::kJson) return json_line(io::estimate_to_json(e));
  return flat_csv({{"k", std::to_string(e.k)},
                   {"n", std::to_string(e.n)},
                   {"samples", std::to_string(e.samples)},
                   {"successes", std::to_string(e.successes)},
                   {"p_hat", io::format_double(e.p_hat)},
                   {"ci_low", io::format_double(e.ci_low)},
                   {"ci_high", io::format_double(e.ci_high)},
                   {"seed", std::to_string(e.seed)},
                   {"version", std::string(io::kVersion)}});
}

ThresholdOptions threshold_options(const RunConfig& c) {
  ThresholdOptions options;
  options.ceiling = c.ceiling;
  options.workers = c.workers;
  return options;
}

void require_target(const RunConfig& c) {
  if (!(c.target >= 0.05 && c.target <= 0.95)) throw UsageError("--target must lie in [0.05, 0.95]");
}

std::string sweep_output(const RunConfig& c) {
  const int k = require_k(c);
  require_target(c);
  const ThresholdResult t = threshold_search(k, c.target, c.samples, c.seed, threshold_options(c));
  if (format_or(c, Format::kJson) == Format::kJson) return json_line(io::threshold_to_json(t));
  std::ostringstream csv;
  csv << "n,samples,successes,p_hat,ci_low,ci_high\n";
  for (const auto& e : t.trace) {
    csv << e.n << ',' << e.samples << ',' << e.successes << ',' << io::format_double(e.p_hat) << ','
        << io::format_double(e.ci_low) << ',' << io::format_double(e.ci_high) << '\n';
  }
  json tail = io::threshold_to_json(t);
  tail.erase("trace");
  csv << tail.dump() << '\n';
  return csv.str();
}

std::string report_output(const RunConfig& c) {
  if (c.k_low < 3) throw UsageError("--k-low must be >= 3");
  if (c.k_high < c.k_low) throw UsageError("--k-high must be >= --k-low");
  require_target(c);
  const ScalingReport r =
      scaling_report(c.k_low, c.k_high, c.target, c.samples, c.seed, threshold_options(c));
  if (format_or(c, Format::kCsv) == Format::kCsv) return io::scaling_to_csv(r);
  return json_line(io::scaling_to_json(r));
}

std::string dispatch(const RunConfig& c, const std::optional<std::string>& env, bool& ok) {
  ok = true;
  if (c.samples == 0) throw UsageError("--samples must be >= 1");
  if (c.workers == 0) throw UsageError("--workers must be >= 1");
  switch (c.subcommand) {
    case Subcommand::kCount:
      return count_output(c);
    case Subcommand::kEnumerate:
      return enumerate_output(c);
    case Subcommand::kFamily:
      return family_output(c, lemma_family(require_k(c), require_n(c)));
    case Subcommand::kGreedy:
      return family_output(c, greedy_max_family(require_k(c), require_n(c), c.seed_with_lemma, c.order));
    case Subcommand::kExact:
      return exact_output(c, resolve_brute_cap(c, env));
    case Subcommand::kDist:
      return dist_output(c, resolve_brute_cap(c, env));
    case Subcommand::kBounds:
      return bounds_output(c);
    case Subcommand::kSimulate:
      return simulate_output(c);
    case Subcommand::kSweep:
      return sweep_output(c);
    case Subcommand::kReport:
      return report_output(c);
    case Subcommand::kSelftest: {
      std::ostringstream log;
      ok = run_selftest(log);
      return log.str();
    }
  }
  throw UsageError("unknown subcommand");
}

}  // namespace

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out,
                                    std::ostream& err, bool& help) {
  help = false;
  RunConfig config;
  CLI::App app{"Monochromatic arithmetic progressions in random 2-colorings", "apth"};
  app.require_subcommand(1);

  int k = 0;
  std::int64_t n = 0;
  double f = 0.0;
  double g = 0.0;
  std::string format;
  std::string out_path;
  int brute_cap = 0;
  std::int64_t d_min = 0;
  std::int64_t d_max = 0;
  std::string order = "diff-start";

  const std::map<std::string, Subcommand> names = {
      {"count", Subcommand::kCount},       {"enumerate", Subcommand::kEnumerate},
      {"family", Subcommand::kFamily},     {"greedy", Subcommand::kGreedy},
      {"exact", Subcommand::kExact},       {"dist", Subcommand::kDist},
      {"bounds", Subcommand::kBounds},     {"simulate", Subcommand::kSimulate},
      {"sweep", Subcommand::kSweep},       {"report", Subcommand::kReport},
      {"selftest", Subcommand::kSelftest},
  };
  const std::map<std::string, std::string> descriptions = {
      {"count", "number of k-APs in [1,n]"},
      {"enumerate", "list k-APs in [1,n], ordered by (diff, start)"},
      {"family", "the large-difference almost-disjoint family"},
      {"greedy", "greedy maximal almost-disjoint family"},
      {"exact", "exact mono probability by enumerating colorings"},
      {"dist", "exact distribution of the number of mono k-APs"},
      {"bounds", "closed-form bounds and scale functions"},
      {"simulate", "Monte Carlo estimate of the mono probability"},
      {"sweep", "locate the threshold n for a target probability"},
      {"report", "threshold scaling table over a range of k"},
      {"selftest", "run the built-in invariant checks"},
  };

  std::map<std::string, std::map<std::string, CLI::Option*>> opts;
  for (const auto& [name, sub] : names) {
    CLI::App* cmd = app.add_subcommand(name, descriptions.at(name));
    auto& o = opts[name];
    const auto add_format = [&] {
      o["format"] = cmd->add_option("--format", format, "csv or json")
                        ->check(CLI::IsMember({"csv", "json"}));
      o["out"] = cmd->add_option("--out", out_path, "write output to this file");
    };
    if (sub == Subcommand::kSelftest) continue;
    if (sub != Subcommand::kReport) o["k"] = cmd->add_option("--k", k, "progression length (>= 3)");
    add_format();
    switch (sub) {
      case Subcommand::kCount:
      case Subcommand::kFamily:
        o["n"] = cmd->add_option("--n", n, "interval length");
        break;
      case Subcommand::kEnumerate:
        o["n"] = cmd->add_option("--n", n, "interval length");
        o["d_min"] = cmd->add_option("--d-min", d_min, "smallest common difference");
        o["d_max"] = cmd->add_option("--d-max", d_max, "largest common difference");
        break;
      case Subcommand::kGreedy:
        o["n"] = cmd->add_option("--n", n, "interval length");
        cmd->add_flag("--seed-with-lemma", config.seed_with_lemma,
                      "insert the large-difference family first");
        cmd->add_option("--order", order, "scan order")
            ->check(CLI::IsMember({"diff-start", "start-diff"}));
        break;
      case Subcommand::kExact:
      case Subcommand::kDist:
        o["n"] = cmd->add_option("--n", n, "interval length");
        o["brute_cap"] = cmd->add_option("--brute-cap", brute_cap,
                                         "largest n for exact enumeration (default 26)");
        break;
      case Subcommand::kBounds:
        o["n"] = cmd->add_option("--n", n, "interval length (default: nplus or nminus)");
        o["f"] = cmd->add_option("--f", f, "upper-scale constant f >= 1");
        o["g"] = cmd->add_option("--g", g, "lower-scale constant g in (0,1]");
        break;
      case Subcommand::kSimulate:
        o["n"] = cmd->add_option("--n", n, "interval length");
        cmd->add_option("--samples", config.samples, "number of colorings");
        cmd->add_option("--seed", config.seed, "64-bit seed");
        cmd->add_option("--workers", config.workers, "worker threads");
        break;
      case Subcommand::kSweep:
      case Subcommand::kReport:
        if (sub == Subcommand::kReport) {
          cmd->add_option("--k-low", config.k_low, "smallest k")->required();
          cmd->add_option("--k-high", config.k_high, "largest k")->required();
        }
        cmd->add_option("--target", config.target, "target probability in [0.05, 0.95]");
        cmd->add_option("--samples", config.samples, "colorings per point");
        cmd->add_option("--seed", config.seed, "64-bit seed");
        cmd->add_option("--workers", config.workers, "worker threads");
        cmd->add_option("--ceiling", config.ceiling, "largest n tried while bracketing");
        break;
      default:
        break;
    }
  }

  std::vector<std::string> argv_storage;
  argv_storage.emplace_back("apth");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    help = true;
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    help = true;
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    emit_error(err, kUsage, e.what());
    return std::nullopt;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  config.subcommand = names.at(name);
  const auto given = [&](const char* key) {
    const auto it = opts[name].find(key);
    return it != opts[name].end() && it->second->count() > 0;
  };
  if (given("k")) config.k = k;
  if (given("n")) config.n = n;
  if (given("f")) config.f = f;
  if (given("g")) config.g = g;
  if (given("format")) config.format = format == "json" ? Format::kJson : Format::kCsv;
  if (given("out")) config.out = out_path;
  if (given("brute_cap")) config.brute_cap = brute_cap;
  if (given("d_min")) config.d_min = d_min;
  if (given("d_max")) config.d_max = d_max;
  config.order = order == "start-diff" ? ScanOrder::kByStartDiff : ScanOrder::kByDiffStart;
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_brute_cap) {
  std::string text;
  bool ok = true;
  try {
    text = dispatch(config, env_brute_cap, ok);
  } catch (const UsageError& e) {
    emit_error(err, kUsage, e.what());
    return kUsage;
  } catch (const BruteCapExceeded& e) {
    emit_error(err, kBruteCap, e.what());
    return kBruteCap;
  } catch (const SearchCeilingExceeded& e) {
    emit_error(err, kCeiling, e.what());
    return kCeiling;
  } catch (const std::invalid_argument& e) {
    emit_error(err, kUsage, e.what());
    return kUsage;
  } catch (const std::exception& e) {
    emit_error(err, kFailure, e.what());
    return kFailure;
  }

  if (config.out) {
    std::ofstream file(*config.out, std::ios::binary);
    if (!file) {
      emit_error(err, kUsage, "cannot open --out file " + *config.out);
      return kUsage;
    }
    file << text;
  } else {
    out << text;
  }
  return ok ? kOk : kFailure;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  bool help = false;
  const auto config = parse_args(args, out, err, help);
  if (!config) return help ? kOk : kUsage;
  std::optional<std::string> env;
  if (const char* value = std::getenv("APTH_BRUTE_CAP")) env = value;
  return run(*config, out, err, env);
}

}  // namespace apth::cli
