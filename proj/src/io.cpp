#include "apth/io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace apth::io {

namespace {

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) {
      std::vector<std::string> fields;
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = line.find(',', start);
        fields.emplace_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      rows.push_back(std::move(fields));
    }
    pos = end + 1;
  }
  return rows;
}

void expect_header(const std::vector<std::vector<std::string>>& rows,
                   const std::vector<std::string>& header) {
  if (rows.empty() || rows.front() != header) {
    throw std::invalid_argument("unexpected CSV header");
  }
}

template <typename T>
T parse_number(const std::string& field) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::invalid_argument("malformed CSV number '" + field + "'");
  }
  return value;
}

std::string to_hex(std::uint64_t w) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(w));
  return buf;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

json count_to_json(const Count& c) {
  if (c <= std::numeric_limits<std::uint64_t>::max()) return c.convert_to<std::uint64_t>();
  return c.str();
}

Count count_from_json(const json& j) {
  if (j.is_string()) return Count(j.get<std::string>());
  return Count(j.get<std::uint64_t>());
}

json count_report(int k, std::int64_t n, const Count& count) {
  return json{{"k", k}, {"n", n}, {"count", count_to_json(count)}};
}

std::string progressions_to_csv(int k, const std::vector<Progression>& ps) {
  std::ostringstream out;
  out << "start,diff,k\n";
  for (const auto& p : ps) out << p.start() << ',' << p.diff() << ',' << k << '\n';
  return out.str();
}

std::string family_to_csv(const APFamily& family) {
  std::ostringstream out;
  out << "start,diff,k\n";
  family.for_each([&](const Progression& p) {
    out << p.start() << ',' << p.diff() << ',' << family.k() << '\n';
  });
  return out.str();
}

json family_to_json(const APFamily& family) {
  json arr = json::array();
  family.for_each([&](const Progression& p) {
    arr.push_back({{"start", p.start()}, {"diff", p.diff()}});
  });
  return arr;
}

APFamily family_from_csv(std::string_view csv, std::int64_t n) {
  const auto rows = parse_csv(csv);
  expect_header(rows, {"start", "diff", "k"});
  if (rows.size() == 1) throw std::invalid_argument("family CSV has no rows; k is unknown");
  std::vector<Progression> members;
  int k = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 3) throw std::invalid_argument("family CSV row needs 3 fields");
    const int row_k = parse_number<int>(rows[i][2]);
    if (k != 0 && row_k != k) throw std::invalid_argument("family CSV mixes lengths");
    k = row_k;
    members.emplace_back(parse_number<std::int64_t>(rows[i][0]),
                         parse_number<std::int64_t>(rows[i][1]), k);
  }
  return APFamily::from_members(k, n, std::move(members));
}

APFamily family_from_json(const json& j, int k, std::int64_t n) {
  std::vector<Progression> members;
  for (const auto& item : j) {
    members.emplace_back(item.at("start").get<std::int64_t>(), item.at("diff").get<std::int64_t>(),
                         k);
  }
  return APFamily::from_members(k, n, std::move(members));
}

std::string distribution_to_csv(const ExactDistribution& dist) {
  std::ostringstream out;
  out << "r,count,probability\n";
  for (const auto& [r, c] : dist.counts) {
    out << r << ',' << c << ','
        << format_double(static_cast<double>(c) / static_cast<double>(dist.total)) << '\n';
  }
  return out.str();
}

json distribution_to_json(const ExactDistribution& dist) {
  json rows = json::array();
  for (const auto& [r, c] : dist.counts) {
    rows.push_back({{"r", r},
                    {"count", c},
                    {"probability", static_cast<double>(c) / static_cast<double>(dist.total)}});
  }
  return json{{"k", dist.k}, {"n", dist.n}, {"total", dist.total}, {"counts", rows}};
}

namespace {

void finish_distribution(ExactDistribution& dist) {
  std::uint64_t total = 0;
  for (const auto& [r, c] : dist.counts) total += c;
  if (total == 0 || (total & (total - 1)) != 0) {
    throw std::invalid_argument("distribution counts must sum to a power of two");
  }
  dist.total = total;
  dist.n = std::countr_zero(total);
}

}  // namespace

ExactDistribution distribution_from_csv(std::string_view csv, int k) {
  const auto rows = parse_csv(csv);
  expect_header(rows, {"r", "count", "probability"});
  ExactDistribution dist;
  dist.k = k;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 3) throw std::invalid_argument("distribution CSV row needs 3 fields");
    dist.counts[parse_number<std::uint64_t>(rows[i][0])] = parse_number<std::uint64_t>(rows[i][1]);
  }
  finish_distribution(dist);
  return dist;
}

ExactDistribution distribution_from_json(const json& j) {
  ExactDistribution dist;
  dist.k = j.at("k").get<int>();
  for (const auto& row : j.at("counts")) {
    dist.counts[row.at("r").get<std::uint64_t>()] = row.at("count").get<std::uint64_t>();
  }
  finish_distribution(dist);
  if (dist.n != j.at("n").get<std::int64_t>()) {
    throw std::invalid_argument("distribution counts do not sum to 2^n");
  }
  return dist;
}

json estimate_to_json(const ProbEstimate& e) {
  return json{{"k", e.k},
              {"n", e.n},
              {"samples", e.samples},
              {"successes", e.successes},
              {"p_hat", e.p_hat},
              {"ci_low", e.ci_low},
              {"ci_high", e.ci_high},
              {"seed", e.seed},
              {"version", kVersion}};
}

ProbEstimate estimate_from_json(const json& j) {
  ProbEstimate e;
  e.k = j.at("k").get<int>();
  e.n = j.at("n").get<std::int64_t>();
  e.samples = j.at("samples").get<std::uint64_t>();
  e.successes = j.at("successes").get<std::uint64_t>();
  e.p_hat = j.at("p_hat").get<double>();
  e.ci_low = j.at("ci_low").get<double>();
  e.ci_high = j.at("ci_high").get<double>();
  e.seed = j.at("seed").get<std::uint64_t>();
  return e;
}

json threshold_to_json(const ThresholdResult& t) {
  json trace = json::array();
  for (const auto& e : t.trace) {
    json row = estimate_to_json(e);
    row.erase("version");
    trace.push_back(std::move(row));
  }
  return json{{"k", t.k},
              {"target", t.target},
              {"n_star", t.n_star},
              {"bracket_low", t.bracket_low},
              {"bracket_high", t.bracket_high},
              {"samples_per_point", t.samples_per_point},
              {"seed", t.seed},
              {"version", kVersion},
              {"trace", trace}};
}

ThresholdResult threshold_from_json(const json& j) {
  ThresholdResult t;
  t.k = j.at("k").get<int>();
  t.target = j.at("target").get<double>();
  t.n_star = j.at("n_star").get<std::int64_t>();
  t.bracket_low = j.at("bracket_low").get<std::int64_t>();
  t.bracket_high = j.at("bracket_high").get<std::int64_t>();
  t.samples_per_point = j.at("samples_per_point").get<std::uint64_t>();
  t.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& row : j.at("trace")) t.trace.push_back(estimate_from_json(row));
  return t;
}

std::string scaling_to_csv(const ScalingReport& report) {
  std::ostringstream out;
  out << "k,n_star,log2_n_star,ratio_sqrt,ratio_3half\n";
  for (const auto& row : report.rows) {
    out << row.k << ',' << row.n_star << ',' << format_double(row.log2_n_star) << ','
        << format_double(row.ratio_sqrt) << ',' << format_double(row.ratio_3half) << '\n';
  }
  const json tail{{"slope", report.slope},
                  {"strictly_increasing", report.strictly_increasing},
                  {"target", report.target},
                  {"samples", report.samples},
                  {"seed", report.seed},
                  {"version", kVersion}};
  out << tail.dump() << '\n';
  return out.str();
}

json scaling_to_json(const ScalingReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"k", row.k},
                    {"n_star", row.n_star},
                    {"log2_n_star", row.log2_n_star},
                    {"ratio_sqrt", row.ratio_sqrt},
                    {"ratio_3half", row.ratio_3half}});
  }
  return json{{"rows", rows},
              {"slope", report.slope},
              {"strictly_increasing", report.strictly_increasing},
              {"target", report.target},
              {"samples", report.samples},
              {"seed", report.seed},
              {"version", kVersion}};
}

ScalingReport scaling_from_csv(std::string_view csv) {
  const std::size_t brace = csv.rfind("\n{");
  if (brace == std::string_view::npos) throw std::invalid_argument("scaling CSV lacks trailer");
  const auto rows = parse_csv(csv.substr(0, brace + 1));
  expect_header(rows, {"k", "n_star", "log2_n_star", "ratio_sqrt", "ratio_3half"});
  const json tail = json::parse(csv.substr(brace + 1));
  ScalingReport report;
  report.slope = tail.at("slope").get<double>();
  report.strictly_increasing = tail.at("strictly_increasing").get<bool>();
  report.target = tail.at("target").get<double>();
  report.samples = tail.at("samples").get<std::uint64_t>();
  report.seed = tail.at("seed").get<std::uint64_t>();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 5) throw std::invalid_argument("scaling CSV row needs 5 fields");
    report.rows.push_back({parse_number<int>(rows[i][0]), parse_number<std::int64_t>(rows[i][1]),
                           parse_number<double>(rows[i][2]), parse_number<double>(rows[i][3]),
                           parse_number<double>(rows[i][4])});
  }
  return report;
}

json bound_to_json(const BoundReport& report) {
  json flags = json::object();
  for (const auto& [name, value] : report.flags) flags[name] = value;
  return json{{"bound", report.bound},
              {"k", report.k},
              {"n", report.n},
              {"parameter", report.parameter},
              {"q", report.q},
              {"s", report.s},
              {"r", report.r},
              {"family_size", count_to_json(report.family_size)},
              {"value", report.value},
              {"flags", flags}};
}

json coloring_to_json(const Coloring& c) {
  json words = json::array();
  for (const auto w : c.words()) words.push_back(to_hex(w));
  return json{{"n", c.n()}, {"words", words}};
}

Coloring coloring_from_json(const json& j) {
  std::vector<std::uint64_t> words;
  for (const auto& w : j.at("words")) {
    const auto s = w.get<std::string>();
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, 16);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw std::invalid_argument("malformed hex word '" + s + "'");
    }
    words.push_back(value);
  }
  return Coloring::from_words(j.at("n").get<std::int64_t>(), std::move(words));
}

}  // namespace apth::io
