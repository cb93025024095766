#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../../tools/cli.hpp"
#include "apth/io.hpp"
#include "doctest.h"

using namespace apth;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args,
               std::optional<std::string> env_cap = std::nullopt) {
  std::ostringstream out;
  std::ostringstream err;
  bool help = false;
  Outcome o;
  const auto config = cli::parse_args(args, out, err, help);
  if (!config) {
    o.code = help ? 0 : 2;
  } else {
    o.code = cli::run(*config, out, err, std::move(env_cap));
  }
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("count prints {k, n, count}") {
  const Outcome o = invoke({"count", "--k", "3", "--n", "5", "--format", "json"});
  CHECK(o.code == 0);
  const auto j = io::json::parse(o.out);
  CHECK(j == io::json{{"k", 3}, {"n", 5}, {"count", 4}});
  CHECK(invoke({"count", "--k", "3", "--n", "5", "--format", "csv"}).out == "k,n,count\n3,5,4\n");
}

TEST_CASE("exact respects the brute cap") {
  const Outcome capped = invoke({"exact", "--k", "3", "--n", "40"});
  CHECK(capped.code == 3);
  CHECK(capped.err.rfind("error: 3: ", 0) == 0);
  CHECK(capped.out.empty());

  const Outcome ok = invoke({"exact", "--k", "3", "--n", "9"});
  CHECK(ok.code == 0);
  CHECK(io::json::parse(ok.out).at("probability") == 1.0);
}

TEST_CASE("flag --brute-cap wins over the environment") {
  const std::vector<std::string> args = {"exact", "--k", "3", "--n", "12"};
  CHECK(invoke(args, "10").code == 3);
  CHECK(invoke(args, "12").code == 0);
  auto with_flag = args;
  with_flag.insert(with_flag.end(), {"--brute-cap", "14"});
  CHECK(invoke(with_flag, "10").code == 0);
  auto tight_flag = args;
  tight_flag.insert(tight_flag.end(), {"--brute-cap", "8"});
  CHECK(invoke(tight_flag, "20").code == 3);
  CHECK(invoke(args, "abc").code == 2);
}

TEST_CASE("simulate reports p_hat 1 at W(3)") {
  const Outcome o = invoke({"simulate", "--k", "3", "--n", "9", "--samples", "1000", "--seed", "1"});
  CHECK(o.code == 0);
  const auto j = io::json::parse(o.out);
  CHECK(j.at("p_hat") == 1.0);
  for (const char* key : {"k", "n", "samples", "successes", "ci_low", "ci_high", "seed", "version"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("argument errors exit 2 with a prefixed message") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"count", "--k", "2", "--n", "5"},
           {"count", "--n", "5"},
           {"count", "--k", "3", "--n", "5", "--bogus"},
           {"frobnicate"},
           {"simulate", "--k", "3", "--n", "9", "--samples", "0"},
           {"sweep", "--k", "5", "--target", "0.99"},
           {"bounds", "--k", "10", "--g", "2"},
           {"count", "--k", "3", "--n", "5", "--format", "xml"},
       }) {
    const Outcome o = invoke(args);
    CHECK(o.code == 2);
    CHECK(o.err.rfind("error: 2: ", 0) == 0);
    CHECK(o.err.find('\n') == o.err.size() - 1);
  }
}

TEST_CASE("sweep past the ceiling exits 4") {
  const Outcome o = invoke({"sweep", "--k", "10", "--samples", "100", "--ceiling", "20"});
  CHECK(o.code == 4);
  CHECK(o.err.rfind("error: 4: ", 0) == 0);
}

TEST_CASE("subcommand outputs parse back through the readers") {
  const Outcome fam = invoke({"family", "--k", "3", "--n", "12"});
  CHECK(io::family_from_csv(fam.out, 12).members() == lemma_family(3, 12).members());

  const Outcome greedy = invoke({"greedy", "--k", "3", "--n", "5"});
  CHECK(greedy.out == "start,diff,k\n1,1,3\n3,1,3\n");

  const Outcome dist = invoke({"dist", "--k", "3", "--n", "3"});
  CHECK(dist.out == "r,count,probability\n0,6,0.75\n1,2,0.25\n");

  const Outcome en = invoke({"enumerate", "--k", "3", "--n", "5", "--d-min", "2"});
  CHECK(en.out == "start,diff,k\n1,2,3\n");

  const Outcome bounds = invoke({"bounds", "--k", "12", "--f", "2"});
  const auto b = io::json::parse(bounds.out);
  CHECK(b.at("n") == 5320);
  CHECK(b.at("thm1").at("s") == 2660);

  const Outcome sweep = invoke({"sweep", "--k", "3", "--samples", "20000", "--seed", "5"});
  CHECK(io::threshold_from_json(io::json::parse(sweep.out)).n_star == 5);

  const Outcome report =
      invoke({"report", "--k-low", "4", "--k-high", "6", "--samples", "500", "--seed", "2"});
  CHECK(report.code == 0);
  CHECK(io::scaling_from_csv(report.out).rows.size() == 3);
}

TEST_CASE("--out writes byte-identical files for identical invocations") {
  const auto dir = std::filesystem::temp_directory_path() / "apth_cli_test";
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.json";
  const auto b = dir / "b.json";
  const std::vector<std::string> base = {"sweep", "--k", "6", "--samples", "800", "--seed", "3"};
  auto first = base;
  first.insert(first.end(), {"--out", a.string()});
  auto second = base;
  second.insert(second.end(), {"--out", b.string(), "--workers", "3"});
  CHECK(invoke(first).code == 0);
  CHECK(invoke(second).code == 0);
  CHECK(!slurp(a).empty());
  CHECK(slurp(a) == slurp(b));
  std::filesystem::remove_all(dir);
}

TEST_CASE("selftest passes") {
  const Outcome o = invoke({"selftest"});
  CHECK(o.code == 0);
}
