#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fusionkit/errors.hpp"
#include "fusionkit/report.hpp"
#include "support.hpp"

using namespace fusionkit;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path, std::ios::binary) << body;
  return path.string();
}

}  // namespace

TEST_CASE("reports match the golden files") {
  const Json s3 = run_report(test::group_path("s3"), 3, {"all"});
  CHECK(s3.dump(2) + "\n" == slurp(std::string(FUSIONKIT_GOLDEN_DIR) + "/s3_p3.json"));
  CHECK(passed(s3));

  const Json c2 = run_report(test::group_path("c2"), 2, {"lim1"});
  CHECK(c2.dump(2) + "\n" == slurp(std::string(FUSIONKIT_GOLDEN_DIR) + "/c2_p2_lim1.json"));
  CHECK(c2["tasks"]["lim1"]["lim1"].empty());
  CHECK(c2["tasks"].size() == 1);
}

TEST_CASE("reports are deterministic") {
  const Json a = run_report(test::group_path("a4"), 2, {"all"});
  const Json b = run_report(test::group_path("a4"), 2, {"all"});
  CHECK(a.dump() == b.dump());
  CHECK(passed(a));
  // Task order is fixed regardless of the request order.
  const Json c = run_report(test::group_path("a4"), 2, {"lim1", "classify", "lim1"});
  std::vector<std::string> keys;
  for (auto it = c["tasks"].begin(); it != c["tasks"].end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"classify", "lim1"});
}

TEST_CASE("bad input becomes an error block") {
  const Json missing = run_report(test::group_path("missing"), 2, {"all"});
  CHECK(!passed(missing));
  CHECK(missing["error"]["kind"] == "ParseError");

  const Json not_prime = run_report(test::group_path("s3"), 4, {"lim1"});
  CHECK(!passed(not_prime));
  CHECK(not_prime["error"]["kind"] == "InvalidArgument");

  const Json bad_task = run_report(test::group_path("s3"), 3, {"nonsense"});
  CHECK(!passed(bad_task));

  const std::string garbage = temp_file("fusionkit_garbage.gens", "3\n1 2 x\n");
  CHECK(run_report(garbage, 2, {"all"})["error"]["kind"] == "ParseError");

  RunOptions small;
  small.aut_cap = 10;
  const Json capped = run_report(test::group_path("s4"), 2, {"kappa"}, small);
  CHECK(!passed(capped));
  CHECK(capped["tasks"]["kappa"]["error"]["kind"] == "TooLarge");
}

TEST_CASE("catalog manifests") {
  const std::string empty = temp_file("fusionkit_empty.manifest", "# nothing here\n\n");
  const Json e = catalog_report(empty, {"all"});
  CHECK(e["rows"].empty());
  CHECK(passed(e));

  const std::string data = FUSIONKIT_DATA_DIR;
  const std::string mixed = temp_file(
      "fusionkit_mixed.manifest",
      data + "/groups/a5.gens 2\n" + data + "/groups/s3.gens 3   # comment\n");
  RunOptions tiny;
  tiny.group_cap = 30;
  const Json m = catalog_report(mixed, tasks_for_theorem(3), tiny);
  REQUIRE(m["rows"].size() == 2);
  CHECK(m["rows"][0]["error"] == "ClosureTooLarge");
  CHECK(m["rows"][1]["verdict"] == "pass");
  CHECK(!passed(m));
  CHECK(summary_table(m).find("ClosureTooLarge") != std::string::npos);

  const auto entries = parse_manifest(data + "/catalog.manifest");
  CHECK(entries.size() == 10);
  CHECK(std::filesystem::exists(entries.front().file));
  CHECK_THROWS_AS(parse_manifest(temp_file("fusionkit_bad.manifest", "s4.gens two\n")), ParseError);
}

TEST_CASE("theorem filters") {
  CHECK(tasks_for_theorem(3) == std::vector<std::string>{"lim1"});
  CHECK(tasks_for_theorem(4) == std::vector<std::string>{"kappa"});
  CHECK_THROWS_AS(tasks_for_theorem(5), std::invalid_argument);
  CHECK(normalize_tasks({"all"}) == all_tasks());
}

TEST_CASE("timing is opt-in") {
  CHECK(!run_report(test::group_path("s3"), 3, {"classify"}).contains("timing"));
  RunOptions opt;
  opt.timing = true;
  const Json r = run_report(test::group_path("s3"), 3, {"classify", "lim1"}, opt);
  REQUIRE(r.contains("timing"));
  CHECK(r["timing"].size() == 2);
  CHECK(r["timing"]["lim1"].get<double>() >= 0);
  CHECK(passed(r));
}
