#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "superprolong/errors.hpp"
#include "superprolong/report.hpp"

using namespace superprolong;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("report JSON round trip and CSV agreement") {
  RunConfig cfg;
  cfg.dim_v = 3;
  cfg.copies = 2;
  auto out = run_pipeline(cfg);
  json j = report_to_json(out.report);
  CHECK(j["runtime_ms"].is_null());
  CHECK(j["verdict"] == "osp(2|4)");
  CHECK(j["graded_dims"]["-1"] == 4);
  StructureReport back = report_from_json(j);
  CHECK(report_to_json(back) == j);

  auto header = split(csv_header(), ',');
  auto row = split(report_to_csv_row(out.report), ',');
  REQUIRE(header.size() == row.size());
  for (std::size_t k = 0; k < header.size(); ++k) {
    const std::string& key = header[k];
    const json& v = j.at(key);
    std::string expect;
    if (key == "graded_dims" || key == "minimal_ideal_dims") {
      expect = v.is_null() ? "" : graded_dims_text(key == "graded_dims" ? back.graded_dims : *back.minimal_ideal_dims);
    } else if (key == "checks") {
      for (const auto& c : v) expect += (expect.empty() ? "" : ";") + c["name"].get<std::string>() + "=" + (c["ok"].get<bool>() ? "1" : "0");
    } else if (key == "verdict") {
      expect = "\"" + v.get<std::string>() + "\"";
    } else if (v.is_null()) {
      expect = "";
    } else {
      expect = v.dump();
    }
    CHECK_MESSAGE(row[k] == expect, key);
  }
}

TEST_CASE("reports are byte-stable") {
  RunConfig cfg;
  cfg.dim_v = 4;
  cfg.copies = 1;
  CHECK(report_to_json(run_pipeline(cfg).report).dump() == report_to_json(run_pipeline(cfg).report).dump());
}

TEST_CASE("structure constants export") {
  RunConfig cfg;
  cfg.dim_v = 3;
  cfg.copies = 1;
  cfg.emit_structure_constants = true;
  auto out = run_pipeline(cfg);
  REQUIRE(out.structure_constants);
  CHECK((*out.structure_constants)["basis"].size() == 14);
  CHECK_FALSE((*out.structure_constants)["brackets"].empty());
}

TEST_CASE("config validation and file overrides") {
  RunConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  apply_config_json(cfg, json{{"dim_v", 5}, {"copies", 2}, {"max_degree", 4}, {"coeffs", {"1"}}});
  CHECK(cfg.dim_v == 5);
  CHECK(cfg.max_degree == 4);
  CHECK_NOTHROW(cfg.validate());
  cfg.max_degree = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_json(cfg, json{{"bogus", 1}}), std::invalid_argument);
  RunConfig none;
  none.dim_v = 5;
  none.copies = 1;
  CHECK_THROWS_AS(run_pipeline(none), NoStructure);
}

TEST_CASE("run cache") {
  RunConfig a, b;
  a.dim_v = b.dim_v = 3;
  b.seed = 7;
  CHECK(cache_key(a) != cache_key(b));
  a.output_path = "elsewhere.json";
  a.timing = true;
  RunConfig c;
  c.dim_v = 3;
  CHECK(cache_key(a) == cache_key(c));
  auto dir = std::filesystem::temp_directory_path() / "superprolong_cache_test";
  std::filesystem::remove_all(dir);
  RunCache cache(dir);
  CHECK_FALSE(cache.load("k"));
  cache.store("k", json{{"x", 1}});
  CHECK(cache.load("k") == json{{"x", 1}});
  std::filesystem::remove_all(dir);
}
