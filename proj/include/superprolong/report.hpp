#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "superprolong/analysis.hpp"

namespace superprolong {

struct RunConfig {
  std::size_t dim_v = 0;
  std::size_t copies = 1;
  std::optional<std::vector<std::string>> coeffs;
  std::uint64_t seed = 0;
  int max_degree = 12;
  std::string output_path;  // empty: stdout
  std::string format = "json";
  bool emit_structure_constants = false;
  bool timing = false;

  // Throws std::invalid_argument on a violated invariant.
  void validate() const;
};

// Fields present in the file override the defaults in cfg.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);

struct PipelineOutput {
  StructureReport report;
  std::optional<nlohmann::json> structure_constants;
};

// Build, prolong, analyze and classify. Throws NoStructure when no
// non-degenerate bracket exists. tweak, if set, may modify the bracket before
// prolongation (negative controls).
PipelineOutput run_pipeline(const RunConfig& cfg, const std::function<void(SupertranslationAlgebra&)>& tweak = {});

nlohmann::json report_to_json(const StructureReport& r, std::optional<double> runtime_ms = std::nullopt);
// Parses what report_to_json emits (runtime_ms is dropped).
StructureReport report_from_json(const nlohmann::json& j);
nlohmann::json algebra_to_json(const GradedSuperalgebra& g);

// CSV with one header line; nested maps as "p:d;p:d", checks as "name=0|1;...".
std::string csv_header();
std::string report_to_csv_row(const StructureReport& r, std::optional<double> runtime_ms = std::nullopt);
std::string graded_dims_text(const std::map<int, std::size_t>& dims);

// Content hash of the fields that determine a run.
std::string cache_key(const RunConfig& cfg);

class RunCache {
 public:
  explicit RunCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::optional<nlohmann::json> load(const std::string& key) const;
  void store(const std::string& key, const nlohmann::json& value) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace superprolong
