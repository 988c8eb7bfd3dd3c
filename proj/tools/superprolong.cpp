#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "superprolong/errors.hpp"
#include "superprolong/models.hpp"
#include "superprolong/report.hpp"

using namespace superprolong;
using nlohmann::json;

namespace {

enum Exit { ok = 0, config_error = 2, no_structure = 3, mismatch = 4, internal = 5 };

struct CommonFlags {
  std::string config_file;
  std::string cache_dir;
  std::vector<std::string> coeffs;
};

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output_path);
  if (!out) throw std::invalid_argument("cannot open output file " + cfg.output_path);
  out << text;
}

// Flags given on the command line override the config file.
RunConfig resolve_config(const CLI::App& sub, const RunConfig& flags, const CommonFlags& common) {
  RunConfig cfg;
  if (!common.config_file.empty()) {
    std::ifstream in(common.config_file);
    if (!in) throw std::invalid_argument("cannot read config file " + common.config_file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("config file is not valid JSON: ") + e.what());
    }
    apply_config_json(cfg, j);
  }
  auto given = [&](const char* name) { return sub.count(name) > 0; };
  if (given("--dim-v")) cfg.dim_v = flags.dim_v;
  if (given("--copies")) cfg.copies = flags.copies;
  if (given("--coeffs")) cfg.coeffs = common.coeffs;
  if (given("--seed")) cfg.seed = flags.seed;
  if (given("--max-degree")) cfg.max_degree = flags.max_degree;
  if (given("--output")) cfg.output_path = flags.output_path;
  if (given("--format")) cfg.format = flags.format;
  if (given("--emit-sc")) cfg.emit_structure_constants = flags.emit_structure_constants;
  if (given("--timing")) cfg.timing = flags.timing;
  return cfg;
}

void add_run_flags(CLI::App* sub, RunConfig& flags, CommonFlags& common) {
  sub->add_option("--config", common.config_file, "JSON config file (flags override it)");
  sub->add_option("--dim-v", flags.dim_v, "dimension of V");
  sub->add_option("--copies", flags.copies, "number N of spinor copies");
  sub->add_option("--coeffs", common.coeffs, "bracket coefficients in the invariant basis (e.g. 1 -1/2 2+i)");
  sub->add_option("--seed", flags.seed, "seed for bracket sampling (0: all-ones first)");
  sub->add_option("--max-degree", flags.max_degree, "prolongation degree cap");
  sub->add_option("--output", flags.output_path, "output file (default stdout)");
  sub->add_option("--format", flags.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--emit-sc", flags.emit_structure_constants, "include structure constants");
  sub->add_flag("--timing", flags.timing, "record runtime_ms");
  sub->add_option("--cache-dir", common.cache_dir, "directory of cached reports");
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Report JSON, possibly from the cache; runtime_ms is filled in by the caller.
json prolong_json(const RunConfig& cfg, const std::string& cache_dir,
                  const std::function<void(SupertranslationAlgebra&)>& tweak = {}) {
  std::optional<RunCache> cache;
  std::string key = cache_key(cfg);
  if (!cache_dir.empty() && !tweak) {
    cache.emplace(cache_dir);
    if (auto hit = cache->load(key)) return *hit;
  }
  PipelineOutput out = run_pipeline(cfg, tweak);
  json j = report_to_json(out.report);
  if (out.structure_constants) j["structure_constants"] = *out.structure_constants;
  if (cache) cache->store(key, j);
  return j;
}

std::string render(const RunConfig& cfg, const json& j) {
  if (cfg.format == "json") return j.dump(2) + "\n";
  std::optional<double> ms;
  if (!j.at("runtime_ms").is_null()) ms = j.at("runtime_ms").get<double>();
  return csv_header() + "\n" + report_to_csv_row(report_from_json(j), ms) + "\n";
}

int cmd_prolong(const RunConfig& cfg, const CommonFlags& common) {
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();
  json j;
  try {
    j = prolong_json(cfg, common.cache_dir);
  } catch (const NoStructure& e) {
    std::cerr << "no supertranslation structure: " << e.what() << " (gamma_space_dim = " << e.gamma_space_dim << ")\n";
    return no_structure;
  }
  j["runtime_ms"] = cfg.timing ? json(elapsed_ms(t0)) : json(nullptr);
  write_output(cfg, render(cfg, j));
  for (const auto& c : j.at("checks"))
    if (!c.at("ok").get<bool>()) {
      std::cerr << "check failed: " << c.at("name").get<std::string>() << "\n";
      return mismatch;
    }
  return ok;
}

int cmd_enumerate(const RunConfig& cfg) {
  cfg.validate();
  SpinorModule s = build_spinor_module(build_metric_space(cfg.dim_v));
  SpinorData d = lift_to_copies(s, cfg.copies);
  InvariantGammaSpace space = invariant_gamma_space(d);
  json j;
  j["dim_v"] = cfg.dim_v;
  j["n_copies"] = cfg.copies;
  j["gamma_space_dim"] = space.dim();
  json classes = json::array();
  for (const auto& c : space.classes) classes.push_back({{"epsilon", c.epsilon}, {"size", c.members.size()}});
  j["gamma_classes"] = classes;

  std::optional<std::pair<Matrix, Matrix>> proj;
  if (cfg.dim_v % 2 == 0) proj = semispinor_projectors(s);
  json forms = json::array();
  for (int tau : {1, -1})
    for (const auto& f : admissible_forms(s, 1, tau)) {
      if (!f.nondegenerate) continue;
      json e{{"tau", f.tau}, {"sigma", f.sigma}, {"epsilon", f.epsilon}, {"sigma_tau", f.sigma * f.tau}};
      if (proj) {
        auto pairs_same = [&](const Matrix& b) {
          return !(proj->first.transpose() * b * proj->first).is_zero() ||
                 !(proj->second.transpose() * b * proj->second).is_zero();
        };
        e["form_pairing"] = pairs_same(f.matrix) ? "S+ with S+, S- with S-" : "S+ with S-";
        if (f.sigma * f.tau == 1) {
          bool same = false;
          for (const auto& c : gamma_from_matrix(lift_to_copies(s, 1), f.matrix).comps) same = same || pairs_same(c);
          e["bracket_pairing"] = same ? "S+ with S+, S- with S-" : "S+ with S-";
        }
      }
      forms.push_back(e);
    }
  j["admissible_forms"] = forms;
  try {
    build_supertranslation(cfg.dim_v, cfg.copies);
    j["structure"] = true;
  } catch (const NoStructure&) {
    j["structure"] = false;
    j["message"] = "no supertranslation structure";
  }
  write_output(cfg, j.dump(2) + "\n");
  return ok;
}

struct Cell {
  std::size_t d = 0, n = 0;
  std::string status;  // pass, FAIL, none
  std::string expected, verdict, reason;
  std::optional<json> report;
};

Cell verify_cell(std::size_t d, std::size_t n, const RunConfig& base, const std::string& cache_dir, bool corrupt) {
  Cell c{d, n, "FAIL", "", "", "", std::nullopt};
  auto row = expected_row(d, n);
  c.expected = d <= 2 ? "K(1|" + std::to_string(n) + ") growth" : row ? row->name : "trivial positive part or none";
  RunConfig cfg = base;
  cfg.dim_v = d;
  cfg.copies = n;
  cfg.coeffs.reset();
  std::function<void(SupertranslationAlgebra&)> tweak;
  if (corrupt)
    tweak = [](SupertranslationAlgebra& m) { m.gamma.comps[0] = Scalar(2) * m.gamma.comps[0]; };
  try {
    json j = prolong_json(cfg, cache_dir, tweak);
    c.report = j;
    StructureReport r = report_from_json(j);
    c.verdict = r.verdict;
    bool verdict_ok = d <= 2 ? r.verdict == c.expected
                      : row  ? r.verdict == row->name
                             : r.verdict == "trivial positive part";
    if (verdict_ok && row && row->model) {
      auto model = grade_by_element(build_matrix_model(*row->model, n, 4), depth_two_element(n));
      if (model.graded_dimensions() != r.graded_dims) {
        verdict_ok = false;
        c.reason = "matrix model dims " + graded_dims_text(model.graded_dimensions());
      }
    }
    if (!verdict_ok && c.reason.empty()) c.reason = "dims " + graded_dims_text(r.graded_dims);
    if (!r.all_checks_pass()) {
      for (const auto& [name, okc] : r.checks)
        if (!okc) c.reason += (c.reason.empty() ? "" : "; ") + std::string("check ") + name;
      verdict_ok = false;
    }
    c.status = verdict_ok ? "pass" : "FAIL";
  } catch (const NoStructure& e) {
    c.verdict = "no structure";
    c.status = (row || d <= 2) ? "FAIL" : "none";
    if (c.status == "FAIL") c.reason = e.what();
  } catch (const std::exception& e) {
    c.reason = e.what();
  }
  return c;
}

int cmd_verify_table(const RunConfig& base, const CommonFlags& common, std::size_t d_min, std::size_t d_max,
                     std::size_t n_min, std::size_t n_max, unsigned jobs, bool corrupt) {
  if (d_min < 1 || d_max < d_min || n_min < 1 || n_max < n_min) throw std::invalid_argument("empty sweep range");
  RunConfig probe = base;
  probe.dim_v = d_min;
  probe.copies = n_min;
  probe.validate();
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t d = d_min; d <= d_max; ++d)
    for (std::size_t n = n_min; n <= n_max; ++n) cells.emplace_back(d, n);
  std::vector<Cell> results(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < cells.size();)
      results[k] = verify_cell(cells[k].first, cells[k].second, base, common.cache_dir, corrupt);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  bool any_fail = false;
  std::ostringstream table;
  table << "D\\N";
  for (std::size_t n = n_min; n <= n_max; ++n) table << '\t' << n;
  table << '\n';
  for (std::size_t d = d_min, k = 0; d <= d_max; ++d) {
    table << d;
    for (std::size_t n = n_min; n <= n_max; ++n, ++k) {
      table << '\t' << results[k].status;
      any_fail = any_fail || results[k].status == "FAIL";
    }
    table << '\n';
  }
  for (const auto& c : results)
    if (c.status == "FAIL")
      table << "mismatch (" << c.d << "," << c.n << "): expected " << c.expected << ", got "
            << (c.verdict.empty() ? "error" : c.verdict) << (c.reason.empty() ? "" : " [" + c.reason + "]") << '\n';
  std::cout << table.str();

  if (!base.output_path.empty()) {
    std::string text;
    if (base.format == "json") {
      json arr = json::array();
      for (const auto& c : results)
        arr.push_back({{"dim_v", c.d},
                       {"n_copies", c.n},
                       {"status", c.status},
                       {"expected", c.expected},
                       {"verdict", c.verdict},
                       {"reason", c.reason},
                       {"report", c.report ? *c.report : json(nullptr)}});
      text = arr.dump(2) + "\n";
    } else {
      text = csv_header() + "\n";
      for (const auto& c : results)
        if (c.report) text += report_to_csv_row(report_from_json(*c.report)) + "\n";
    }
    write_output(base, text);
  }
  return any_fail ? mismatch : ok;
}

int cmd_compare_model(const RunConfig& cfg) {
  cfg.validate();
  auto row = expected_row(cfg.dim_v, cfg.copies);
  if (!row) throw std::invalid_argument("no reference row for (D,N)=(" + std::to_string(cfg.dim_v) + "," +
                                        std::to_string(cfg.copies) + ")");
  ProlongationOptions po;
  po.max_degree = cfg.max_degree;
  auto r = maximal_prolongation(negative_part(build_supertranslation(cfg.dim_v, cfg.copies)), po);
  json j;
  j["dim_v"] = cfg.dim_v;
  j["n_copies"] = cfg.copies;
  j["name"] = row->name;
  j["engine"] = graded_dims_text(r.graded_dims());
  j["expected"] = graded_dims_text(row->graded_dims);
  bool agree = r.graded_dims() == row->graded_dims;
  if (row->model) {
    auto model = grade_by_element(build_matrix_model(*row->model, cfg.copies, 4), depth_two_element(cfg.copies));
    j["model"] = graded_dims_text(model.graded_dimensions());
    agree = agree && model.graded_dimensions() == row->graded_dims;
  } else {
    j["model"] = nullptr;
  }
  j["agree"] = agree;
  write_output(cfg, j.dump(2) + "\n");
  return agree ? ok : mismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal transitive prolongations of supertranslation algebras"};
  app.require_subcommand(1);

  RunConfig flags;
  CommonFlags common;
  auto* enumerate = app.add_subcommand("enumerate", "invariant bracket space and admissible form inventory");
  auto* prolong = app.add_subcommand("prolong", "full pipeline with a structure report");
  auto* verify = app.add_subcommand("verify-table", "sweep (D,N) cells against the reference rows");
  auto* compare = app.add_subcommand("compare-model", "engine vs matrix model vs reference row");
  for (auto* sub : {enumerate, prolong, verify, compare}) add_run_flags(sub, flags, common);
  std::size_t d_min = 1, d_max = 8, n_min = 1, n_max = 5;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool corrupt = false;
  verify->add_option("--d-min", d_min, "smallest dim V");
  verify->add_option("--d-max", d_max, "largest dim V");
  verify->add_option("--n-min", n_min, "smallest N");
  verify->add_option("--n-max", n_max, "largest N");
  verify->add_option("--jobs", jobs, "worker threads");
  verify->add_flag("--corrupt-gamma", corrupt, "double one bracket component (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    RunConfig cfg = resolve_config(*sub, flags, common);
    if (sub == enumerate) return cmd_enumerate(cfg);
    if (sub == prolong) return cmd_prolong(cfg, common);
    if (sub == compare) return cmd_compare_model(cfg);
    if (cfg.dim_v == 0) cfg.dim_v = 1;  // the sweep sets dim V per cell
    return cmd_verify_table(cfg, common, d_min, d_max, n_min, n_max, jobs, corrupt);
  } catch (const NoStructure& e) {
    std::cerr << "no supertranslation structure: " << e.what() << "\n";
    return no_structure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return internal;
  }
}
