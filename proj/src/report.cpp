#include "superprolong/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "superprolong/errors.hpp"

namespace superprolong {

using nlohmann::json;

void RunConfig::validate() const {
  if (dim_v < 1) throw std::invalid_argument("dim-v must be at least 1");
  if (copies < 1) throw std::invalid_argument("copies must be at least 1");
  if (max_degree < 2) throw std::invalid_argument("max-degree must be at least 2");
  if (format != "json" && format != "csv") throw std::invalid_argument("format must be json or csv");
}

void apply_config_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  for (const auto& [key, val] : j.items()) {
    if (key == "dim_v") cfg.dim_v = val.get<std::size_t>();
    else if (key == "copies" || key == "n_copies") cfg.copies = val.get<std::size_t>();
    else if (key == "coeffs") cfg.coeffs = val.get<std::vector<std::string>>();
    else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
    else if (key == "max_degree") cfg.max_degree = val.get<int>();
    else if (key == "output_path" || key == "output") cfg.output_path = val.get<std::string>();
    else if (key == "format") cfg.format = val.get<std::string>();
    else if (key == "emit_structure_constants" || key == "emit_sc") cfg.emit_structure_constants = val.get<bool>();
    else if (key == "timing") cfg.timing = val.get<bool>();
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

PipelineOutput run_pipeline(const RunConfig& cfg, const std::function<void(SupertranslationAlgebra&)>& tweak) {
  cfg.validate();
  BuildOptions bo;
  bo.seed = cfg.seed;
  if (cfg.coeffs) {
    std::vector<Scalar> c;
    for (const auto& s : *cfg.coeffs) c.push_back(Scalar::parse(s));
    bo.coeffs = std::move(c);
  }
  SupertranslationAlgebra m = build_supertranslation(cfg.dim_v, cfg.copies, bo);
  if (tweak) tweak(m);
  ProlongationOptions po;
  po.max_degree = cfg.max_degree;
  po.verify_extra_layer = true;
  ProlongationResult r = maximal_prolongation(negative_part(m), po);
  PipelineOutput out;
  out.report = classify(m, r);
  if (!m.selection_note.empty()) out.report.notes.insert(out.report.notes.begin(), m.selection_note);
  if (cfg.emit_structure_constants) out.structure_constants = algebra_to_json(r.algebra);
  return out;
}

namespace {

json dims_json(const std::map<int, std::size_t>& d) {
  json j = json::object();
  for (auto [p, n] : d) j[std::to_string(p)] = n;
  return j;
}

std::map<int, std::size_t> dims_from_json(const json& j) {
  std::map<int, std::size_t> d;
  for (const auto& [k, v] : j.items()) d[std::stoi(k)] = v.get<std::size_t>();
  return d;
}

std::string runtime_text(std::optional<double> ms) {
  if (!ms) return "";
  std::ostringstream os;
  os << *ms;
  return os.str();
}

}  // namespace

json report_to_json(const StructureReport& r, std::optional<double> runtime_ms) {
  json j;
  j["dim_v"] = r.dim_v;
  j["n_copies"] = r.n_copies;
  j["gamma_space_dim"] = r.gamma_space_dim;
  j["graded_dims"] = dims_json(r.graded_dims);
  j["h0_dim"] = r.h0_dim;
  j["verdict"] = r.verdict;
  j["positive_part"] = r.positive_part;
  j["minimal_ideal_dims"] = r.minimal_ideal_dims ? dims_json(*r.minimal_ideal_dims) : json(nullptr);
  j["simple"] = r.simple ? json(*r.simple) : json(nullptr);
  j["jacobi_ok"] = r.jacobi_ok;
  j["so_ideal_ok"] = r.so_ideal_ok;
  j["decomposition_ok"] = r.decomposition_ok;
  j["truncated_above"] = r.truncated_above ? json(*r.truncated_above) : json(nullptr);
  json checks = json::array();
  for (const auto& [name, ok] : r.checks) checks.push_back({{"name", name}, {"ok", ok}});
  j["checks"] = checks;
  j["notes"] = r.notes;
  j["runtime_ms"] = runtime_ms ? json(*runtime_ms) : json(nullptr);
  return j;
}

StructureReport report_from_json(const json& j) {
  StructureReport r;
  r.dim_v = j.at("dim_v").get<std::size_t>();
  r.n_copies = j.at("n_copies").get<std::size_t>();
  r.gamma_space_dim = j.at("gamma_space_dim").get<std::size_t>();
  r.graded_dims = dims_from_json(j.at("graded_dims"));
  r.h0_dim = j.at("h0_dim").get<std::size_t>();
  r.verdict = j.at("verdict").get<std::string>();
  r.positive_part = j.at("positive_part").get<bool>();
  if (!j.at("minimal_ideal_dims").is_null()) r.minimal_ideal_dims = dims_from_json(j.at("minimal_ideal_dims"));
  if (!j.at("simple").is_null()) r.simple = j.at("simple").get<bool>();
  r.jacobi_ok = j.at("jacobi_ok").get<bool>();
  r.so_ideal_ok = j.at("so_ideal_ok").get<bool>();
  r.decomposition_ok = j.at("decomposition_ok").get<bool>();
  if (!j.at("truncated_above").is_null()) r.truncated_above = j.at("truncated_above").get<int>();
  for (const auto& c : j.at("checks")) r.checks.emplace_back(c.at("name").get<std::string>(), c.at("ok").get<bool>());
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

json algebra_to_json(const GradedSuperalgebra& g) {
  json basis = json::array();
  for (const auto& b : g.basis()) basis.push_back({{"label", b.label}, {"degree", b.degree}, {"parity", b.parity}});
  json brackets = json::array();
  for (const auto& [a, b, val] : g.nonzero_brackets()) {
    json terms = json::array();
    for (const auto& [k, c] : val) terms.push_back({k, c.to_string()});
    brackets.push_back({{"a", a}, {"b", b}, {"value", terms}});
  }
  json j{{"basis", basis}, {"brackets", brackets}};
  j["truncated_above"] = g.truncated_above ? json(*g.truncated_above) : json(nullptr);
  return j;
}

std::string graded_dims_text(const std::map<int, std::size_t>& dims) {
  std::string s;
  for (auto [p, d] : dims) {
    if (!s.empty()) s += ';';
    s += std::to_string(p) + ":" + std::to_string(d);
  }
  return s;
}

std::string csv_header() {
  return "dim_v,n_copies,gamma_space_dim,graded_dims,h0_dim,verdict,positive_part,minimal_ideal_dims,simple,"
         "jacobi_ok,checks,runtime_ms";
}

std::string report_to_csv_row(const StructureReport& r, std::optional<double> runtime_ms) {
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  std::string checks;
  for (const auto& [name, ok] : r.checks) {
    if (!checks.empty()) checks += ';';
    checks += name + "=" + (ok ? "1" : "0");
  }
  std::ostringstream os;
  os << r.dim_v << ',' << r.n_copies << ',' << r.gamma_space_dim << ',' << graded_dims_text(r.graded_dims) << ','
     << r.h0_dim << ",\"" << r.verdict << "\"," << flag(r.positive_part) << ','
     << (r.minimal_ideal_dims ? graded_dims_text(*r.minimal_ideal_dims) : "") << ',' << (r.simple ? flag(*r.simple) : "")
     << ',' << flag(r.jacobi_ok) << ',' << checks << ',' << runtime_text(runtime_ms);
  return os.str();
}

std::string cache_key(const RunConfig& cfg) {
  json j{{"dim_v", cfg.dim_v},
         {"copies", cfg.copies},
         {"coeffs", cfg.coeffs ? json(*cfg.coeffs) : json(nullptr)},
         {"seed", cfg.seed},
         {"max_degree", cfg.max_degree},
         {"emit_sc", cfg.emit_structure_constants}};
  // FNV-1a over the canonical dump
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::optional<json> RunCache::load(const std::string& key) const {
  std::ifstream in(dir_ / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    return json::parse(in);
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
}

void RunCache::store(const std::string& key, const json& value) const {
  std::filesystem::create_directories(dir_);
  auto tmp = dir_ / (key + ".json.tmp");
  {
    std::ofstream out(tmp);
    out << value.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, dir_ / (key + ".json"));
}

}  // namespace superprolong
