#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"

namespace ppl {

namespace {

// Reads fields of one JSON object, rejecting keys it was never asked about.
class Section {
public:
  Section(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be an object");
  }

  bool has(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  template <typename T>
  void read(const char* key, T& out) {
    if (!has(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(where(key) + " has the wrong type");
    }
  }

  template <typename T>
  void read(const char* key, std::optional<T>& out) {
    if (!has(key) || j_.at(key).is_null()) return;
    T v{};
    read(key, v);
    out = v;
  }

  Section sub(const char* key) {
    seen_.insert(key);
    static const Json empty = Json::object();
    return Section(j_.contains(key) ? j_.at(key) : empty, path_.empty() ? key : path_ + "." + key);
  }

  const Json& raw(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError("unknown config key '" + where(k.c_str()) + "'");
    }
  }

  std::string where(const char* key = nullptr) const {
    std::string base = path_.empty() ? "config" : path_;
    return key ? (path_.empty() ? std::string(key) : path_ + "." + key) : base;
  }

private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

void check_range(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

std::vector<std::string> AnalysisConfig::labels() const {
  std::vector<std::string> out;
  for (const auto& c : data.covariates) out.push_back(c.label);
  return out;
}

Point AnalysisConfig::bandwidth(const std::vector<double>& w) const {
  const int d = dim();
  if (w.size() != 1 && static_cast<int>(w.size()) != d) {
    throw ConfigError("bandwidth needs 1 or " + std::to_string(d) + " values");
  }
  Point p{};
  for (int k = 0; k < d; ++k) p[k] = w.size() == 1 ? w[0] : w[k];
  for (int k = 0; k < d; ++k) check_range(p[k] > 0.0, "bandwidths must be positive");
  return p;
}

Resolution AnalysisConfig::resolution(const std::vector<int>& r) const {
  const int d = dim();
  if (r.empty()) return d == 1 ? Resolution{360, 1} : Resolution{72, 72};
  if (r.size() != 1 && static_cast<int>(r.size()) != d) {
    throw ConfigError("resolution needs 1 or " + std::to_string(d) + " values");
  }
  Resolution out{r[0], d == 2 ? (r.size() == 1 ? r[0] : r[1]) : 1};
  for (int k = 0; k < d; ++k) check_range(out[k] >= 8, "grid resolution must be at least 8");
  return out;
}

std::filesystem::path AnalysisConfig::resolve(const std::string& path) const {
  std::filesystem::path p(path);
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

void AnalysisConfig::override_seed(std::uint64_t s) {
  seed = s;
  cv.seed.reset();
  bootstrap.seed.reset();
  predict.seed.reset();
}

CVConfig AnalysisConfig::cv_config() const {
  CVConfig c;
  c.G = cv.G;
  c.R = cv.R;
  c.S = cv.S;
  c.exponent_lower = cv.exponent_lower;
  c.exponent_upper = cv.exponent_upper;
  c.kase = model.kase;
  c.seed = cv_seed();
  return c;
}

FitOptions AnalysisConfig::fit_options() const {
  FitOptions o;
  o.xi_lower = model.xi_lower;
  o.xi_upper = model.xi_upper;
  o.volume_weighted = model.volume_weighted;
  o.max_evaluations = model.max_evaluations;
  o.tolerance = model.tolerance;
  return o;
}

SampleSchema AnalysisConfig::sample_schema() const { return SampleSchema{data.covariates, data.response}; }

std::vector<std::string> AnalysisConfig::covariate_roles() const { return labels(); }

NodeSet AnalysisConfig::node_set() const {
  NodeSet ns;
  if (nodes.kind == "file") {
    auto path = resolve(nodes.file);
    std::ifstream in(path);
    if (!in) throw IoError("cannot open node file " + path.string());
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("node file " + path.string() + ": " + e.what());
    }
    ns = nodes_from_json(j, dim());
  } else if (nodes.kind == "irregular") {
    ns.dim = dim();
    for (const auto& c : nodes.coordinates) {
      if (static_cast<int>(c.size()) != dim()) throw ConfigError("node coordinates must have D components");
      ns.nodes.push_back(Point{c[0], dim() == 2 ? c[1] : 0.0});
    }
  } else {
    throw ConfigError("regular grids are given by marginals, not a node set");
  }
  if (ns.dim != dim()) throw ConfigError("node dimension differs from the covariate dimension");
  ns.normalise();
  return ns;
}

void AnalysisConfig::validate() const {
  check_range(!data.path.empty(), "data.path is required");
  check_range(data.kind == "peaks" || data.kind == "series", "data.kind must be 'peaks' or 'series'");
  check_range(dim() == 1 || dim() == 2, "data.covariates must list 1 or 2 covariates");
  if (data.kind == "series") {
    for (const auto& c : data.covariates) {
      check_range(c.label == "direction" || c.label == "season",
                  "series covariates must be 'direction' or 'season'");
    }
    check_range(data.picking.zeta > 0.0 && data.picking.zeta < 1.0, "data.peak_picking.zeta must lie in (0,1)");
    check_range(data.picking.C >= 1, "data.peak_picking.C must be at least 1");
    bandwidth(data.picking.w);
    resolution(data.picking.resolution);
    check_range(data.series.season_year_length > 0.0, "season_year_length must be positive");
  }
  for (std::size_t i = 0; i < data.covariates.size(); ++i) {
    for (std::size_t k = i + 1; k < data.covariates.size(); ++k) {
      check_range(data.covariates[i].label != data.covariates[k].label, "covariate labels must be distinct");
    }
  }
  bandwidth(density.w);
  resolution(density.resolution);
  check_range(threshold.zeta > 0.0 && threshold.zeta < 1.0, "threshold.zeta must lie in (0,1)");
  check_range(threshold.C >= 1, "threshold.C must be at least 1");
  bandwidth(threshold.w);
  resolution(threshold.resolution);
  check_range(local.C >= 2, "local_estimates.C must be at least 2");
  bandwidth(local.w);
  resolution(local.resolution);

  if (nodes.kind == "regular") {
    check_range(dim() == 2, "regular node grids need two covariates");
    check_range(nodes.marginals.size() == 2, "nodes.marginals needs one list per covariate");
  } else if (nodes.kind == "irregular") {
    check_range(!nodes.coordinates.empty(), "nodes.coordinates is required for irregular nodes");
  } else if (nodes.kind == "file") {
    check_range(!nodes.file.empty(), "nodes.path is required for file nodes");
  } else {
    throw ConfigError("nodes.kind must be 'irregular', 'regular' or 'file'");
  }
  if (nodes.kind == "irregular") node_set();

  fit_options().validate();
  cv_config().validate();
  if (cv.lambda) {
    PenaltyVector::from_components(model.kase, dim(), *cv.lambda);
  }
  check_range(bootstrap.B >= 1, "bootstrap.B must be at least 1");
  check_range(!predict.probabilities.empty(), "predict.probabilities must not be empty");
  for (double p : predict.probabilities) {
    check_range(p > 0.0 && p < 1.0, "predict.probabilities must lie in (0,1)");
    if (!threshold.constant) {
      check_range(p >= 1.0 - threshold.zeta, "predict.probabilities must be at least 1 - threshold.zeta");
    }
  }
  check_range(predict.simulation_multiplier > 0.0, "predict.simulation_multiplier must be positive");
  check_range(predict.band_members >= 0, "predict.band_members must be non-negative");
  check_range(predict.band_multiplier > 0.0, "predict.band_multiplier must be positive");
  resolution(predict.resolution);
  for (const auto& s : predict.strata) {
    auto kind = parse_stratum(s);
    std::string need = kind == StratumKind::Months ? "season" : kind == StratumKind::Octants ? "direction" : "";
    if (need.empty()) continue;
    bool present = false;
    for (const auto& c : data.covariates) present = present || c.label == need;
    check_range(present, "stratum '" + s + "' needs a covariate labelled '" + need + "'");
  }
}

AnalysisConfig config_from_json(const Json& j, const std::filesystem::path& base_dir) {
  AnalysisConfig c;
  c.base_dir = base_dir;
  Section root(j, "");
  root.read("seed", c.seed);
  root.read("threads", c.threads);
  root.read("output", c.output);

  {
    Section s = root.sub("data");
    s.read("path", c.data.path);
    s.read("kind", c.data.kind);
    s.read("response", c.data.response);
    if (s.has("covariates")) {
      const Json& cov = s.raw("covariates");
      if (!cov.is_array()) throw ConfigError("data.covariates must be an array");
      for (const auto& e : cov) {
        if (e.is_string()) {
          c.data.covariates.push_back({e.get<std::string>(), e.get<std::string>()});
        } else {
          Section ce(e, "data.covariates[]");
          CovariateColumn col;
          ce.read("column", col.column);
          col.label = col.column;
          ce.read("label", col.label);
          ce.finish();
          if (col.column.empty()) throw ConfigError("data.covariates[].column is required");
          c.data.covariates.push_back(col);
        }
      }
    }
    {
      Section cols = s.sub("series");
      cols.read("timestamp", c.data.series.timestamp);
      cols.read("hs", c.data.series.hs);
      cols.read("direction", c.data.series.direction);
      cols.read("season", c.data.series.season);
      cols.read("season_year_length", c.data.series.season_year_length);
      cols.finish();
    }
    {
      Section pp = s.sub("peak_picking");
      pp.read("zeta", c.data.picking.zeta);
      pp.read("C", c.data.picking.C);
      pp.read("w", c.data.picking.w);
      pp.read("resolution", c.data.picking.resolution);
      pp.finish();
    }
    s.finish();
  }
  {
    Section s = root.sub("density");
    s.read("w", c.density.w);
    s.read("resolution", c.density.resolution);
    s.finish();
  }
  {
    Section s = root.sub("threshold");
    s.read("zeta", c.threshold.zeta);
    s.read("C", c.threshold.C);
    s.read("w", c.threshold.w);
    s.read("resolution", c.threshold.resolution);
    s.read("constant", c.threshold.constant);
    s.finish();
  }
  {
    Section s = root.sub("local_estimates");
    s.read("C", c.local.C);
    s.read("w", c.local.w);
    s.read("resolution", c.local.resolution);
    s.finish();
  }
  {
    Section s = root.sub("nodes");
    s.read("kind", c.nodes.kind);
    if (s.has("coordinates")) {
      const Json& arr = s.raw("coordinates");
      if (!arr.is_array()) throw ConfigError("nodes.coordinates must be an array");
      for (const auto& e : arr) {
        if (e.is_number()) {
          c.nodes.coordinates.push_back({e.get<double>()});
        } else if (e.is_array()) {
          try {
            c.nodes.coordinates.push_back(e.get<std::vector<double>>());
          } catch (const nlohmann::json::exception&) {
            throw ConfigError("nodes.coordinates entries must be numbers");
          }
        } else {
          throw ConfigError("nodes.coordinates entries must be numbers or arrays");
        }
      }
    }
    s.read("marginals", c.nodes.marginals);
    s.read("path", c.nodes.file);
    s.finish();
  }
  {
    Section s = root.sub("model");
    std::string kase = case_name(c.model.kase);
    s.read("case", kase);
    c.model.kase = parse_case(kase);
    s.read("xi_lower", c.model.xi_lower);
    s.read("xi_upper", c.model.xi_upper);
    s.read("volume_weighted", c.model.volume_weighted);
    s.read("max_evaluations", c.model.max_evaluations);
    s.read("tolerance", c.model.tolerance);
    s.finish();
  }
  {
    Section s = root.sub("cv");
    s.read("G", c.cv.G);
    s.read("R", c.cv.R);
    s.read("S", c.cv.S);
    std::vector<double> range{c.cv.exponent_lower, c.cv.exponent_upper};
    s.read("exponents", range);
    if (range.size() != 2) throw ConfigError("cv.exponents needs [lower, upper]");
    c.cv.exponent_lower = range[0];
    c.cv.exponent_upper = range[1];
    s.read("seed", c.cv.seed);
    s.read("lambda", c.cv.lambda);
    s.finish();
  }
  {
    Section s = root.sub("bootstrap");
    s.read("B", c.bootstrap.B);
    s.read("seed", c.bootstrap.seed);
    s.finish();
  }
  {
    Section s = root.sub("predict");
    s.read("probabilities", c.predict.probabilities);
    s.read("simulation_multiplier", c.predict.simulation_multiplier);
    s.read("band_members", c.predict.band_members);
    s.read("band_multiplier", c.predict.band_multiplier);
    s.read("strata", c.predict.strata);
    s.read("resolution", c.predict.resolution);
    s.read("seed", c.predict.seed);
    s.finish();
  }
  root.finish();
  c.validate();
  return c;
}

Json to_json(const AnalysisConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["output"] = c.output;

  Json cov = Json::array();
  for (const auto& col : c.data.covariates) cov.push_back({{"column", col.column}, {"label", col.label}});
  j["data"] = {
      {"path", c.data.path},
      {"kind", c.data.kind},
      {"response", c.data.response},
      {"covariates", cov},
      {"series",
       {{"timestamp", c.data.series.timestamp},
        {"hs", c.data.series.hs},
        {"direction", c.data.series.direction},
        {"season", c.data.series.season},
        {"season_year_length", c.data.series.season_year_length}}},
      {"peak_picking",
       {{"zeta", c.data.picking.zeta},
        {"C", c.data.picking.C},
        {"w", c.data.picking.w},
        {"resolution", c.data.picking.resolution}}},
  };
  j["density"] = {{"w", c.density.w}, {"resolution", c.density.resolution}};
  j["threshold"] = {{"zeta", c.threshold.zeta},
                    {"C", c.threshold.C},
                    {"w", c.threshold.w},
                    {"resolution", c.threshold.resolution},
                    {"constant", optional_json(c.threshold.constant)}};
  j["local_estimates"] = {{"C", c.local.C}, {"w", c.local.w}, {"resolution", c.local.resolution}};
  j["nodes"] = {{"kind", c.nodes.kind},
                {"coordinates", c.nodes.coordinates},
                {"marginals", c.nodes.marginals},
                {"path", c.nodes.file}};
  j["model"] = {{"case", case_name(c.model.kase)},
                {"xi_lower", c.model.xi_lower},
                {"xi_upper", c.model.xi_upper},
                {"volume_weighted", c.model.volume_weighted},
                {"max_evaluations", c.model.max_evaluations},
                {"tolerance", c.model.tolerance}};
  j["cv"] = {{"G", c.cv.G},
             {"R", c.cv.R},
             {"S", c.cv.S},
             {"exponents", {c.cv.exponent_lower, c.cv.exponent_upper}},
             {"seed", optional_json(c.cv.seed)},
             {"lambda", optional_json(c.cv.lambda)}};
  j["bootstrap"] = {{"B", c.bootstrap.B}, {"seed", optional_json(c.bootstrap.seed)}};
  j["predict"] = {{"probabilities", c.predict.probabilities},
                  {"simulation_multiplier", c.predict.simulation_multiplier},
                  {"band_members", c.predict.band_members},
                  {"band_multiplier", c.predict.band_multiplier},
                  {"strata", c.predict.strata},
                  {"resolution", c.predict.resolution},
                  {"seed", optional_json(c.predict.seed)}};
  return j;
}

AnalysisConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  Json j;
  try {
    j = Json::parse(in, nullptr, true, true);  // comments allowed
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

}  // namespace ppl
