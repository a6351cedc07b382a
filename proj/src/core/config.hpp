#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fields.hpp"
#include "geometry.hpp"
#include "gp.hpp"
#include "sample.hpp"
#include "serialize.hpp"
#include "tuning.hpp"

namespace ppl {

// Every tunable of an analysis run. Serialised as JSON; relative paths are
// resolved against `base_dir` (the directory of the config file).
struct AnalysisConfig {
  std::filesystem::path base_dir;

  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string output = "ppl_out";

  struct PeakPicking {
    double zeta = 0.5;
    std::size_t C = 200;
    std::vector<double> w{15.0};
    std::vector<int> resolution;
  };
  struct Data {
    std::string path;
    std::string kind = "peaks";  // peaks | series
    std::vector<CovariateColumn> covariates;
    std::string response = "hs";
    SeriesSchema series;
    PeakPicking picking;
  } data;

  struct Density {
    std::vector<double> w{15.0};
    std::vector<int> resolution;
  } density;

  struct Threshold {
    double zeta = 0.3;
    std::size_t C = 100;
    std::vector<double> w{15.0};
    std::vector<int> resolution;
    std::optional<double> constant;  // known threshold, bypasses estimation
  } threshold;

  struct LocalEstimates {
    std::size_t C = 100;
    std::vector<double> w{15.0};
    std::vector<int> resolution;
  } local;

  struct Nodes {
    std::string kind = "irregular";  // irregular | regular | file
    std::vector<std::vector<double>> coordinates;
    std::vector<std::vector<double>> marginals;
    std::string file;
  } nodes;

  struct Model {
    PenaltyCase kase = PenaltyCase::A;
    double xi_lower = -0.5;
    double xi_upper = -1e-6;
    bool volume_weighted = false;
    int max_evaluations = 10000;
    double tolerance = 1e-6;
  } model;

  struct CrossValidation {
    int G = 5;
    int R = 5;
    int S = 10;
    double exponent_lower = -1.0;
    double exponent_upper = 5.0;
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<double>> lambda;  // fixed penalty components; skips the search
  } cv;

  struct Bootstrap {
    int B = 100;
    std::optional<std::uint64_t> seed;
  } bootstrap;

  struct Predict {
    std::vector<double> probabilities{0.7, 0.9, 0.99, 0.999};
    double simulation_multiplier = 1000.0;
    int band_members = 20;  // bootstrap members simulated for tail-plot bands
    double band_multiplier = 100.0;
    std::vector<std::string> strata{"all"};
    std::vector<int> resolution;
    std::optional<std::uint64_t> seed;
  } predict;

  int dim() const { return static_cast<int>(data.covariates.size()); }
  std::vector<std::string> labels() const;

  Point bandwidth(const std::vector<double>& w) const;
  Resolution resolution(const std::vector<int>& r) const;

  std::filesystem::path resolve(const std::string& path) const;

  std::uint64_t cv_seed() const { return cv.seed.value_or(seed); }
  std::uint64_t bootstrap_seed() const { return bootstrap.seed.value_or(seed + 1000003); }
  std::uint64_t predict_seed() const { return predict.seed.value_or(seed + 2000003); }

  // Applies --seed: the master seed replaces every per-section seed.
  void override_seed(std::uint64_t s);

  CVConfig cv_config() const;
  FitOptions fit_options() const;
  SampleSchema sample_schema() const;
  std::vector<std::string> covariate_roles() const;

  // Nodes given inline or by file, normalised.
  NodeSet node_set() const;

  void validate() const;
};

AnalysisConfig config_from_json(const Json& j, const std::filesystem::path& base_dir = {});
Json to_json(const AnalysisConfig& c);
AnalysisConfig load_config(const std::filesystem::path& path);

}  // namespace ppl
