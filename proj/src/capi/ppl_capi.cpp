#include "ppl/ppl.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "config.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "gp.hpp"
#include "pipeline.hpp"
#include "predict.hpp"
#include "serialize.hpp"
#include "service.hpp"
#include "tuning.hpp"

struct ppl_config {
  ppl::AnalysisConfig value;
};

struct ppl_pipeline {
  std::unique_ptr<ppl::Pipeline> value;
};

struct ppl_service {
  std::unique_ptr<ppl::service::Service> value;
};

struct ppl_triangulation {
  std::shared_ptr<const ppl::Triangulation> value;
};

namespace {

thread_local std::string last_error;

ppl_status status_of(ppl::ErrorKind kind) {
  switch (kind) {
    case ppl::ErrorKind::Config: return PPL_ERR_CONFIG;
    case ppl::ErrorKind::Data: return PPL_ERR_DATA;
    case ppl::ErrorKind::Numerical: return PPL_ERR_NUMERICAL;
    case ppl::ErrorKind::Io: return PPL_ERR_IO;
    case ppl::ErrorKind::Internal: return PPL_ERR_INTERNAL;
  }
  return PPL_ERR_INTERNAL;
}

ppl_status fail(ppl_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
ppl_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return PPL_OK;
  } catch (const ppl::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(PPL_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PPL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PPL_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define PPL_REQUIRE(cond)                                                        \
  do {                                                                           \
    if (!(cond)) return fail(PPL_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

ppl::Json sample_json(const ppl::StormPeakSample& s) {
  ppl::Json x = ppl::Json::array(), y = ppl::Json::array();
  for (const auto& o : s.observations) {
    x.push_back(s.dim == 1 ? ppl::Json(o.x[0]) : ppl::Json::array({o.x[0], o.x[1]}));
    y.push_back(o.y);
  }
  return {{"dimension", s.dim}, {"labels", s.labels}, {"x", x}, {"y", y}};
}

}  // namespace

extern "C" {

const char* ppl_version(void) { return ppl::library_version(); }

const char* ppl_last_error(void) { return last_error.c_str(); }

void ppl_string_free(char* s) { std::free(s); }

ppl_status ppl_config_load(const char* path, ppl_config** out) {
  PPL_REQUIRE(path && out);
  return guarded([&] { *out = new ppl_config{ppl::load_config(path)}; });
}

ppl_status ppl_config_parse(const char* json, const char* base_dir, ppl_config** out) {
  PPL_REQUIRE(json && out);
  return guarded([&] {
    ppl::Json j;
    try {
      j = ppl::Json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw ppl::ConfigError(std::string("malformed config JSON: ") + e.what());
    }
    *out = new ppl_config{ppl::config_from_json(j, base_dir ? base_dir : "")};
  });
}

ppl_status ppl_config_to_json(const ppl_config* config, char** out) {
  PPL_REQUIRE(config && out);
  return guarded([&] { *out = copy_string(ppl::to_json(config->value).dump(2)); });
}

ppl_status ppl_config_set_seed(ppl_config* config, uint64_t seed) {
  PPL_REQUIRE(config);
  return guarded([&] { config->value.override_seed(seed); });
}

ppl_status ppl_config_set_threads(ppl_config* config, unsigned threads) {
  PPL_REQUIRE(config);
  return guarded([&] { config->value.threads = threads; });
}

ppl_status ppl_config_set_output(ppl_config* config, const char* dir) {
  PPL_REQUIRE(config && dir);
  return guarded([&] { config->value.output = dir; });
}

ppl_status ppl_config_output_dir(const ppl_config* config, char** out) {
  PPL_REQUIRE(config && out);
  return guarded([&] { *out = copy_string(config->value.resolve(config->value.output).string()); });
}

void ppl_config_free(ppl_config* config) { delete config; }

ppl_status ppl_pipeline_create(const ppl_config* config, const char* out_dir, int resume, ppl_pipeline** out) {
  PPL_REQUIRE(config && out);
  return guarded([&] {
    *out = new ppl_pipeline{
        std::make_unique<ppl::Pipeline>(config->value, out_dir ? out_dir : std::filesystem::path{}, resume != 0)};
  });
}

ppl_status ppl_pipeline_run(ppl_pipeline* pipeline, const char* stage, unsigned predict_parts) {
  PPL_REQUIRE(pipeline);
  PPL_REQUIRE(predict_parts <= PPL_PREDICT_ALL);
  return guarded([&] {
    if (!stage) {
      pipeline->value->run();
    } else {
      pipeline->value->run_through(ppl::parse_stage(stage), predict_parts ? predict_parts : PPL_PREDICT_ALL);
    }
  });
}

ppl_status ppl_pipeline_records(const ppl_pipeline* pipeline, char** json_out) {
  PPL_REQUIRE(pipeline && json_out);
  return guarded([&] {
    ppl::Json a = ppl::Json::array();
    for (const auto& r : pipeline->value->records()) {
      ppl::Json e = {{"name", r.name}, {"hash", r.hash}, {"status", r.status}, {"seconds", r.seconds},
                     {"files", r.files}};
      if (!r.parts.empty()) e["parts"] = r.parts;
      if (!r.error.empty()) e["error"] = r.error;
      a.push_back(std::move(e));
    }
    *json_out = copy_string(a.dump());
  });
}

ppl_status ppl_pipeline_result(const ppl_pipeline* pipeline, const char* name, char** json_out) {
  PPL_REQUIRE(pipeline && name && json_out);
  return guarded([&] {
    const ppl::Pipeline& p = *pipeline->value;
    const ppl::RunState& st = p.state();
    const std::string n = name;
    auto need = [&](ppl::Stage s) {
      if (!p.done(s)) throw ppl::ConfigError("stage '" + ppl::stage_name(s) + "' has not run");
    };
    ppl::Json j;
    if (n == "sample") {
      need(ppl::Stage::Extract);
      j = sample_json(st.sample);
    } else if (n == "density") {
      need(ppl::Stage::Density);
      j = ppl::to_json(st.density);
    } else if (n == "threshold") {
      need(ppl::Stage::Threshold);
      j = ppl::to_json(st.threshold);
    } else if (n == "local_estimates") {
      need(ppl::Stage::LocalInit);
      j = ppl::to_json(st.local);
    } else if (n == "triangulation") {
      need(ppl::Stage::Triangulate);
      j = ppl::to_json(*st.tri);
    } else if (n == "cv") {
      need(ppl::Stage::CV);
      if (!st.cv) throw ppl::ConfigError("penalty was fixed; no cross-validation result");
      j = ppl::to_json(*st.cv);
    } else if (n == "lambda") {
      need(ppl::Stage::CV);
      j = ppl::to_json(st.lambda);
    } else if (n == "fit") {
      need(ppl::Stage::Fit);
      j = ppl::to_json(st.fit, *st.tri);
    } else if (n == "bootstrap") {
      need(ppl::Stage::Bootstrap);
      j = ppl::to_json(st.ensemble);
    } else if (n == "tail_curves") {
      need(ppl::Stage::Predict);
      j = ppl::to_json(st.tail_curves);
    } else {
      throw ppl::ConfigError("unknown result '" + n + "'");
    }
    *json_out = copy_string(j.dump());
  });
}

void ppl_pipeline_free(ppl_pipeline* pipeline) { delete pipeline; }

ppl_status ppl_service_create(const ppl_config* config, ppl_service** out) {
  PPL_REQUIRE(config && out);
  return guarded([&] { *out = new ppl_service{std::make_unique<ppl::service::Service>(config->value)}; });
}

ppl_status ppl_service_handle(ppl_service* service, const char* method, const char* path, const char* body,
                              int* http_status, char** body_out) {
  PPL_REQUIRE(service && method && path && http_status && body_out);
  return guarded([&] {
    auto r = service->value->handle(method, path, body ? body : "");
    *http_status = r.status;
    *body_out = copy_string(r.body);
  });
}

void ppl_service_free(ppl_service* service) { delete service; }

ppl_status ppl_triangulation_irregular(int dim, const double* coords, size_t count, ppl_triangulation** out) {
  PPL_REQUIRE((dim == 1 || dim == 2) && coords && out);
  return guarded([&] {
    ppl::NodeSet ns;
    ns.dim = dim;
    for (size_t i = 0; i < count; ++i) {
      ns.nodes.push_back(ppl::Point{coords[i * dim], dim == 2 ? coords[i * dim + 1] : 0.0});
    }
    *out = new ppl_triangulation{std::make_shared<const ppl::Triangulation>(ppl::build_irregular_grid(ns))};
  });
}

ppl_status ppl_triangulation_regular(const double* marginal1, size_t k1, const double* marginal2, size_t k2,
                                     ppl_triangulation** out) {
  PPL_REQUIRE(marginal1 && marginal2 && out);
  return guarded([&] {
    std::vector<std::vector<double>> m{{marginal1, marginal1 + k1}, {marginal2, marginal2 + k2}};
    *out = new ppl_triangulation{std::make_shared<const ppl::Triangulation>(ppl::build_regular_grid(m))};
  });
}

ppl_status ppl_triangulation_counts(const ppl_triangulation* tri, size_t* nodes, size_t* bins) {
  PPL_REQUIRE(tri && nodes && bins);
  *nodes = tri->value->node_count();
  *bins = tri->value->bin_count();
  return PPL_OK;
}

ppl_status ppl_triangulation_interpolate(const ppl_triangulation* tri, const double* node_values, const double* x,
                                         double* out) {
  PPL_REQUIRE(tri && node_values && x && out);
  return guarded([&] {
    ppl::ParameterField f{tri->value, {node_values, node_values + tri->value->node_count()}};
    ppl::Point p{x[0], tri->value->dim() == 2 ? x[1] : 0.0};
    *out = ppl::interpolate(f, p);
  });
}

ppl_status ppl_triangulation_to_json(const ppl_triangulation* tri, char** out) {
  PPL_REQUIRE(tri && out);
  return guarded([&] { *out = copy_string(ppl::to_json(*tri->value).dump()); });
}

void ppl_triangulation_free(ppl_triangulation* tri) { delete tri; }

ppl_status ppl_gp_survival(double y, double u, double sigma, double xi, double* out) {
  PPL_REQUIRE(out);
  return guarded([&] { *out = ppl::gp_survival(y, u, sigma, xi); });
}

ppl_status ppl_conditional_quantile(double u, double sigma, double xi, double zeta, double p, double* out) {
  PPL_REQUIRE(out);
  return guarded([&] { *out = ppl::conditional_quantile(u, sigma, xi, zeta, p); });
}

ppl_status ppl_jackknife_uncertainty(const double* values, size_t n, double* out) {
  PPL_REQUIRE(values && out);
  return guarded([&] { *out = ppl::jackknife_uncertainty({values, values + n}); });
}

}  // extern "C"
