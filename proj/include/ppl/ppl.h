#ifndef PPL_PPL_H
#define PPL_PPL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PPL_API __declspec(dllexport)
#else
#define PPL_API __attribute__((visibility("default")))
#endif

/* Status codes. CONFIG, DATA and NUMERICAL match the CLI exit codes. */
typedef enum ppl_status {
  PPL_OK = 0,
  PPL_ERR_INVALID_ARGUMENT = 1,
  PPL_ERR_CONFIG = 2,
  PPL_ERR_DATA = 3,
  PPL_ERR_NUMERICAL = 4,
  PPL_ERR_IO = 5,
  PPL_ERR_INTERNAL = 6
} ppl_status;

/* Predict-stage output groups for ppl_pipeline_run. */
#define PPL_PREDICT_QUANTILES 1u
#define PPL_PREDICT_SIMULATE 2u
#define PPL_PREDICT_TAILPLOT 4u
#define PPL_PREDICT_ALL 7u

typedef struct ppl_config ppl_config;
typedef struct ppl_pipeline ppl_pipeline;
typedef struct ppl_service ppl_service;
typedef struct ppl_triangulation ppl_triangulation;

PPL_API const char* ppl_version(void);

/* Message of the most recent failure on the calling thread; never NULL. */
PPL_API const char* ppl_last_error(void);

/* Frees strings returned through char** out-parameters. */
PPL_API void ppl_string_free(char* s);

/* Configuration. Relative paths resolve against `base_dir` (may be NULL). */
PPL_API ppl_status ppl_config_load(const char* path, ppl_config** out);
PPL_API ppl_status ppl_config_parse(const char* json, const char* base_dir, ppl_config** out);
PPL_API ppl_status ppl_config_to_json(const ppl_config* config, char** out);
PPL_API ppl_status ppl_config_set_seed(ppl_config* config, uint64_t seed);
PPL_API ppl_status ppl_config_set_threads(ppl_config* config, unsigned threads);
PPL_API ppl_status ppl_config_set_output(ppl_config* config, const char* dir);
/* Output directory with relative paths resolved. */
PPL_API ppl_status ppl_config_output_dir(const ppl_config* config, char** out);
PPL_API void ppl_config_free(ppl_config* config);

/* Pipeline. `out_dir` NULL keeps every artifact in memory. Stage names:
   extract, density, threshold, local_init, triangulate, cv, fit, bootstrap,
   predict. A NULL stage runs all nine. */
PPL_API ppl_status ppl_pipeline_create(const ppl_config* config, const char* out_dir, int resume,
                                       ppl_pipeline** out);
PPL_API ppl_status ppl_pipeline_run(ppl_pipeline* pipeline, const char* stage, unsigned predict_parts);
/* Per-stage records: name, hash, status, seconds, files. */
PPL_API ppl_status ppl_pipeline_records(const ppl_pipeline* pipeline, char** json_out);
/* In-memory result as JSON. Names: sample, density, threshold,
   local_estimates, triangulation, cv, lambda, fit, bootstrap, tail_curves. */
PPL_API ppl_status ppl_pipeline_result(const ppl_pipeline* pipeline, const char* name, char** json_out);
PPL_API void ppl_pipeline_free(ppl_pipeline* pipeline);

/* HTTP-agnostic /api/v1 handler. */
PPL_API ppl_status ppl_service_create(const ppl_config* config, ppl_service** out);
PPL_API ppl_status ppl_service_handle(ppl_service* service, const char* method, const char* path, const char* body,
                                      int* http_status, char** body_out);
PPL_API void ppl_service_free(ppl_service* service);

/* Triangulations. `coords` holds `count` nodes of `dim` values each. */
PPL_API ppl_status ppl_triangulation_irregular(int dim, const double* coords, size_t count, ppl_triangulation** out);
PPL_API ppl_status ppl_triangulation_regular(const double* marginal1, size_t k1, const double* marginal2, size_t k2,
                                             ppl_triangulation** out);
PPL_API ppl_status ppl_triangulation_counts(const ppl_triangulation* tri, size_t* nodes, size_t* bins);
/* Piecewise-linear interpolation of node values at point x (dim values). */
PPL_API ppl_status ppl_triangulation_interpolate(const ppl_triangulation* tri, const double* node_values,
                                                 const double* x, double* out);
PPL_API ppl_status ppl_triangulation_to_json(const ppl_triangulation* tri, char** out);
PPL_API void ppl_triangulation_free(ppl_triangulation* tri);

/* Scalar helpers. */
PPL_API ppl_status ppl_gp_survival(double y, double u, double sigma, double xi, double* out);
PPL_API ppl_status ppl_conditional_quantile(double u, double sigma, double xi, double zeta, double p, double* out);
PPL_API ppl_status ppl_jackknife_uncertainty(const double* values, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif
