/*
 * C interface to the master-scheduling library.
 *
 * Objects are opaque handles. Every call returns an mps_status; on failure a
 * message for the calling thread is available from mps_last_error(). Strings
 * returned through `char**` are owned by the caller and released with
 * mps_string_free().
 */
#ifndef MPS_MPS_H
#define MPS_MPS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MPS_API __declspec(dllexport)
#else
#define MPS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as the CLI exit codes. */
typedef enum mps_status {
  MPS_OK = 0,
  MPS_ERROR_INFEASIBLE = 1,
  MPS_ERROR_INVALID_INPUT = 2,
  MPS_ERROR_LIMIT = 3,
  MPS_ERROR_INTERNAL = 4
} mps_status;

typedef struct mps_instance_s* mps_instance;

typedef enum mps_model {
  MPS_MODEL_MILP = 0,
  MPS_MODEL_HEURISTIC = 1,
  MPS_MODEL_NLP_INTEGER = 2,
  MPS_MODEL_NLP_RELAXED = 3
} mps_model;

typedef enum mps_objective { MPS_OBJECTIVE_LINEAR = 0, MPS_OBJECTIVE_TRUE = 1 } mps_objective;

typedef struct mps_milp_config {
  double integrality_tol;
  uint64_t node_limit;
  double gap_tol;
  int depth_first;   /* 0: best-bound node order */
  int tag_inventory; /* also branch on inventory variables */
  int lp_trace;      /* pivot trace into the solve trace output */
} mps_milp_config;

#define MPS_MAX_LADDER 16

typedef struct mps_search_config {
  uint64_t starts;
  uint64_t seed;
  uint64_t budget;
  int integer_mode;
  size_t ladder_len;
  double ladder[MPS_MAX_LADDER];
  int include_milp_start;
  uint64_t threads;
  int trace; /* per-start trace into the solve trace output */
} mps_search_config;

MPS_API const char* mps_version(void);
MPS_API const char* mps_last_error(void);
MPS_API void mps_string_free(char* s);

MPS_API void mps_milp_config_default(mps_milp_config* cfg);
MPS_API void mps_search_config_default(mps_search_config* cfg);

MPS_API mps_status mps_instance_parse(const char* json, mps_instance* out);
MPS_API mps_status mps_instance_generate(uint64_t seed, size_t n_products, size_t n_materials,
                                         size_t n_periods, mps_instance* out);
MPS_API mps_status mps_instance_case_base(uint64_t material_seed, mps_instance* out);
MPS_API mps_status mps_instance_render(mps_instance inst, char** out_json);
MPS_API mps_status mps_instance_dims(mps_instance inst, size_t* n_products, size_t* n_materials,
                                     size_t* n_periods);
MPS_API void mps_instance_free(mps_instance inst);

/* Solves with one model and returns a JSON result document. `out_trace` may be
 * NULL; otherwise it receives the line-oriented trace (possibly empty). */
MPS_API mps_status mps_solve(mps_instance inst, mps_model model, const mps_milp_config* milp,
                             const mps_search_config* search, char** out_json, char** out_trace);

/* format: "table-text", "csv" or "structured". */
MPS_API mps_status mps_compare(mps_instance inst, const mps_milp_config* milp,
                               const mps_search_config* search, const char* format, char** out);

MPS_API mps_status mps_oracle(mps_instance inst, mps_objective objective, uint64_t max_schedules,
                              char** out_json);

/* Arithmetic report for schedule documents, without optimization. */
MPS_API mps_status mps_replay(mps_instance inst, const char* const* schedule_docs, size_t count,
                              const char* format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* MPS_MPS_H */
