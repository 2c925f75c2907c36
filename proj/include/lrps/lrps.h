#ifndef LRPS_LRPS_H
#define LRPS_LRPS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LRPS_BUILDING_LIBRARY)
#    define LRPS_API __declspec(dllexport)
#  else
#    define LRPS_API __declspec(dllimport)
#  endif
#else
#  define LRPS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum lrps_status {
  LRPS_OK = 0,
  LRPS_INVALID = 2,      /* schema, dimension, gamma range, parse, unknown id */
  LRPS_INAPPLICABLE = 3, /* limit condition diverges */
  LRPS_NUMERIC = 4,      /* pole, domain, no convergence, zero exact value */
  LRPS_IO = 5,
  LRPS_INTERNAL = 6
} lrps_status;

typedef enum lrps_outcome {
  LRPS_OUTCOME_COMPLETED = 0,
  LRPS_OUTCOME_EARLY_TERMINATED = 1,
  LRPS_OUTCOME_INAPPLICABLE = 2
} lrps_outcome;

typedef enum lrps_format { LRPS_FORMAT_CSV = 0, LRPS_FORMAT_JSON = 1, LRPS_FORMAT_PRETTY = 2 } lrps_format;

#define LRPS_COLUMN_VALUE 1u
#define LRPS_COLUMN_EXACT 2u
#define LRPS_COLUMN_ABS_ERROR 4u
#define LRPS_COLUMN_REL_ERROR 8u

typedef struct lrps_problem lrps_problem;
typedef struct lrps_solution lrps_solution;

typedef struct lrps_table_spec {
  const double* points; /* point_count * point_dim values, row major */
  size_t point_count;
  size_t point_dim;     /* 1 broadcasts each value to every coordinate */
  const double* times;
  size_t time_count;
  const char* const* gammas; /* rational strings; NULL/0 uses the problem's */
  size_t gamma_count;
  uint32_t columns;          /* LRPS_COLUMN_* bits */
} lrps_table_spec;

LRPS_API const char* lrps_version(void);

/* Message of the last failed call on this thread, "" if none. */
LRPS_API const char* lrps_last_error(void);

/* Every char** output is heap allocated; release with lrps_string_free. */
LRPS_API void lrps_string_free(char* s);

LRPS_API lrps_status lrps_problem_from_example(const char* id, lrps_problem** out);
LRPS_API lrps_status lrps_problem_from_json(const char* json, lrps_problem** out);
LRPS_API lrps_status lrps_problem_from_file(const char* path, lrps_problem** out);
LRPS_API lrps_status lrps_problem_set_gamma(lrps_problem* problem, const char* gamma);
LRPS_API lrps_status lrps_problem_set_order(lrps_problem* problem, int order);
LRPS_API lrps_status lrps_problem_to_json(const lrps_problem* problem, char** out);
LRPS_API int lrps_problem_dimension(const lrps_problem* problem);
LRPS_API void lrps_problem_free(lrps_problem* problem);

/* Returns LRPS_INAPPLICABLE with *out still set so the witness can be read. */
LRPS_API lrps_status lrps_solve(const lrps_problem* problem, lrps_solution** out);
LRPS_API lrps_outcome lrps_solution_outcome(const lrps_solution* sol);
LRPS_API int lrps_solution_witness_k(const lrps_solution* sol);
LRPS_API size_t lrps_solution_count(const lrps_solution* sol);
LRPS_API lrps_status lrps_solution_coefficient(const lrps_solution* sol, size_t k, char** out);
LRPS_API lrps_status lrps_solution_evaluate(const lrps_solution* sol, const double* point, size_t dim, double tau,
                                            double* out);
/* *out is NULL when no pattern was detected. */
LRPS_API lrps_status lrps_solution_closed_form(const lrps_solution* sol, char** out);
/* JSON or pretty text summary: coefficients, steps, outcome, warnings. */
LRPS_API lrps_status lrps_solution_report(const lrps_solution* sol, lrps_format format, char** out);
LRPS_API void lrps_solution_free(lrps_solution* sol);

LRPS_API lrps_status lrps_parse_columns(const char* list, uint32_t* out);
LRPS_API lrps_status lrps_parse_format(const char* name, lrps_format* out);

LRPS_API lrps_status lrps_run_table(const lrps_problem* problem, const lrps_table_spec* spec, lrps_format format,
                                    char** out);
LRPS_API lrps_status lrps_run_order_sweep(const lrps_problem* problem, const lrps_table_spec* spec,
                                          const int* orders, size_t order_count, lrps_format format, char** out);
/* Fills *out even when some gamma is inapplicable (LRPS_INAPPLICABLE) or a
   residual is not zero (LRPS_NUMERIC). */
LRPS_API lrps_status lrps_run_residual_check(const lrps_problem* problem, const char* const* gammas,
                                             size_t gamma_count, lrps_format format, char** out);
LRPS_API lrps_status lrps_examples(lrps_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif
