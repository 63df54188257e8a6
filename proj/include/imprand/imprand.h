/* C interface to the imprand library.
 *
 * Objects are opaque handles released with their *_free function. Every
 * call returns an imprand_status; on failure imprand_last_error() describes
 * the problem for the calling thread. Strings returned through char** out
 * parameters are heap-allocated and released with imprand_string_free.
 * Rationals cross the boundary as "num/den" strings, structured results as
 * JSON text. */
#ifndef IMPRAND_H
#define IMPRAND_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define IMPRAND_API __declspec(dllexport)
#else
#define IMPRAND_API __attribute__((visibility("default")))
#endif

/* Values double as process exit codes for the command-line tool. */
typedef enum imprand_status {
  IMPRAND_OK = 0,
  IMPRAND_REJECTED = 1,  /* strategy is not an allowed bet */
  IMPRAND_RESOURCE = 3,  /* depth or enumeration cap exceeded */
  IMPRAND_SEMANTICS = 4, /* request has no defined meaning */
  IMPRAND_INVALID = 64,  /* malformed input or argument outside its domain */
  IMPRAND_INTERNAL = 70
} imprand_status;

typedef struct imprand_limits {
  size_t exhaustive_depth; /* strategy verification and selection enumeration */
  size_t global_depth;     /* backward recursion for global expectations */
  size_t oracle_depth;     /* endpoint-enumeration oracle */
} imprand_limits;

typedef struct imprand_forecast imprand_forecast;
typedef struct imprand_path imprand_path;
typedef struct imprand_strategies imprand_strategies;
typedef struct imprand_selections imprand_selections;

IMPRAND_API const char* imprand_version(void);
IMPRAND_API const char* imprand_last_error(void);
IMPRAND_API void imprand_string_free(char* s);
IMPRAND_API void imprand_default_limits(imprand_limits* out);
/* Sets *out to -1, 0 or 1 as a <, =, > b for rational strings. */
IMPRAND_API imprand_status imprand_rational_compare(const char* a, const char* b, int* out);

/* Local model. interval_json is {"lower","upper"}, gamble_json is [f0, f1].
 * Result: {"upper","lower","offered","cone"} with cone null when f is not
 * offered. */
IMPRAND_API imprand_status imprand_local_expectations(const char* interval_json, const char* gamble_json,
                                                      char** out_json);

/* Forecasting systems. base_dir resolves relative witness/path files and may
 * be NULL; limits may be NULL for the defaults. */
IMPRAND_API imprand_status imprand_forecast_parse(const char* json, const char* base_dir,
                                                  const imprand_limits* limits, imprand_forecast** out);
IMPRAND_API void imprand_forecast_free(imprand_forecast* f);
IMPRAND_API imprand_status imprand_forecast_to_json(const imprand_forecast* f, char** out_json);
/* JSON array of the files read while parsing. */
IMPRAND_API imprand_status imprand_forecast_sources(const imprand_forecast* f, char** out_json);
/* Interval at a situation given as a '0'/'1' string, as {"lower","upper"}. */
IMPRAND_API imprand_status imprand_forecast_at(const imprand_forecast* f, const char* situation, char** out_json);
/* Level table of a temporal system to the given depth, as
 * {"table": temporal_table spec, "reference": original spec}. */
IMPRAND_API imprand_status imprand_construct(const imprand_forecast* f, size_t depth, char** out_json);

/* Path prefixes. */
IMPRAND_API imprand_status imprand_path_parse(const char* text, imprand_path** out);
IMPRAND_API imprand_status imprand_path_read(const char* file, imprand_path** out);
IMPRAND_API imprand_status imprand_path_write(const imprand_path* p, const char* file);
/* kind is "alternating", "all_zero" or "all_one". */
IMPRAND_API imprand_status imprand_path_canonical(const char* kind, size_t n, imprand_path** out);
IMPRAND_API imprand_status imprand_path_sample(const imprand_forecast* f, size_t n, uint64_t seed,
                                               imprand_path** out);
IMPRAND_API size_t imprand_path_length(const imprand_path* p);
/* The bits as a plain '0'/'1' string. */
IMPRAND_API imprand_status imprand_path_bits(const imprand_path* p, char** out);
IMPRAND_API void imprand_path_free(imprand_path* p);
/* Name of the generator used by imprand_path_sample. */
IMPRAND_API const char* imprand_generator_name(void);

/* Strategy batteries: a single strategy spec, an array, or {"strategies": [...]}. */
IMPRAND_API imprand_status imprand_strategies_parse(const char* json, const char* base_dir,
                                                    const imprand_limits* limits, imprand_strategies** out);
IMPRAND_API size_t imprand_strategies_count(const imprand_strategies* s);
IMPRAND_API void imprand_strategies_free(imprand_strategies* s);
/* Exhaustive supermartingale check of strategy `index` up to depth. Result:
 * {"holds","depth","violations":[{"situation","upper_expectation"}]}. */
IMPRAND_API imprand_status imprand_verify(const imprand_strategies* s, size_t index, const imprand_forecast* f,
                                          size_t depth, size_t max_violations, const imprand_limits* limits,
                                          char** out_json);
/* Capital along the path, JSON array of n + 1 rationals. */
IMPRAND_API imprand_status imprand_capital(const imprand_strategies* s, size_t index, const imprand_path* p,
                                           char** out_json);
/* Spec of the rescaled test process for restart level n and constant k >= 1. */
IMPRAND_API imprand_status imprand_rescale(const imprand_strategies* s, size_t index, size_t n, const char* k,
                                           char** out_json);

/* Selection batteries: an array or {"selections": [...]}. */
IMPRAND_API imprand_status imprand_selections_parse(const char* json, const char* base_dir,
                                                    const imprand_limits* limits, imprand_selections** out);
/* always, follow_symbol(0), follow_symbol(1). */
IMPRAND_API imprand_status imprand_selections_default(imprand_selections** out);
/* Selections derived from real processes (array or {"processes": [...]})
 * at the rates p and q, materialized to the horizon. */
IMPRAND_API imprand_status imprand_selections_from_processes(const char* json, const char* p, const char* q,
                                                             size_t horizon, const imprand_limits* limits,
                                                             imprand_selections** out);
IMPRAND_API size_t imprand_selections_count(const imprand_selections* s);
IMPRAND_API imprand_status imprand_selections_to_json(const imprand_selections* s, char** out_json);
IMPRAND_API void imprand_selections_free(imprand_selections* s);

/* Global upper and lower expectation of a depth gamble
 * {"depth","payoff":{...}} or an event {"depth","members":[...]}.
 * With oracle != 0 the enumeration value is added under "oracle". */
IMPRAND_API imprand_status imprand_expect(const imprand_forecast* f, const char* gamble_json, int oracle,
                                          const imprand_limits* limits, char** out_json);

/* Runs every strategy along the path. growth is a comma list such as
 * "linear:1/100,sqrt_floor,log2_floor"; NULL selects that default. */
IMPRAND_API imprand_status imprand_run_battery(const imprand_path* p, const imprand_forecast* f,
                                               const imprand_strategies* s, const char* growth,
                                               const imprand_limits* limits, char** out_json);
/* Frequency statistics of every selection; tolerance is a rational string
 * or NULL for 0. */
IMPRAND_API imprand_status imprand_church(const imprand_path* p, const imprand_selections* s,
                                          const imprand_forecast* f, const char* tolerance, size_t min_count,
                                          char** out_json);
IMPRAND_API imprand_status imprand_estimate(const imprand_path* p, const imprand_selections* s, size_t min_count,
                                            char** out_json);

/* Seeded coherence suite; inject_fault swaps in a broken upper expectation.
 * A failing suite still returns IMPRAND_OK with "passed": false. */
IMPRAND_API imprand_status imprand_coherence(size_t trials, uint64_t seed, int inject_fault, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* IMPRAND_H */
