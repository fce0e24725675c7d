/* C interface to the netsync clock-synchronization simulator.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Functions return a netsync_status; on failure a
 * thread-local description is available from netsync_last_error(). Strings
 * handed out by the library are released with netsync_string_free unless
 * documented as borrowed.
 */
#ifndef NETSYNC_NETSYNC_H
#define NETSYNC_NETSYNC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NETSYNC_BUILDING)
#    define NETSYNC_API __declspec(dllexport)
#  else
#    define NETSYNC_API __declspec(dllimport)
#  endif
#else
#  define NETSYNC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum netsync_status {
    NETSYNC_OK = 0,
    NETSYNC_ERR_VALIDATION = 1, /* scenario failed to parse or validate */
    NETSYNC_ERR_RUNTIME = 2,    /* fatal NoRoute or other simulation failure */
    NETSYNC_ERR_IO = 3,         /* file could not be read or written */
    NETSYNC_ERR_ARGUMENT = 4    /* null handle or bad argument */
} netsync_status;

typedef struct netsync_scenario netsync_scenario;
typedef struct netsync_run netsync_run;

typedef enum netsync_extremum_kind {
    NETSYNC_EXTREMUM_NONE = 0,
    NETSYNC_EXTREMUM_LOCAL_MAXIMUM = 1,
    NETSYNC_EXTREMUM_LOCAL_MINIMUM = 2
} netsync_extremum_kind;

typedef struct netsync_extremum {
    int has_extremum;
    double t_star_s;
    netsync_extremum_kind classification;
    double concavity;
} netsync_extremum;

/* Borrowed, thread-local; valid until the next failing call on this thread. */
NETSYNC_API const char* netsync_last_error(void);
NETSYNC_API const char* netsync_version(void);
NETSYNC_API void netsync_string_free(char* s);

/* Scenarios. Loading parses and validates; a validation failure returns
 * NETSYNC_ERR_VALIDATION with every violation listed in netsync_last_error. */
NETSYNC_API netsync_status netsync_scenario_load(const char* path, netsync_scenario** out);
NETSYNC_API netsync_status netsync_scenario_parse(const char* text, netsync_scenario** out);
NETSYNC_API void netsync_scenario_free(netsync_scenario* scenario);
NETSYNC_API uint64_t netsync_scenario_seed(const netsync_scenario* scenario);
/* Canonical JSON with defaults filled in and presets expanded. */
NETSYNC_API netsync_status netsync_scenario_write(const netsync_scenario* scenario, char** out);

/* Runs. netsync_run_create executes the whole scenario under `seed`. A run
 * that hits a fatal NoRoute still yields a handle (with its trace) and
 * returns NETSYNC_ERR_RUNTIME. */
NETSYNC_API netsync_status netsync_run_create(const netsync_scenario* scenario, uint64_t seed, netsync_run** out);
NETSYNC_API void netsync_run_free(netsync_run* run);
/* Borrowed views into the run; valid while the run is alive. */
NETSYNC_API const char* netsync_run_trace(const netsync_run* run, size_t* length);
NETSYNC_API const char* netsync_run_metrics(const netsync_run* run, size_t* length);
NETSYNC_API size_t netsync_run_sync_count(const netsync_run* run);
/* Max |residual| of the i-th scheduled sync in picoseconds; returns
 * NETSYNC_ERR_ARGUMENT for an out-of-range index, NETSYNC_ERR_RUNTIME if the
 * sync did not complete. */
NETSYNC_API netsync_status netsync_run_sync_residual(const netsync_run* run, size_t index, int64_t* residual_ps);

/* Clock analysis for a quadratic clock with the given beta and gamma. */
NETSYNC_API netsync_status netsync_analyze_clock(double beta, double gamma, netsync_extremum* out);
/* Offset alpha(t) of a noise-free clock alpha0 + beta t + gamma t^2. */
NETSYNC_API netsync_status netsync_clock_offset(double alpha0, double beta, double gamma, double t, double* out);

/* DOT snapshot of the topology at time t_s. */
NETSYNC_API netsync_status netsync_export_dot(const netsync_scenario* scenario, double t_s, uint64_t seed, char** out);

/* Compare two trace texts. *identical is 1 for byte-identical input. */
NETSYNC_API netsync_status netsync_diff_traces(const char* trace_a, const char* trace_b, int* identical, char** report);

#ifdef __cplusplus
}
#endif

#endif /* NETSYNC_NETSYNC_H */
