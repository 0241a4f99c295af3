#ifndef KDVMS_H
#define KDVMS_H

#include <stddef.h>

#if defined(KDVMS_BUILDING)
#define KDVMS_API __attribute__((visibility("default")))
#else
#define KDVMS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. The first five coincide with the CLI exit codes. */
typedef enum kdv_status {
  KDV_OK = 0,
  KDV_INTERNAL = 1,
  KDV_DIVERGENCE = 2, /* fixed-point divergence or degenerate system */
  KDV_CONFIG = 3,     /* bad key/value, parity violation, bad input file */
  KDV_BLOWUP = 4,
  KDV_SINGULAR = 5,   /* even n where A must be inverted */
  KDV_DEGENERATE = 6, /* only from kdv_rank_of_D; runs map this to 2 */
  KDV_IO = 7,
  KDV_ARGUMENT = 8    /* NULL handle or output pointer, bad buffer size */
} kdv_status;

typedef struct kdv_config kdv_config;
typedef struct kdv_session kdv_session;

/* Message of the last failing call on this thread; never NULL. */
KDVMS_API const char* kdv_last_error(void);
KDVMS_API const char* kdv_version(void);

/* Run configuration with defaults (scheme=preissman, n=99, tau=0.04, ...). */
KDVMS_API kdv_status kdv_config_create(kdv_config** out);
KDVMS_API void kdv_config_destroy(kdv_config* cfg);
/* Kebab-case key as in the config file, e.g. ("tau", "0.01"). */
KDVMS_API kdv_status kdv_config_set(kdv_config* cfg, const char* key,
                                    const char* value);
/* Applies a key=value file on top of the current values. */
KDVMS_API kdv_status kdv_config_load_file(kdv_config* cfg, const char* path);
/* Copies the resolved value of key into buf (NUL-terminated). */
KDVMS_API kdv_status kdv_config_get(const kdv_config* cfg, const char* key,
                                    char* buf, size_t buf_size);
KDVMS_API kdv_status kdv_config_validate(const kdv_config* cfg);

typedef struct kdv_run_summary {
  long steps_completed;
  double final_time;
  double max_relative_mass_drift;
  int truncated;
} kdv_run_summary;

/* Runs the configured experiment and writes the output files. summary may be
   NULL. Returns KDV_OK, KDV_DIVERGENCE, KDV_CONFIG, KDV_BLOWUP or
   KDV_INTERNAL. */
KDVMS_API kdv_status kdv_run_experiment(const kdv_config* cfg,
                                        kdv_run_summary* summary);

/* Steps the configured scheme and `other_scheme` side by side, writing
   step,t,linf,l2 rows to out_path (may be NULL). */
KDVMS_API kdv_status kdv_compare_schemes(const kdv_config* cfg,
                                         const char* other_scheme,
                                         const char* out_path,
                                         double* max_linf);

/* Step-by-step access to a scheme. */
KDVMS_API kdv_status kdv_session_create(const kdv_config* cfg,
                                        kdv_session** out);
KDVMS_API void kdv_session_destroy(kdv_session* s);
KDVMS_API kdv_status kdv_session_step(kdv_session* s, long count);
KDVMS_API int kdv_session_size(const kdv_session* s);
/* Copies u at the current level; len must equal kdv_session_size. */
KDVMS_API kdv_status kdv_session_get_u(const kdv_session* s, double* u,
                                       size_t len);
KDVMS_API double kdv_session_time(const kdv_session* s);
KDVMS_API double kdv_session_mass(const kdv_session* s);
KDVMS_API long kdv_session_steps(const kdv_session* s);

/* Numerical rank of the monolithic Preissman coefficient matrix for the
   configured grid; anchored != 0 appends the anchor row. */
KDVMS_API kdv_status kdv_rank_of_D(const kdv_config* cfg, int anchored,
                                   int* rank, int* columns);

#ifdef __cplusplus
}
#endif

#endif
