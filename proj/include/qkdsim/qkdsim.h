/* C interface of the qkdsim shared library.
 *
 * Scenarios are opaque handles. Every function returns QKDSIM_OK or an error
 * code; qkdsim_last_error() carries the matching message for the calling
 * thread. Strings returned through out-parameters are owned by the caller
 * and released with qkdsim_string_free().
 */
#ifndef QKDSIM_H
#define QKDSIM_H

#include <stdint.h>

#if defined(_WIN32)
#define QKDSIM_API __declspec(dllexport)
#else
#define QKDSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qkdsim_status {
    QKDSIM_OK = 0,
    QKDSIM_ERR_INVALID_ARGUMENT = 1,
    QKDSIM_ERR_IO = 2,
    QKDSIM_ERR_CONFIG = 3,
    QKDSIM_ERR_PLANNING = 4,
    QKDSIM_ERR_ESTIMATION = 5,
    QKDSIM_ERR_DOMAIN = 6,
    QKDSIM_ERR_INTERNAL = 7
} qkdsim_status;

typedef struct qkdsim_scenario qkdsim_scenario;

QKDSIM_API const char* qkdsim_version(void);
QKDSIM_API const char* qkdsim_status_name(qkdsim_status status);

/* Message of the last failing call on this thread; empty string if none. */
QKDSIM_API const char* qkdsim_last_error(void);

QKDSIM_API qkdsim_status qkdsim_scenario_create_default(qkdsim_scenario** out);
QKDSIM_API qkdsim_status qkdsim_scenario_load(const char* path, qkdsim_scenario** out);
QKDSIM_API void qkdsim_scenario_free(qkdsim_scenario* scenario);

QKDSIM_API qkdsim_status qkdsim_scenario_set_sweep(qkdsim_scenario* scenario, double from_km,
                                                   double to_km, double step_km);
QKDSIM_API qkdsim_status qkdsim_scenario_get_sweep(const qkdsim_scenario* scenario,
                                                   double* from_km, double* to_km,
                                                   double* step_km);
/* form: "integral" or "paper" */
QKDSIM_API qkdsim_status qkdsim_scenario_set_backward_form(qkdsim_scenario* scenario,
                                                           const char* form);
QKDSIM_API qkdsim_status qkdsim_scenario_set_include_clock_raman(qkdsim_scenario* scenario,
                                                                 int include);
/* Replace the CWDM passband centers; insertion losses follow by position
 * from the existing grid, which must carry at least `count` entries. */
QKDSIM_API qkdsim_status qkdsim_scenario_set_passbands(qkdsim_scenario* scenario,
                                                       const double* centers_nm,
                                                       uint64_t count);
QKDSIM_API qkdsim_status qkdsim_scenario_get_mc_defaults(const qkdsim_scenario* scenario,
                                                         uint64_t* n_pulses, uint64_t* seed);

/* Diagnostics, one per line; empty string when the scenario is valid. */
QKDSIM_API qkdsim_status qkdsim_validate(const qkdsim_scenario* scenario, char** diagnostics_out);

QKDSIM_API qkdsim_status qkdsim_sweep_csv(const qkdsim_scenario* scenario, char** csv_out);
QKDSIM_API qkdsim_status qkdsim_raman_csv(const qkdsim_scenario* scenario, char** csv_out);
QKDSIM_API qkdsim_status qkdsim_plan_report(const qkdsim_scenario* scenario, char** text_out,
                                            char** csv_out);
QKDSIM_API qkdsim_status qkdsim_keyrate_text(const qkdsim_scenario* scenario, double length_km,
                                             char** text_out);
QKDSIM_API qkdsim_status qkdsim_mc_csv(const qkdsim_scenario* scenario, double length_km,
                                       uint64_t n_pulses, uint64_t seed, char** csv_out);

QKDSIM_API void qkdsim_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* QKDSIM_H */
