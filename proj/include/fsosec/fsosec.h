/*
   Copyright 2026 The fsosec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FSOSEC_FSOSEC_H
#define FSOSEC_FSOSEC_H

/* C interface to the fsosec library. Every function returns an fsosec_status;
 * on failure fsosec_last_error() describes the problem for the calling thread.
 * Strings handed out through char** must be released with fsosec_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(FSOSEC_BUILDING_LIBRARY)
#define FSOSEC_API __attribute__((visibility("default")))
#else
#define FSOSEC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fsosec_status {
    FSOSEC_OK = 0,
    FSOSEC_ERR_INVALID_ARGUMENT = 1,
    FSOSEC_ERR_PARSE = 2,
    FSOSEC_ERR_VALIDATION = 3,
    FSOSEC_ERR_NOT_FOUND = 4,
    FSOSEC_ERR_DOMAIN = 5,
    FSOSEC_ERR_NOT_CONVERGED = 6,
    FSOSEC_ERR_IO = 7,
    FSOSEC_ERR_INTERNAL = 8
} fsosec_status;

typedef enum fsosec_format { FSOSEC_FORMAT_CSV = 0, FSOSEC_FORMAT_JSON = 1, FSOSEC_FORMAT_TEXT = 2 } fsosec_format;

typedef enum fsosec_receiver { FSOSEC_DESTINATION = 0, FSOSEC_EAVESDROPPER = 1 } fsosec_receiver;

typedef enum fsosec_convention { FSOSEC_CONVENTION_PAPER = 0, FSOSEC_CONVENTION_SHANNON = 1 } fsosec_convention;

typedef struct fsosec_scenario fsosec_scenario;
typedef struct fsosec_sweep fsosec_sweep;
typedef struct fsosec_sweep_result fsosec_sweep_result;
typedef struct fsosec_validation fsosec_validation;

typedef struct fsosec_ew_params {
    double alpha;
    double beta;
    double eta;
} fsosec_ew_params;

typedef struct fsosec_path {
    double wavelength_m;
    double zenith_angle_rad;
    double wind_speed_mps;
    double ground_cn2;
    double receiver_altitude_m;
    double transmitter_altitude_m;
    double aperture_diameter_m;
} fsosec_path;

typedef struct fsosec_channel_info {
    double rytov_variance;
    double scintillation_index;
    fsosec_ew_params ew;
    double transmittance;
    double mean_snr; /* linear, after attenuation */
} fsosec_channel_info;

typedef struct fsosec_mc_estimate {
    double value;
    double std_error;
} fsosec_mc_estimate;

typedef struct fsosec_mc_result {
    fsosec_mc_estimate sop_exact;
    fsosec_mc_estimate sop_approximated;
    fsosec_mc_estimate ppsc;
} fsosec_mc_result;

typedef struct fsosec_validation_options {
    const double* mean_snr_d_db;
    size_t mean_snr_d_count;
    const double* mean_snr_e_db; /* NULL: use the scenario's value */
    size_t mean_snr_e_count;
    double secrecy_rate;
    fsosec_convention convention;
    int as_printed;
    uint64_t seed;
    uint64_t samples;
    unsigned shards;
} fsosec_validation_options;

FSOSEC_API const char* fsosec_version(void);
FSOSEC_API const char* fsosec_last_error(void);
FSOSEC_API const char* fsosec_status_name(fsosec_status status);
FSOSEC_API void fsosec_string_free(char* s);

/* Scenarios */
FSOSEC_API fsosec_status fsosec_scenario_load_file(const char* path, fsosec_scenario** out);
FSOSEC_API fsosec_status fsosec_scenario_load_text(const char* text, fsosec_scenario** out);
FSOSEC_API void fsosec_scenario_free(fsosec_scenario* s);
/* "key=value". Not revalidated here, so dependent keys can be changed one at a time. */
FSOSEC_API fsosec_status fsosec_scenario_override(fsosec_scenario* s, const char* assignment);
FSOSEC_API fsosec_status fsosec_scenario_validate(const fsosec_scenario* s);
FSOSEC_API fsosec_status fsosec_scenario_serialize(const fsosec_scenario* s, char** out);
FSOSEC_API fsosec_status fsosec_scenario_hash(const fsosec_scenario* s, uint64_t* out);
FSOSEC_API fsosec_status fsosec_channel_derive(const fsosec_scenario* s, fsosec_receiver receiver,
                                               fsosec_channel_info* out);
/* FSOSEC_FORMAT_TEXT or FSOSEC_FORMAT_JSON. */
FSOSEC_API fsosec_status fsosec_channel_report(const fsosec_scenario* s, fsosec_receiver receiver,
                                               fsosec_format format, char** out);

/* Sweeps */
FSOSEC_API fsosec_status fsosec_sweep_load_file(const char* path, fsosec_sweep** out);
FSOSEC_API void fsosec_sweep_free(fsosec_sweep* sw);
FSOSEC_API fsosec_status fsosec_sweep_name(const fsosec_sweep* sw, char** out);
FSOSEC_API fsosec_status fsosec_sweep_set_seed(fsosec_sweep* sw, uint64_t seed);
FSOSEC_API fsosec_status fsosec_sweep_set_mc_samples(fsosec_sweep* sw, uint64_t samples);
FSOSEC_API fsosec_status fsosec_sweep_set_shards(fsosec_sweep* sw, unsigned shards);
FSOSEC_API fsosec_status fsosec_sweep_set_rate(fsosec_sweep* sw, double rate);
FSOSEC_API fsosec_status fsosec_sweep_set_convention(fsosec_sweep* sw, fsosec_convention convention);
FSOSEC_API fsosec_status fsosec_sweep_set_as_printed(fsosec_sweep* sw, int enabled);
FSOSEC_API fsosec_status fsosec_sweep_set_with_mc(fsosec_sweep* sw, int enabled);
FSOSEC_API fsosec_status fsosec_sweep_set_cache(fsosec_sweep* sw, int enabled);
/* Replaces the grid; the sweep is revalidated. */
FSOSEC_API fsosec_status fsosec_sweep_set_grid(fsosec_sweep* sw, const char* grid);
FSOSEC_API fsosec_status fsosec_sweep_run(const fsosec_sweep* sw, fsosec_sweep_result** out);

FSOSEC_API void fsosec_sweep_result_free(fsosec_sweep_result* r);
FSOSEC_API size_t fsosec_sweep_result_curve_count(const fsosec_sweep_result* r);
FSOSEC_API fsosec_status fsosec_sweep_result_curve_name(const fsosec_sweep_result* r, size_t curve, char** out);
FSOSEC_API fsosec_status fsosec_sweep_result_row_count(const fsosec_sweep_result* r, size_t curve, size_t* out);
/* Numeric cell by column name; NaN when the cell was not computed. */
FSOSEC_API fsosec_status fsosec_sweep_result_value(const fsosec_sweep_result* r, size_t curve, size_t row,
                                                   const char* column, double* out);
FSOSEC_API fsosec_status fsosec_sweep_result_render(const fsosec_sweep_result* r, size_t curve,
                                                    fsosec_format format, char** out);

/* Closed form against Monte Carlo */
FSOSEC_API void fsosec_validation_options_init(fsosec_validation_options* opts);
FSOSEC_API fsosec_status fsosec_validate(const fsosec_scenario* s, const fsosec_validation_options* opts,
                                         fsosec_validation** out);
FSOSEC_API void fsosec_validation_free(fsosec_validation* v);
FSOSEC_API fsosec_status fsosec_validation_passed(const fsosec_validation* v, int* out);
FSOSEC_API fsosec_status fsosec_validation_render(const fsosec_validation* v, fsosec_format format, char** out);

/* "a, b, c" or "start:step:stop". Release *values with fsosec_doubles_free. */
FSOSEC_API fsosec_status fsosec_parse_grid(const char* text, double** values, size_t* count);
FSOSEC_API void fsosec_doubles_free(double* values);

/* Primitives */
FSOSEC_API fsosec_status fsosec_ew_pdf(const fsosec_ew_params* p, double irradiance, double* out);
FSOSEC_API fsosec_status fsosec_ew_cdf(const fsosec_ew_params* p, double irradiance, double* out);
FSOSEC_API fsosec_status fsosec_ew_quantile(const fsosec_ew_params* p, double u, double* out);
FSOSEC_API fsosec_status fsosec_ew_moment(const fsosec_ew_params* p, int n, double* out);
FSOSEC_API fsosec_status fsosec_ew_fit(double scintillation_index, int unit_mean, fsosec_ew_params* out);
FSOSEC_API fsosec_status fsosec_turbulence(const fsosec_path* path, double* rytov_variance,
                                           double* scintillation_index);
FSOSEC_API fsosec_status fsosec_threshold_from_rate(double rate, fsosec_convention convention, double* out);
FSOSEC_API fsosec_status fsosec_sop(const fsosec_ew_params* p, double mean_snr_d, double mean_snr_e,
                                    double gamma_th, int as_printed, double* out);
FSOSEC_API fsosec_status fsosec_ppsc(const fsosec_ew_params* p, double mean_snr_d, double mean_snr_e,
                                     int as_printed, double* out);
FSOSEC_API fsosec_status fsosec_mc_secrecy(const fsosec_ew_params* p, double mean_snr_d, double mean_snr_e,
                                           double gamma_th, uint64_t seed, uint64_t samples, unsigned shards,
                                           fsosec_mc_result* out);
FSOSEC_API fsosec_status fsosec_ks_check(const fsosec_ew_params* sample_from, const fsosec_ew_params* reference,
                                         uint64_t n, uint64_t seed, double* statistic, double* critical_1pct);

#ifdef __cplusplus
}
#endif

#endif
