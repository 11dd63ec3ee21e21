// SPDX-License-Identifier: Apache-2.0
//
// uavsec - secrecy-rate optimization for a sensing UAV transmitter
// Copyright (C) 2026 The uavsec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#ifndef UAVSEC_UAVSEC_H
#define UAVSEC_UAVSEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define UAVSEC_API __declspec(dllexport)
#else
#define UAVSEC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uavsec_status
{
    UAVSEC_OK = 0,
    UAVSEC_ERR_ARGUMENT = 1,   /* null handle, bad index, unknown scheme */
    UAVSEC_ERR_SCHEMA = 2,     /* unknown config key or unparsable value */
    UAVSEC_ERR_VALIDATION = 3, /* config violates a scenario invariant */
    UAVSEC_ERR_INFEASIBLE = 4, /* an optimization block cannot meet its constraints */
    UAVSEC_ERR_IO = 5,
    UAVSEC_ERR_INTERNAL = 6,
} uavsec_status;

typedef struct uavsec_config uavsec_config;
typedef struct uavsec_result uavsec_result;

typedef struct uavsec_summary
{
    double r_sum;       /* average secrecy rate, bps/Hz */
    int iterations;     /* outer iterations after initialization */
    int converged;
    int rolled_back;
    int slots;
    double feas_residual;
    double min_distance_ut;
    double min_distance_iot;
} uavsec_summary;

typedef struct uavsec_slot_metrics
{
    double snr_ud;
    double snr_ut;
    double snr_echo;
    double secrecy; /* clamped at 0 */
} uavsec_slot_metrics;

typedef struct uavsec_cli_options
{
    const char *config_path; /* NULL or "": defaults */
    int has_seed;
    uint64_t seed;
    const char *out_dir; /* NULL: "out" */
    const char *scheme;  /* NULL: "proposed" */
    int max_iters;       /* < 0: from config */
    int jobs;
    int quiet;
    int timing;
    int dump_channels;
} uavsec_cli_options;

UAVSEC_API const char *uavsec_version(void);

/* Message for the last failed call on this thread; never NULL. */
UAVSEC_API const char *uavsec_last_error(void);

UAVSEC_API uavsec_status uavsec_config_default(uavsec_config **out);
UAVSEC_API uavsec_status uavsec_config_load(const char *path, uavsec_config **out);
UAVSEC_API uavsec_status uavsec_config_parse(const char *text, uavsec_config **out);
/* Sets one key and re-validates; the config is unchanged on failure. */
UAVSEC_API uavsec_status uavsec_config_set(uavsec_config *cfg, const char *key, const char *value);
/* Writes the config as `key = value` text. *needed includes the terminator. */
UAVSEC_API uavsec_status uavsec_config_text(const uavsec_config *cfg, char *buf, size_t cap, size_t *needed);
UAVSEC_API void uavsec_config_free(uavsec_config *cfg);

/* scheme: "proposed", "opt-bf-fixed-traj" or "mrt-fixed-traj"; max_iters < 0 keeps the config value. */
UAVSEC_API uavsec_status uavsec_run(const uavsec_config *cfg, const char *scheme, int max_iters,
                                    uavsec_result **out);
UAVSEC_API uavsec_status uavsec_result_summary(const uavsec_result *res, uavsec_summary *out);
/* slot is 1-based. */
UAVSEC_API uavsec_status uavsec_result_waypoint(const uavsec_result *res, int slot, double xyz[3]);
UAVSEC_API uavsec_status uavsec_result_slot_metrics(const uavsec_result *res, int slot, uavsec_slot_metrics *out);
/* R_sum after outer iteration k (k = 0 is the initial design). */
UAVSEC_API uavsec_status uavsec_result_history(const uavsec_result *res, int k, double *r_sum);
/* Writes convergence.csv, trajectory.csv, metrics.csv and summary.json. */
UAVSEC_API uavsec_status uavsec_result_write(const uavsec_result *res, const char *out_dir);
UAVSEC_API void uavsec_result_free(uavsec_result *res);

/* Command entry points; return process exit codes (0 ok, 1 io/usage, 2 infeasible). */
UAVSEC_API int uavsec_cmd_run(const uavsec_cli_options *opts);
/* sweep: "<axis>=<v1,v2,...>" with axis power_dbm, sense_rate or slots; seeds: NULL or "0,1,2". */
UAVSEC_API int uavsec_cmd_sweep(const uavsec_cli_options *opts, const char *sweep, const char *seeds);

#ifdef __cplusplus
}
#endif

#endif
