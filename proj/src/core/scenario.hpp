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

#ifndef UAVSEC_SCENARIO_HPP
#define UAVSEC_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace uavsec
{

struct Position3
{
    double x = 0.0; // meters
    double y = 0.0; // meters
    double z = 0.0; // meters, >= 0

    bool operator==(const Position3 &) const = default;
};

double distance(const Position3 &a, const Position3 &b);

// Linear-scale values derived once from the dB entries of a ScenarioConfig.
struct LinearParams
{
    double noise_dev = 0.0;  // W
    double noise_eve = 0.0;  // W
    double noise_echo = 0.0; // W
    double rician_ud = 0.0;
    double rician_ut = 0.0;
    double pathloss_ref = 0.0;
    double tx_power = 0.0;    // W
    double sense_snr_min = 0.0; // 2^sense_rate_min - 1
};

struct ScenarioConfig
{
    int n_tx = 16;
    int n_rx = 8;
    double horizon = 30.0; // s
    int slots = 50;
    double slot_len = 0.6; // s

    double noise_dev_dbm = -80.0;
    double noise_eve_dbm = -100.0;
    double noise_echo_dbm = -165.0;

    double rician_ud_db = 15.0;
    double rician_ut_db = 5.0;

    double pathloss_ref_db = -30.0;
    double pathloss_exp_comm = 3.1;
    double pathloss_exp_sense = 1.5;

    double max_speed = 50.0; // m/s
    double max_step = 30.0;  // m
    double tx_power_dbm = 30.0;
    double sense_rate_min = 15.0; // bps/Hz
    double conv_tol = 1e-3;       // bps/Hz
    int max_outer_iters = 30;
    std::uint64_t rng_seed = 0;

    // Per-subproblem cap on waypoint movement, meters.
    double trust_region = 60.0;

    Position3 iot{10.0, 20.0, 0.0};
    Position3 ut{30.0, 30.0, 0.0};
    Position3 uav_start{0.0, 0.0, 15.0};
    Position3 uav_end{60.0, 30.0, 15.0};

    LinearParams linear;

    double altitude() const { return uav_start.z; }
};

// Contiguous 1-based slot grid.
struct Timeline
{
    int slots = 0;
    double slot_len = 0.0;

    std::vector<int> slot_indices() const;
    double slot_start_time(int slot) const { return (slot - 1) * slot_len; }
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);

ScenarioConfig default_scenario();

// Checks every invariant and fills cfg.linear. Throws ValidationError.
void validate(ScenarioConfig &cfg);

// Applies one `key = value` assignment; throws SchemaError for unknown keys
// or unparsable values. Does not re-validate.
void apply_setting(ScenarioConfig &cfg, const std::string &key, const std::string &value);

// Reads a flat `key = value` file (`#` starts a comment) on top of the
// defaults and validates the result.
ScenarioConfig load_config(const std::string &path);
ScenarioConfig parse_config(const std::string &text);

// Keeps horizon fixed and rescales slot_len and max_step for a new slot count.
ScenarioConfig with_slots(ScenarioConfig cfg, int slots);

Timeline timeline(const ScenarioConfig &cfg);

// Config file text reproducing cfg (round-trips through parse_config).
std::string to_config_text(const ScenarioConfig &cfg);

} // namespace uavsec

#endif
