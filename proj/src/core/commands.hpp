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
#ifndef UAVSEC_COMMANDS_HPP
#define UAVSEC_COMMANDS_HPP

#include "core/orchestrate.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace uavsec
{

enum class SweepAxis
{
    power_dbm,
    sense_rate,
    slots,
};

struct SweepSpec
{
    SweepAxis axis = SweepAxis::power_dbm;
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;
};

// "<axis>=<v1,v2,...>"; throws std::invalid_argument.
SweepSpec parse_sweep(const std::string &text);
std::vector<std::uint64_t> parse_seeds(const std::string &text);
const char *to_string(SweepAxis a);

// Copy of cfg with the axis set to value, re-validated.
ScenarioConfig apply_axis(const ScenarioConfig &cfg, SweepAxis axis, double value);

struct CommandOptions
{
    std::string config_path; // empty: defaults
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::string scheme = "proposed";
    int max_iters = -1;
    int jobs = 1;
    bool quiet = false;
    bool timing = false;        // also write timing.csv
    bool dump_channels = false; // also write channels.csv
};

enum ExitCode : int
{
    exit_ok = 0,
    exit_io = 1,
    exit_infeasible = 2,
};

// "converged", "max_iters", "rolled_back" or "infeasible".
std::string run_status(const RunRecord &rec);

std::string convergence_csv(const RunRecord &rec);
std::string timing_csv(const RunRecord &rec);
std::string trajectory_csv(const Trajectory &traj);
std::string metrics_csv(const MissionMetrics &m);
std::string summary_json(const ScenarioConfig &cfg, Scheme scheme, const RunOutput &out);

// Writes the four artifacts (plus the optional ones) into dir, creating it.
void write_run_artifacts(const std::string &dir, const ScenarioConfig &cfg, Scheme scheme, const RunOutput &out,
                         const CommandOptions &opts);

int cmd_run(const CommandOptions &opts, std::ostream &log);
int cmd_sweep(const CommandOptions &opts, const SweepSpec &sweep, std::ostream &log);

} // namespace uavsec

#endif
