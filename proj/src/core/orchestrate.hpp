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

#ifndef UAVSEC_ORCHESTRATE_HPP
#define UAVSEC_ORCHESTRATE_HPP

#include "core/channel.hpp"
#include "core/metrics.hpp"
#include "core/scenario.hpp"
#include "core/trajopt.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace uavsec
{

enum class Scheme
{
    mrt_fixed_traj,
    opt_bf_fixed_traj,
    proposed,
};

// Throws std::invalid_argument for unknown labels.
Scheme parse_scheme(const std::string &label);
const char *to_string(Scheme s);

struct DesignState
{
    Trajectory traj;
    std::vector<Eigen::VectorXcd> w;
    std::vector<Eigen::VectorXcd> u;
    int iteration = 0;
};

struct IterationRecord
{
    int iteration = 0;
    double r_sum = 0.0;
    double delta = 0.0;
    double feas_residual = 0.0;
    // R_sum change contributed by each block
    double delta_txbf = 0.0;
    double delta_traj = 0.0;
    double delta_rxbf = 0.0;
    double ms_txbf = 0.0;
    double ms_traj = 0.0;
    double ms_rxbf = 0.0;
};

struct RunRecord
{
    std::vector<IterationRecord> iterations; // entry 0 is the initial state
    bool converged = false;
    bool rolled_back = false;
};

struct RunOptions
{
    int max_outer_iters = -1; // overrides cfg.max_outer_iters when >= 0
};

struct RunOutput
{
    DesignState state;
    RunRecord record;
    std::vector<FadingDraw> fading;
    std::vector<ChannelSlot> channels; // realized on state.traj
    MissionMetrics metrics;
};

std::vector<ChannelSlot> realize_channels(const ScenarioConfig &cfg, const Trajectory &traj,
                                          const std::vector<FadingDraw> &fading);

// Straight line, MRT toward the device (repaired for sensing), receive matched filter.
DesignState initialize(const ScenarioConfig &cfg, const std::vector<ChannelSlot> &channels);

// Largest violation over mobility, power, unit norm and echo SNR (relative).
double feasibility_residual(const ScenarioConfig &cfg, const DesignState &st, const std::vector<ChannelSlot> &channels);

// Throws InfeasibleError naming the block and slot when a block cannot satisfy
// its constraints.
RunOutput run(const ScenarioConfig &cfg, Scheme scheme, const RunOptions &opts = {});

} // namespace uavsec

#endif
