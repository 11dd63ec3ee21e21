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

#ifndef UAVSEC_TRAJOPT_HPP
#define UAVSEC_TRAJOPT_HPP

#include "core/channel.hpp"
#include "core/cvxcore.hpp"
#include "core/scenario.hpp"

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace uavsec
{

// Waypoint s (0-based index s - 1); waypoint 1 is the start position.
using Trajectory = std::vector<Position3>;

Trajectory straight_line(const ScenarioConfig &cfg);

// Largest step including the final leg to uav_end.
double max_step_length(const ScenarioConfig &cfg, const Trajectory &traj);
double min_distance(const Trajectory &traj, const Position3 &node);

// (d_ud, d_ut) for 1-based slot.
std::pair<double, double> distance_factors(const Trajectory &traj, const ScenarioConfig &cfg, int slot);

// Beamformer-channel products held fixed inside one trajectory subproblem.
struct TrajGains
{
    std::vector<std::complex<double>> psi1; // h_ud^H w
    std::vector<std::complex<double>> psi2; // h_ut^H w
    std::vector<double> sense;              // |u^H g_rt|^2
    std::vector<double> target_norm2;       // ||h_ut||^2
};

TrajGains freeze_gains(std::span<const ChannelSlot> channels, std::span<const Eigen::VectorXcd> w,
                       std::span<const Eigen::VectorXcd> u);

// Expansion point values per slot, recomputed from the trajectory.
struct TrajExpansion
{
    std::vector<double> zeta1, zeta2, zeta3, zeta4;
    std::vector<double> d_ud, d_ut;
};

TrajExpansion expansion_point(const ScenarioConfig &cfg, const Trajectory &traj, const TrajGains &gains);

// Eavesdropper SNR the transmit block settles on at target distance d when
// the echo constraint binds: tau sigma_echo^2 d^kappa / (sigma_eve^2 rho |u^H g|^2).
// Zero when sensing is disabled.
double sensing_floor(const ScenarioConfig &cfg, const TrajGains &gains, int slot, double d_ut);

// Eavesdropper SNR model used by the trajectory block: the sensing floor when
// sensing is enabled, the frozen-beamformer value otherwise.
double modeled_snr_ut(const ScenarioConfig &cfg, const TrajGains &gains, int slot, double d_ut);

// Average secrecy (unclamped) under the trajectory block's model: frozen
// h_ud^H w for the device and modeled_snr_ut for the target.
double frozen_objective(const ScenarioConfig &cfg, const Trajectory &traj, const TrajGains &gains);

// Squared radius around the target inside which a full-power beam can still
// meet the echo threshold; infinite when sensing is disabled.
double sensing_radius_sq(const ScenarioConfig &cfg, const TrajGains &gains, int slot);

struct TrajProblem
{
    cvx::ConvexSubproblem problem;
    Eigen::VectorXd start;
    int movable = 0; // slots 2..S

    // per movable slot: [x, y, z1, z2, z3, z4], keeping the Newton matrix block tridiagonal
    int pos_index(int slot) const { return 6 * (slot - 2); }
    int slack_index(int slot, int k) const { return 6 * (slot - 2) + 1 + k; }
    Trajectory trajectory(const Eigen::VectorXd &x, const Trajectory &prev) const;
};

TrajProblem build_traj_subproblem(const ScenarioConfig &cfg, const Trajectory &prev, const TrajGains &gains);

struct TrajReport
{
    cvx::SolveStatus status = cvx::SolveStatus::optimal;
    double objective_before = 0.0;
    double objective_after = 0.0;
    int iterations = 0;
};

// One convex step; never returns a trajectory with lower frozen objective.
Trajectory solve_traj(const ScenarioConfig &cfg, const Trajectory &prev, const TrajGains &gains,
                      TrajReport *report = nullptr);

} // namespace uavsec

#endif
