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

#ifndef UAVSEC_CHANNEL_HPP
#define UAVSEC_CHANNEL_HPP

#include "core/scenario.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace uavsec
{

enum class Link : std::uint32_t
{
    uav_device = 1,
    uav_target = 2,
};

// NLoS samples for one slot, CN(0, 1) i.i.d. entries.
struct FadingDraw
{
    Eigen::VectorXcd nlos_ud;
    Eigen::VectorXcd nlos_ut;
};

struct ChannelSlot
{
    Eigen::VectorXcd h_ud; // N_t
    Eigen::VectorXcd h_ut; // N_t
    Eigen::VectorXcd g_rt; // N_r, receive steering toward the target
    double l_ud = 0.0;     // amplitude path loss, L_ud^2 = rho d^-kappa
    double l_ut = 0.0;
};

// Amplitude L with L^2 = rho * d^-exponent, d the 3-D distance.
double path_loss_amplitude(const Position3 &p_uav, const Position3 &p_ground, double rho, double exponent);

// Half-wavelength ULA: entry k = exp(j pi k sin(angle)).
Eigen::VectorXcd ula_steering(double angle, int n);

// Angle from broadside of an x-axis array toward `node`, sin(angle) = dx / d.
double los_angle(const Position3 &p_uav, const Position3 &node);

// Deterministic in (seed, slot, link); slot is 1-based.
Eigen::VectorXcd draw_nlos(std::uint64_t seed, int slot, Link link, int n);
FadingDraw draw_fading(std::uint64_t seed, int slot, int n_tx);

// One draw per slot for a whole mission, indexed by slot - 1.
std::vector<FadingDraw> draw_mission_fading(const ScenarioConfig &cfg);

// Rician mixture of the LoS steering vector and the stored NLoS draw.
Eigen::VectorXcd rician_mix(const Eigen::VectorXcd &los, const Eigen::VectorXcd &nlos, double factor);

ChannelSlot realize_slot(const ScenarioConfig &cfg, const Position3 &p_uav, int slot, const FadingDraw &draw);

// Writes (slot, link, index, re, im) rows.
void write_channel_dump(const std::string &path, const std::vector<ChannelSlot> &channels);

} // namespace uavsec

#endif
