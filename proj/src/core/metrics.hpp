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

#ifndef UAVSEC_METRICS_HPP
#define UAVSEC_METRICS_HPP

#include "core/channel.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace uavsec
{

struct SlotMetrics
{
    double snr_ud = 0.0;
    double snr_ut = 0.0;
    double snr_echo = 0.0;
    double rate_ud = 0.0; // bps/Hz
    double rate_ut = 0.0;
    double secrecy = 0.0; // clamped at 0
};

struct MissionMetrics
{
    std::vector<SlotMetrics> slots;
    double r_sum = 0.0;
};

// |L_ud h_ud^H w|^2 / sigma2
double snr_device(const ChannelSlot &slot, const Eigen::VectorXcd &w, double sigma2);
// |L_ut h_ut^H w|^2 / sigma2
double snr_eve(const ChannelSlot &slot, const Eigen::VectorXcd &w, double sigma2);
// |u^H L_ut^2 g_rt h_ut^H w|^2 / (u^H u sigma2); u must have unit norm.
double snr_echo(const ChannelSlot &slot, const Eigen::VectorXcd &w, const Eigen::VectorXcd &u, double sigma2);

// [log2(1 + snr_ud) - log2(1 + snr_ut)]^+
double secrecy_rate(const SlotMetrics &m);
// Same difference without the positive-part clamp.
double secrecy_rate_unclamped(double snr_ud, double snr_ut);

double average_secrecy(std::span<const double> secrecy);

SlotMetrics evaluate_slot(const ScenarioConfig &cfg, const ChannelSlot &slot, const Eigen::VectorXcd &w,
                          const Eigen::VectorXcd &u);

MissionMetrics evaluate_mission(const ScenarioConfig &cfg, std::span<const ChannelSlot> channels,
                                std::span<const Eigen::VectorXcd> w, std::span<const Eigen::VectorXcd> u);

} // namespace uavsec

#endif
