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

#include "core/metrics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uavsec
{

double snr_device(const ChannelSlot &slot, const Eigen::VectorXcd &w, double sigma2)
{
    return std::norm(slot.l_ud * slot.h_ud.dot(w)) / sigma2;
}

double snr_eve(const ChannelSlot &slot, const Eigen::VectorXcd &w, double sigma2)
{
    return std::norm(slot.l_ut * slot.h_ut.dot(w)) / sigma2;
}

double snr_echo(const ChannelSlot &slot, const Eigen::VectorXcd &w, const Eigen::VectorXcd &u, double sigma2)
{
    const double uu = u.squaredNorm();
    if (std::abs(std::sqrt(uu) - 1.0) > 1e-9)
        throw std::invalid_argument("snr_echo: receive beamformer must have unit norm");
    // u^H g h^H w factors into two inner products for the rank-one echo channel
    const std::complex<double> y = slot.l_ut * slot.l_ut * u.dot(slot.g_rt) * slot.h_ut.dot(w);
    return std::norm(y) / (uu * sigma2);
}

double secrecy_rate_unclamped(double snr_ud, double snr_ut)
{
    return std::log2(1.0 + snr_ud) - std::log2(1.0 + snr_ut);
}

double secrecy_rate(const SlotMetrics &m) { return std::max(0.0, secrecy_rate_unclamped(m.snr_ud, m.snr_ut)); }

double average_secrecy(std::span<const double> secrecy)
{
    if (secrecy.empty())
        throw std::invalid_argument("average_secrecy: no slots");
    return std::accumulate(secrecy.begin(), secrecy.end(), 0.0) / static_cast<double>(secrecy.size());
}

SlotMetrics evaluate_slot(const ScenarioConfig &cfg, const ChannelSlot &slot, const Eigen::VectorXcd &w,
                          const Eigen::VectorXcd &u)
{
    SlotMetrics m;
    m.snr_ud = snr_device(slot, w, cfg.linear.noise_dev);
    m.snr_ut = snr_eve(slot, w, cfg.linear.noise_eve);
    m.snr_echo = snr_echo(slot, w, u, cfg.linear.noise_echo);
    m.rate_ud = std::log2(1.0 + m.snr_ud);
    m.rate_ut = std::log2(1.0 + m.snr_ut);
    m.secrecy = secrecy_rate(m);
    return m;
}

MissionMetrics evaluate_mission(const ScenarioConfig &cfg, std::span<const ChannelSlot> channels,
                                std::span<const Eigen::VectorXcd> w, std::span<const Eigen::VectorXcd> u)
{
    if (channels.size() != w.size() || channels.size() != u.size())
        throw std::invalid_argument("evaluate_mission: slot count mismatch");
    MissionMetrics out;
    out.slots.reserve(channels.size());
    std::vector<double> sec;
    sec.reserve(channels.size());
    for (std::size_t s = 0; s < channels.size(); ++s)
    {
        out.slots.push_back(evaluate_slot(cfg, channels[s], w[s], u[s]));
        sec.push_back(out.slots.back().secrecy);
    }
    out.r_sum = average_secrecy(sec);
    return out;
}

} // namespace uavsec
