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

#include "core/channel.hpp"

#include "core/csv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace uavsec
{

namespace
{

// splitmix64 finalizer, used to derive a per-(seed, slot, link) stream key.
std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double unit_open(std::mt19937_64 &rng)
{
    // (0, 1], 53-bit resolution, independent of the standard library's distributions
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

} // namespace

double path_loss_amplitude(const Position3 &p_uav, const Position3 &p_ground, double rho, double exponent)
{
    if (!(p_uav.z > 0.0))
        throw std::invalid_argument("path_loss_amplitude: UAV altitude must be positive");
    const double dx = p_uav.x - p_ground.x;
    const double dy = p_uav.y - p_ground.y;
    const double dz = p_uav.z - p_ground.z;
    const double d2 = dx * dx + dy * dy + dz * dz;
    if (d2 <= 0.0)
        throw std::invalid_argument("path_loss_amplitude: co-located nodes");
    return std::sqrt(rho * std::pow(d2, -exponent / 2.0));
}

Eigen::VectorXcd ula_steering(double angle, int n)
{
    if (n < 1)
        throw std::invalid_argument("ula_steering: n must be >= 1");
    Eigen::VectorXcd a(n);
    const double phase_step = std::numbers::pi * std::sin(angle);
    for (int k = 0; k < n; ++k)
        a[k] = std::polar(1.0, phase_step * k);
    return a;
}

double los_angle(const Position3 &p_uav, const Position3 &node)
{
    const double d = distance(p_uav, node);
    if (d <= 0.0)
        throw std::invalid_argument("los_angle: co-located nodes");
    return std::asin(std::clamp((node.x - p_uav.x) / d, -1.0, 1.0));
}

Eigen::VectorXcd draw_nlos(std::uint64_t seed, int slot, Link link, int n)
{
    const std::uint64_t key =
        mix64(mix64(mix64(seed) ^ static_cast<std::uint64_t>(slot)) ^ static_cast<std::uint64_t>(link));
    std::mt19937_64 rng(key);
    Eigen::VectorXcd v(n);
    // Box-Muller; each pair of uniforms yields one complex sample with E|v|^2 = 1
    for (int k = 0; k < n; ++k)
    {
        const double r = std::sqrt(-std::log(unit_open(rng)));
        const double th = 2.0 * std::numbers::pi * unit_open(rng);
        v[k] = std::complex<double>(r * std::cos(th), r * std::sin(th));
    }
    return v;
}

FadingDraw draw_fading(std::uint64_t seed, int slot, int n_tx)
{
    return {draw_nlos(seed, slot, Link::uav_device, n_tx), draw_nlos(seed, slot, Link::uav_target, n_tx)};
}

std::vector<FadingDraw> draw_mission_fading(const ScenarioConfig &cfg)
{
    std::vector<FadingDraw> out;
    out.reserve(static_cast<std::size_t>(cfg.slots));
    for (int s = 1; s <= cfg.slots; ++s)
        out.push_back(draw_fading(cfg.rng_seed, s, cfg.n_tx));
    return out;
}

Eigen::VectorXcd rician_mix(const Eigen::VectorXcd &los, const Eigen::VectorXcd &nlos, double factor)
{
    if (los.size() != nlos.size())
        throw std::invalid_argument("rician_mix: length mismatch");
    if (factor < 0.0)
        throw std::invalid_argument("rician_mix: negative Rician factor");
    if (factor == 0.0)
        return nlos;
    return std::sqrt(factor / (1.0 + factor)) * los + std::sqrt(1.0 / (1.0 + factor)) * nlos;
}

ChannelSlot realize_slot(const ScenarioConfig &cfg, const Position3 &p_uav, int slot, const FadingDraw &draw)
{
    if (slot < 1 || slot > cfg.slots)
        throw std::out_of_range("realize_slot: slot " + std::to_string(slot) + " outside 1.." +
                                std::to_string(cfg.slots));
    if (draw.nlos_ud.size() != cfg.n_tx || draw.nlos_ut.size() != cfg.n_tx)
        throw std::invalid_argument("realize_slot: fading draw does not match n_tx");

    const double rho = cfg.linear.pathloss_ref;
    ChannelSlot ch;
    ch.l_ud = path_loss_amplitude(p_uav, cfg.iot, rho, cfg.pathloss_exp_comm);
    ch.l_ut = path_loss_amplitude(p_uav, cfg.ut, rho, cfg.pathloss_exp_comm);

    const double ang_d = los_angle(p_uav, cfg.iot);
    const double ang_t = los_angle(p_uav, cfg.ut);
    ch.h_ud = rician_mix(ula_steering(ang_d, cfg.n_tx), draw.nlos_ud, cfg.linear.rician_ud);
    ch.h_ut = rician_mix(ula_steering(ang_t, cfg.n_tx), draw.nlos_ut, cfg.linear.rician_ut);
    ch.g_rt = ula_steering(ang_t, cfg.n_rx);
    return ch;
}

void write_channel_dump(const std::string &path, const std::vector<ChannelSlot> &channels)
{
    CsvWriter csv({"slot", "link", "index", "re", "im"});
    auto emit = [&](int slot, const char *link, const Eigen::VectorXcd &v) {
        for (Eigen::Index k = 0; k < v.size(); ++k)
            csv.row(slot, link, static_cast<int>(k), v[k].real(), v[k].imag());
    };
    for (std::size_t s = 0; s < channels.size(); ++s)
    {
        const int slot = static_cast<int>(s) + 1;
        emit(slot, "h_ud", channels[s].h_ud);
        emit(slot, "h_ut", channels[s].h_ut);
        emit(slot, "g_rt", channels[s].g_rt);
    }
    csv.write_atomic(path);
}

} // namespace uavsec
