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

#include "core/orchestrate.hpp"

#include "core/errors.hpp"
#include "core/rxbf.hpp"
#include "core/txbf.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace uavsec
{

namespace
{

using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point t0)
{
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

double mission_rate(const ScenarioConfig &cfg, const std::vector<ChannelSlot> &ch, const DesignState &st)
{
    return evaluate_mission(cfg, ch, st.w, st.u).r_sum;
}

std::vector<Eigen::VectorXcd> transmit_step(const ScenarioConfig &cfg, const std::vector<ChannelSlot> &ch,
                                            const std::vector<Eigen::VectorXcd> &w,
                                            const std::vector<Eigen::VectorXcd> &u)
{
    TxSubproblemInput in{&cfg, ch, w, u};
    TxOptions opts;
    opts.max_inner = 50;
    opts.closed_form_start = true;
    return solve_tx(in, opts).w;
}

std::vector<Eigen::VectorXcd> receive_step(const ScenarioConfig &cfg, const std::vector<ChannelSlot> &ch,
                                           const std::vector<Eigen::VectorXcd> &w,
                                           const std::vector<Eigen::VectorXcd> &u)
{
    std::vector<Eigen::VectorXcd> out(u.size());
    for (std::size_t s = 0; s < u.size(); ++s)
        out[s] = solve_rx_detailed(ch[s], w[s], u[s], cfg.linear.sense_snr_min, cfg.linear.noise_echo,
                                   static_cast<int>(s) + 1)
                     .u;
    return out;
}

struct Candidate
{
    DesignState state;
    std::vector<ChannelSlot> channels;
    double r_sum = 0.0;
};

// Re-fits both beamformers on a moved trajectory; false when the move breaks sensing.
bool refit(const ScenarioConfig &cfg, const std::vector<FadingDraw> &fading, const DesignState &base,
           Trajectory traj, Candidate &out)
{
    try
    {
        out.channels = realize_channels(cfg, traj, fading);
        out.state = base;
        out.state.traj = std::move(traj);
        // the echo is rank one in g_rt, so the best combiner does not depend on w
        for (std::size_t s = 0; s < out.channels.size(); ++s)
            out.state.u[s] = fix_phase(out.channels[s].g_rt / out.channels[s].g_rt.norm());
        for (std::size_t s = 0; s < out.state.w.size(); ++s)
            out.state.w[s] =
                repair_tx_feasibility(cfg, out.channels[s], out.state.w[s], out.state.u[s], static_cast<int>(s) + 1);
        out.state.w = transmit_step(cfg, out.channels, out.state.w, out.state.u);
        out.r_sum = mission_rate(cfg, out.channels, out.state);
        return true;
    }
    catch (const InfeasibleError &)
    {
        return false;
    }
}

Trajectory blend(const Trajectory &a, const Trajectory &b, double step)
{
    Trajectory t = a;
    for (std::size_t s = 0; s < t.size(); ++s)
    {
        t[s].x = a[s].x + step * (b[s].x - a[s].x);
        t[s].y = a[s].y + step * (b[s].y - a[s].y);
    }
    return t;
}

} // namespace

Scheme parse_scheme(const std::string &label)
{
    if (label == "mrt-fixed-traj")
        return Scheme::mrt_fixed_traj;
    if (label == "opt-bf-fixed-traj")
        return Scheme::opt_bf_fixed_traj;
    if (label == "proposed")
        return Scheme::proposed;
    throw std::invalid_argument("unknown scheme '" + label + "'");
}

const char *to_string(Scheme s)
{
    switch (s)
    {
    case Scheme::mrt_fixed_traj:
        return "mrt-fixed-traj";
    case Scheme::opt_bf_fixed_traj:
        return "opt-bf-fixed-traj";
    case Scheme::proposed:
        return "proposed";
    }
    return "unknown";
}

std::vector<ChannelSlot> realize_channels(const ScenarioConfig &cfg, const Trajectory &traj,
                                          const std::vector<FadingDraw> &fading)
{
    if (traj.size() != fading.size())
        throw std::invalid_argument("realize_channels: trajectory and fading lengths differ");
    std::vector<ChannelSlot> ch;
    ch.reserve(traj.size());
    for (std::size_t s = 0; s < traj.size(); ++s)
        ch.push_back(realize_slot(cfg, traj[s], static_cast<int>(s) + 1, fading[s]));
    return ch;
}

DesignState initialize(const ScenarioConfig &cfg, const std::vector<ChannelSlot> &channels)
{
    DesignState st;
    st.traj = straight_line(cfg);
    if (max_step_length(cfg, st.traj) > cfg.max_step * (1.0 + 1e-12))
        throw InfeasibleError("initialization", 0, "straight line violates the mobility limit");
    if (channels.size() != st.traj.size())
        throw std::invalid_argument("initialize: channel count does not match the slot count");
    const double amp = std::sqrt(cfg.linear.tx_power);
    for (std::size_t s = 0; s < channels.size(); ++s)
    {
        const ChannelSlot &ch = channels[s];
        const Eigen::VectorXcd u = ch.g_rt / ch.g_rt.norm();
        Eigen::VectorXcd w = amp * ch.h_ud / ch.h_ud.norm();
        if (cfg.linear.sense_snr_min > 0.0)
            w = repair_tx_feasibility(cfg, ch, w, u, static_cast<int>(s) + 1);
        st.w.push_back(w);
        st.u.push_back(u);
    }
    return st;
}

double feasibility_residual(const ScenarioConfig &cfg, const DesignState &st, const std::vector<ChannelSlot> &channels)
{
    double r = std::max(0.0, max_step_length(cfg, st.traj) - cfg.max_step);
    const double tau = cfg.linear.sense_snr_min;
    for (std::size_t s = 0; s < st.w.size(); ++s)
    {
        r = std::max(r, (st.w[s].squaredNorm() - cfg.linear.tx_power) / cfg.linear.tx_power);
        r = std::max(r, std::abs(st.u[s].norm() - 1.0));
        if (tau > 0.0)
            r = std::max(r, (tau - snr_echo(channels[s], st.w[s], st.u[s], cfg.linear.noise_echo)) / tau);
    }
    return r;
}

RunOutput run(const ScenarioConfig &cfg, Scheme scheme, const RunOptions &opts)
{
    RunOutput out;
    out.fading = draw_mission_fading(cfg);
    const Trajectory line = straight_line(cfg);
    out.channels = realize_channels(cfg, line, out.fading);
    out.state = initialize(cfg, out.channels);

    double r = mission_rate(cfg, out.channels, out.state);
    out.record.iterations.push_back({0, r, 0.0, feasibility_residual(cfg, out.state, out.channels)});

    const int max_iters = opts.max_outer_iters >= 0 ? opts.max_outer_iters : cfg.max_outer_iters;
    if (scheme == Scheme::mrt_fixed_traj)
    {
        out.record.converged = true;
        out.metrics = evaluate_mission(cfg, out.channels, out.state.w, out.state.u);
        return out;
    }

    const double regress_tol = 1e-6;
    const int traj_passes = 5;
    for (int it = 1; it <= max_iters; ++it)
    {
        const DesignState prev = out.state;
        const std::vector<ChannelSlot> prev_channels = out.channels;
        const double r_prev = r;
        IterationRecord rec;
        rec.iteration = it;

        auto t0 = clock_type::now();
        out.state.w = transmit_step(cfg, out.channels, out.state.w, out.state.u);
        rec.ms_txbf = elapsed_ms(t0);
        const double r_tx = mission_rate(cfg, out.channels, out.state);
        rec.delta_txbf = r_tx - r_prev;

        double r_traj = r_tx;
        if (scheme == Scheme::proposed)
        {
            t0 = clock_type::now();
            const TrajGains gains = freeze_gains(out.channels, out.state.w, out.state.u);
            // several SCA passes under the same frozen gains before re-fitting
            Trajectory target = out.state.traj;
            for (int pass = 0; pass < traj_passes; ++pass)
            {
                TrajReport tr;
                target = solve_traj(cfg, target, gains, &tr);
                if (tr.objective_after - tr.objective_before <= cfg.conv_tol * 0.1)
                    break;
            }
            // backtrack toward the current trajectory until the refitted design improves
            for (double step = 1.0; step >= 1.0 / 16.0; step *= 0.5)
            {
                Candidate c;
                if (!refit(cfg, out.fading, out.state, blend(out.state.traj, target, step), c))
                    continue;
                if (c.r_sum > r_traj)
                {
                    out.state = std::move(c.state);
                    out.channels = std::move(c.channels);
                    r_traj = c.r_sum;
                    break;
                }
            }
            rec.ms_traj = elapsed_ms(t0);
        }
        rec.delta_traj = r_traj - r_tx;

        t0 = clock_type::now();
        out.state.u = receive_step(cfg, out.channels, out.state.w, out.state.u);
        rec.ms_rxbf = elapsed_ms(t0);
        r = mission_rate(cfg, out.channels, out.state);
        rec.delta_rxbf = r - r_traj;

        out.state.iteration = it;
        rec.r_sum = r;
        rec.delta = r - r_prev;
        rec.feas_residual = feasibility_residual(cfg, out.state, out.channels);
        if (rec.delta < -regress_tol)
        {
            out.state = prev;
            out.channels = prev_channels;
            r = r_prev;
            out.record.rolled_back = true;
            break;
        }
        out.record.iterations.push_back(rec);
        if (std::abs(rec.delta) <= cfg.conv_tol)
        {
            out.record.converged = true;
            break;
        }
    }
    out.metrics = evaluate_mission(cfg, out.channels, out.state.w, out.state.u);
    return out;
}

} // namespace uavsec
