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

#include "core/trajopt.hpp"

#include "core/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace uavsec
{

namespace
{

const double ln2 = std::log(2.0);

// scale * (||p_a - p_b||^2 - r^2) <= 0 over two movable waypoints
cvx::Constraint pair_ball(int ia, int ib, double r, double scale, std::string label)
{
    cvx::Constraint c;
    c.label = std::move(label);
    for (int k = 0; k < 2; ++k)
    {
        c.quad.push_back({ia + k, ia + k, scale});
        c.quad.push_back({ib + k, ib + k, scale});
        c.quad.push_back({ia + k, ib + k, -2.0 * scale});
    }
    c.constant = -r * r * scale;
    return c;
}

} // namespace

Trajectory straight_line(const ScenarioConfig &cfg)
{
    Trajectory t(static_cast<std::size_t>(cfg.slots));
    for (int s = 0; s < cfg.slots; ++s)
    {
        const double f = static_cast<double>(s) / static_cast<double>(cfg.slots - 1);
        t[static_cast<std::size_t>(s)] = {cfg.uav_start.x + f * (cfg.uav_end.x - cfg.uav_start.x),
                                          cfg.uav_start.y + f * (cfg.uav_end.y - cfg.uav_start.y), cfg.altitude()};
    }
    return t;
}

double max_step_length(const ScenarioConfig &cfg, const Trajectory &traj)
{
    double worst = 0.0;
    for (std::size_t s = 0; s + 1 < traj.size(); ++s)
        worst = std::max(worst, distance(traj[s], traj[s + 1]));
    if (!traj.empty())
        worst = std::max(worst, distance(traj.back(), cfg.uav_end));
    return worst;
}

double min_distance(const Trajectory &traj, const Position3 &node)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto &p : traj)
        best = std::min(best, distance(p, node));
    return best;
}

std::pair<double, double> distance_factors(const Trajectory &traj, const ScenarioConfig &cfg, int slot)
{
    if (slot < 1 || slot > static_cast<int>(traj.size()))
        throw std::out_of_range("distance_factors: slot out of range");
    const Position3 &p = traj[static_cast<std::size_t>(slot - 1)];
    return {distance(p, cfg.iot), distance(p, cfg.ut)};
}

TrajGains freeze_gains(std::span<const ChannelSlot> channels, std::span<const Eigen::VectorXcd> w,
                       std::span<const Eigen::VectorXcd> u)
{
    if (channels.size() != w.size() || channels.size() != u.size())
        throw std::invalid_argument("freeze_gains: slot count mismatch");
    TrajGains g;
    for (std::size_t s = 0; s < channels.size(); ++s)
    {
        g.psi1.push_back(channels[s].h_ud.dot(w[s]));
        g.psi2.push_back(channels[s].h_ut.dot(w[s]));
        g.sense.push_back(std::norm(u[s].dot(channels[s].g_rt)));
        g.target_norm2.push_back(channels[s].h_ut.squaredNorm());
    }
    return g;
}

TrajExpansion expansion_point(const ScenarioConfig &cfg, const Trajectory &traj, const TrajGains &gains)
{
    const double rho = cfg.linear.pathloss_ref;
    const double kappa = cfg.pathloss_exp_comm;
    TrajExpansion e;
    for (int s = 1; s <= static_cast<int>(traj.size()); ++s)
    {
        const auto [dud, dut] = distance_factors(traj, cfg, s);
        const auto i = static_cast<std::size_t>(s - 1);
        const double k1 = rho * std::norm(gains.psi1[i]) / cfg.linear.noise_dev;
        const double z3 = std::pow(dud, -kappa / 2.0);
        e.zeta3.push_back(z3);
        e.zeta4.push_back(std::pow(dut, -kappa / 2.0));
        e.zeta1.push_back(k1 * z3 * z3);
        e.zeta2.push_back(modeled_snr_ut(cfg, gains, s, dut));
        e.d_ud.push_back(dud);
        e.d_ut.push_back(dut);
    }
    return e;
}

double sensing_floor(const ScenarioConfig &cfg, const TrajGains &gains, int slot, double d_ut)
{
    const double tau = cfg.linear.sense_snr_min;
    if (tau <= 0.0)
        return 0.0;
    const auto i = static_cast<std::size_t>(slot - 1);
    return tau * cfg.linear.noise_echo * std::pow(d_ut, cfg.pathloss_exp_comm) /
           (cfg.linear.noise_eve * cfg.linear.pathloss_ref * gains.sense[i]);
}

double modeled_snr_ut(const ScenarioConfig &cfg, const TrajGains &gains, int slot, double d_ut)
{
    if (cfg.linear.sense_snr_min > 0.0)
        return sensing_floor(cfg, gains, slot, d_ut);
    const auto i = static_cast<std::size_t>(slot - 1);
    return cfg.linear.pathloss_ref * std::pow(d_ut, -cfg.pathloss_exp_comm) * std::norm(gains.psi2[i]) /
           cfg.linear.noise_eve;
}

double frozen_objective(const ScenarioConfig &cfg, const Trajectory &traj, const TrajGains &gains)
{
    const TrajExpansion e = expansion_point(cfg, traj, gains);
    double sum = 0.0;
    for (std::size_t s = 0; s < traj.size(); ++s)
        sum += std::log2(1.0 + e.zeta1[s]) - std::log2(1.0 + e.zeta2[s]);
    return sum / static_cast<double>(traj.size());
}

double sensing_radius_sq(const ScenarioConfig &cfg, const TrajGains &gains, int slot)
{
    const double tau = cfg.linear.sense_snr_min;
    if (tau <= 0.0)
        return std::numeric_limits<double>::infinity();
    const auto i = static_cast<std::size_t>(slot - 1);
    const double rho = cfg.linear.pathloss_ref;
    const double peak =
        rho * rho * gains.sense[i] * cfg.linear.tx_power * gains.target_norm2[i] / (tau * cfg.linear.noise_echo);
    return std::pow(peak, 1.0 / cfg.pathloss_exp_comm);
}

Trajectory TrajProblem::trajectory(const Eigen::VectorXd &x, const Trajectory &prev) const
{
    Trajectory t = prev;
    for (int s = 2; s <= movable + 1; ++s)
    {
        auto &p = t[static_cast<std::size_t>(s - 1)];
        p.x = x[pos_index(s)];
        p.y = x[pos_index(s) + 1];
    }
    return t;
}

TrajProblem build_traj_subproblem(const ScenarioConfig &cfg, const Trajectory &prev, const TrajGains &gains)
{
    const int S = static_cast<int>(prev.size());
    if (S != cfg.slots || S < 2)
        throw std::invalid_argument("build_traj_subproblem: trajectory length does not match the slot count");
    if (gains.psi1.size() != prev.size() || gains.psi2.size() != prev.size() || gains.sense.size() != prev.size() ||
        gains.target_norm2.size() != prev.size())
        throw std::invalid_argument("build_traj_subproblem: gains do not match the trajectory");

    const TrajExpansion ex = expansion_point(cfg, prev, gains);
    for (int s = 2; s <= S; ++s)
    {
        const auto i = static_cast<std::size_t>(s - 1);
        if (!(ex.zeta3[i] > 0.0) || !(ex.zeta4[i] > 0.0) || !(ex.zeta1[i] >= 0.0) || !(ex.zeta2[i] >= 0.0))
            throw std::invalid_argument("build_traj_subproblem: expansion slack not positive at slot " +
                                        std::to_string(s));
    }

    const int M = S - 1;
    const int n = 6 * M;
    TrajProblem tp{cvx::ConvexSubproblem(n), Eigen::VectorXd(n), M};
    const double h2 = cfg.altitude() * cfg.altitude();
    const double e = -4.0 / cfg.pathloss_exp_comm;
    const double D = cfg.max_step;
    const double inv_s = 1.0 / static_cast<double>(S);
    const double delta = 1e-3;
    const bool sensing = cfg.linear.sense_snr_min > 0.0;

    Eigen::VectorXd lin = Eigen::VectorXd::Zero(n);
    for (int s = 2; s <= S; ++s)
    {
        const auto i = static_cast<std::size_t>(s - 1);
        const Position3 &p0 = prev[i];
        const int ix = tp.pos_index(s), iy = ix + 1;
        const int z1 = tp.slack_index(s, 1), z2 = tp.slack_index(s, 2), z3 = tp.slack_index(s, 3),
                  z4 = tp.slack_index(s, 4);
        const double a1 = ex.zeta1[i], a2 = ex.zeta2[i];
        const std::string tag = " (slot " + std::to_string(s) + ")";

        // objective: -log2(1 + zeta1) + tangent of log2(1 + zeta2)
        tp.problem.add_objective_term({z1, inv_s / ln2, cvx::ScalarKind::neg_log, 1.0, a1, 1.0});
        lin[z2] = inv_s * a2 / (ln2 * (1.0 + a2));

        // zeta1 <= K1 zeta3^2, right side replaced by its tangent
        tp.problem.add_affine({{z1, 1.0}, {z3, -2.0}}, 1.0, "device gain slack" + tag);

        // d_ud^2 <= zeta3^(-4/kappa), right side replaced by its tangent
        {
            const double d0 = ex.d_ud[i] * ex.d_ud[i];
            cvx::Constraint c;
            c.label = "device distance" + tag;
            c.quad.push_back({ix, ix, 1.0 / d0});
            c.quad.push_back({iy, iy, 1.0 / d0});
            c.lin.push_back({ix, -2.0 * cfg.iot.x / d0});
            c.lin.push_back({iy, -2.0 * cfg.iot.y / d0});
            c.lin.push_back({z3, -e});
            c.constant = (cfg.iot.x * cfg.iot.x + cfg.iot.y * cfg.iot.y + h2) / d0 - 1.0 + e;
            tp.problem.add_constraint(c);
        }

        if (sensing)
        {
            // zeta2 >= floor(d_ut) with z4 = d_ut^2 / d_ut0^2: z4^(kappa/2) <= z2
            const double d0 = ex.d_ut[i] * ex.d_ut[i];
            cvx::Constraint c;
            c.label = "sensing floor" + tag;
            c.scalars.push_back({z4, 1.0, cvx::ScalarKind::power, cfg.pathloss_exp_comm / 2.0});
            c.lin.push_back({z2, -1.0});
            tp.problem.add_constraint(c);

            cvx::Constraint q;
            q.label = "target distance" + tag;
            q.quad.push_back({ix, ix, 1.0 / d0});
            q.quad.push_back({iy, iy, 1.0 / d0});
            q.lin.push_back({ix, -2.0 * cfg.ut.x / d0});
            q.lin.push_back({iy, -2.0 * cfg.ut.y / d0});
            q.lin.push_back({z4, -1.0});
            q.constant = (cfg.ut.x * cfg.ut.x + cfg.ut.y * cfg.ut.y + h2) / d0;
            tp.problem.add_constraint(q);
        }
        else
        {
            // K2 zeta4^2 <= zeta2
            cvx::Constraint c;
            c.label = "target gain slack" + tag;
            c.quad.push_back({z4, z4, 1.0});
            c.lin.push_back({z2, -1.0});
            tp.problem.add_constraint(c);

            // zeta4^(-4/kappa) <= d_ut^2, right side replaced by its tangent
            const double d0 = ex.d_ut[i] * ex.d_ut[i];
            const double ax = p0.x - cfg.ut.x, ay = p0.y - cfg.ut.y;
            cvx::Constraint t;
            t.label = "target distance" + tag;
            t.scalars.push_back({z4, 1.0, cvx::ScalarKind::power, e});
            t.lin.push_back({ix, -2.0 * ax / d0});
            t.lin.push_back({iy, -2.0 * ay / d0});
            t.constant = (2.0 * (ax * cfg.ut.x + ay * cfg.ut.y) + ax * ax + ay * ay - h2) / d0;
            tp.problem.add_constraint(t);
        }

        // echo threshold as a ball around the target
        const double r2 = sensing_radius_sq(cfg, gains, s);
        if (std::isfinite(r2))
        {
            if (!(r2 > h2))
                throw InfeasibleError("trajectory", s, "echo SNR constraint cannot be met at this altitude");
            cvx::Constraint c;
            c.label = "echo SNR" + tag;
            c.quad.push_back({ix, ix, 1.0 / r2});
            c.quad.push_back({iy, iy, 1.0 / r2});
            c.lin.push_back({ix, -2.0 * cfg.ut.x / r2});
            c.lin.push_back({iy, -2.0 * cfg.ut.y / r2});
            c.constant = (cfg.ut.x * cfg.ut.x + cfg.ut.y * cfg.ut.y + h2) / r2 - 1.0;
            tp.problem.add_constraint(c);
        }

        tp.problem.add_affine({{z1, -1.0}}, 0.0, "device slack sign" + tag);
        tp.problem.add_affine({{z2, 1.0}}, -1e6, "target slack cap" + tag);

        // mobility
        const double sc = 1.0 / (D * D);
        if (s == 2)
            tp.problem.add_ball({ix, iy}, {prev[0].x, prev[0].y}, D, "mobility" + tag, sc);
        else
            tp.problem.add_constraint(pair_ball(tp.pos_index(s - 1), ix, D, sc, "mobility" + tag));
        if (s == S)
            tp.problem.add_ball({ix, iy}, {cfg.uav_end.x, cfg.uav_end.y}, D, "final leg", sc);

        const double tr = cfg.trust_region;
        tp.problem.add_ball({ix, iy}, {p0.x, p0.y}, tr, "trust region" + tag, 1.0 / (tr * tr));

        tp.start[ix] = p0.x;
        tp.start[iy] = p0.y;
        tp.start[z1] = 1.0 - 3.0 * delta;
        tp.start[z2] = (1.0 + delta) * (1.0 + delta) + delta;
        tp.start[z3] = 1.0 - delta;
        tp.start[z4] = 1.0 + delta;
    }
    tp.problem.set_linear_objective(lin);
    return tp;
}

Trajectory solve_traj(const ScenarioConfig &cfg, const Trajectory &prev, const TrajGains &gains, TrajReport *report)
{
    TrajProblem tp = build_traj_subproblem(cfg, prev, gains);
    const cvx::SolveReport rep = cvx::solve(tp.problem, tp.start);
    const double before = frozen_objective(cfg, prev, gains);
    TrajReport r;
    r.status = rep.status;
    r.iterations = rep.iterations;
    r.objective_before = before;
    Trajectory out = prev;
    if (rep.status != cvx::SolveStatus::infeasible)
    {
        Trajectory cand = tp.trajectory(rep.x, prev);
        const double after = frozen_objective(cfg, cand, gains);
        if (after >= before && max_step_length(cfg, cand) <= cfg.max_step)
            out = std::move(cand);
    }
    r.objective_after = frozen_objective(cfg, out, gains);
    if (report)
        *report = r;
    return out;
}

} // namespace uavsec
