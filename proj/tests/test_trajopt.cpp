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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/errors.hpp"
#include "core/metrics.hpp"
#include "core/orchestrate.hpp"
#include "core/trajopt.hpp"

#include <cmath>
#include <random>

using namespace uavsec;
using cd = std::complex<double>;

namespace
{

// Two slots, everything on the x axis; only slot 2 moves.
ScenarioConfig line_config(double gamma)
{
    ScenarioConfig c = default_scenario();
    c.uav_start = {0.0, 0.0, 15.0};
    c.uav_end = {100.0, 0.0, 15.0};
    c.iot = {30.0, 0.0, 0.0};
    c.ut = {-40.0, 0.0, 0.0};
    c.sense_rate_min = gamma;
    c = with_slots(c, 2);
    c.trust_region = 25.0;
    validate(c);
    return c;
}

TrajGains flat_gains(int slots, cd psi1, cd psi2, double sense, double target)
{
    TrajGains g;
    for (int s = 0; s < slots; ++s)
    {
        g.psi1.push_back(psi1);
        g.psi2.push_back(psi2);
        g.sense.push_back(sense);
        g.target_norm2.push_back(target);
    }
    return g;
}

Trajectory converge(const ScenarioConfig &cfg, Trajectory t, const TrajGains &g, int passes = 200)
{
    for (int k = 0; k < passes; ++k)
    {
        Trajectory next = solve_traj(cfg, t, g);
        const double moved = std::hypot(next[1].x - t[1].x, next[1].y - t[1].y);
        t = std::move(next);
        if (moved < 1e-9)
            break;
    }
    return t;
}

// exhaustive search of the frozen objective along the axis
double grid_argmax(const ScenarioConfig &cfg, const TrajGains &g, double lo, double hi)
{
    Trajectory t = straight_line(cfg);
    double best = -1e300, arg = lo;
    for (int zoom = 0; zoom < 4; ++zoom)
    {
        const double step = (hi - lo) / 2000.0;
        for (int k = 0; k <= 2000; ++k)
        {
            t[1].x = lo + step * k;
            t[1].y = 0.0;
            const double v = frozen_objective(cfg, t, g);
            if (v > best)
                best = v, arg = t[1].x;
        }
        lo = arg - 5.0 * step;
        hi = arg + 5.0 * step;
    }
    return arg;
}

struct Fixture
{
    ScenarioConfig cfg;
    std::vector<FadingDraw> fading;
    std::vector<ChannelSlot> channels;
    DesignState st;
    TrajGains gains;

    explicit Fixture(ScenarioConfig c) : cfg(std::move(c))
    {
        fading = draw_mission_fading(cfg);
        const Trajectory line = straight_line(cfg);
        channels = realize_channels(cfg, line, fading);
        st = initialize(cfg, channels);
        gains = freeze_gains(channels, st.w, st.u);
    }
};

} // namespace

TEST_CASE("distance factors")
{
    const ScenarioConfig cfg = default_scenario();
    Trajectory t = straight_line(cfg);
    t[0] = {cfg.iot.x, cfg.iot.y, 15.0};
    auto [dud, dut] = distance_factors(t, cfg, 1);
    CHECK(dud == doctest::Approx(15.0).epsilon(1e-14));
    CHECK(dut == doctest::Approx(std::sqrt(400.0 + 100.0 + 225.0)).epsilon(1e-14));

    t = straight_line(cfg);
    std::tie(dud, dut) = distance_factors(t, cfg, 1);
    CHECK(dut == doctest::Approx(std::sqrt(900.0 + 900.0 + 225.0)).epsilon(1e-14));
    CHECK(dud == doctest::Approx(std::sqrt(100.0 + 400.0 + 225.0)).epsilon(1e-14));
    CHECK_THROWS_AS(distance_factors(t, cfg, 0), std::out_of_range);
    CHECK_THROWS_AS(distance_factors(t, cfg, cfg.slots + 1), std::out_of_range);
}

TEST_CASE("straight line meets the mobility limit and the endpoints")
{
    const ScenarioConfig cfg = default_scenario();
    const Trajectory t = straight_line(cfg);
    REQUIRE(t.size() == 50u);
    CHECK(t.front().x == cfg.uav_start.x);
    CHECK(t.back().x == doctest::Approx(cfg.uav_end.x));
    CHECK(max_step_length(cfg, t) == doctest::Approx(std::hypot(60.0, 30.0) / 49.0));
    CHECK(min_distance(t, cfg.iot) > 15.0 - 1e-12);
}

TEST_CASE("frozen gains match the metric evaluation")
{
    Fixture f(default_scenario());
    const TrajExpansion ex = expansion_point(f.cfg, f.st.traj, f.gains);
    for (int s = 0; s < f.cfg.slots; s += 7)
    {
        const auto i = static_cast<std::size_t>(s);
        const double snr = snr_device(f.channels[i], f.st.w[i], f.cfg.linear.noise_dev);
        CHECK(ex.zeta1[i] == doctest::Approx(snr).epsilon(1e-10));
        // the sensing floor never exceeds the actual eavesdropper SNR when the echo holds with margin
        const double eve = snr_eve(f.channels[i], f.st.w[i], f.cfg.linear.noise_eve);
        const double echo = snr_echo(f.channels[i], f.st.w[i], f.st.u[i], f.cfg.linear.noise_echo);
        const double ratio = echo / f.cfg.linear.sense_snr_min;
        CHECK(ex.zeta2[i] * ratio == doctest::Approx(eve).epsilon(1e-8));
    }
}

TEST_CASE("orthogonal beam leaves the objective constant")
{
    ScenarioConfig cfg = line_config(0.0);
    const TrajGains g = flat_gains(2, 0.0, 0.0, 1.0, 1.0);
    Trajectory t = straight_line(cfg);
    const double v0 = frozen_objective(cfg, t, g);
    t[1].x = 37.0;
    t[1].y = -12.0;
    CHECK(frozen_objective(cfg, t, g) == v0);
    CHECK(v0 == 0.0);
}

TEST_CASE("gain scaling")
{
    Fixture f(default_scenario());
    std::vector<Eigen::VectorXcd> w2 = f.st.w;
    for (auto &v : w2)
        v *= 3.0;
    const TrajGains g2 = freeze_gains(f.channels, w2, f.st.u);
    for (std::size_t i = 0; i < g2.psi1.size(); ++i)
    {
        CHECK(std::norm(g2.psi1[i]) == doctest::Approx(9.0 * std::norm(f.gains.psi1[i])).epsilon(1e-12));
        CHECK(std::norm(g2.psi2[i]) == doctest::Approx(9.0 * std::norm(f.gains.psi2[i])).epsilon(1e-12));
        CHECK(g2.sense[i] == f.gains.sense[i]);
    }
}

TEST_CASE("subproblem start is strictly feasible")
{
    for (double gamma : {0.0, 5.0, 15.0})
    {
        ScenarioConfig c = default_scenario();
        c.sense_rate_min = gamma;
        validate(c);
        Fixture f(c);
        const TrajProblem tp = build_traj_subproblem(f.cfg, f.st.traj, f.gains);
        CHECK(tp.movable == f.cfg.slots - 1);
        CHECK(tp.problem.in_domain(tp.start));
        CHECK(tp.problem.max_violation(tp.start) <= 0.0);
    }
}

TEST_CASE("feasible points of the subproblem are conservative")
{
    // any feasible (p, zeta) gives a device SNR no larger and an eavesdropper SNR
    // no smaller than the frozen model at p
    for (double gamma : {0.0, 2.0})
    {
        const ScenarioConfig cfg = line_config(gamma);
        const TrajGains g = flat_gains(2, {3.0, 1.0}, {0.5, -1.0}, 2.0, 16.0);
        Trajectory prev = straight_line(cfg);
        prev[1] = {55.0, 4.0, 15.0};
        const TrajProblem tp = build_traj_subproblem(cfg, prev, g);
        const TrajExpansion ex = expansion_point(cfg, prev, g);
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> off(-20.0, 20.0), z(0.0, 3.0);
        int hits = 0;
        for (int k = 0; k < 400000 && hits < 500; ++k)
        {
            Eigen::VectorXd x = tp.start;
            x[tp.pos_index(2)] = prev[1].x + off(rng);
            x[tp.pos_index(2) + 1] = prev[1].y + off(rng);
            for (int j = 1; j <= 4; ++j)
                x[tp.slack_index(2, j)] = z(rng);
            if (tp.problem.max_violation(x) > 0.0)
                continue;
            ++hits;
            const Trajectory t = tp.trajectory(x, prev);
            const TrajExpansion at = expansion_point(cfg, t, g);
            CHECK(ex.zeta1[1] * x[tp.slack_index(2, 1)] <= at.zeta1[1] * (1.0 + 1e-10));
            CHECK(ex.zeta2[1] * x[tp.slack_index(2, 2)] >= at.zeta2[1] * (1.0 - 1e-10));
        }
        CHECK(hits == 500);
    }
}

TEST_CASE("one-dimensional toy matches a grid search")
{
    for (double gamma : {0.0, 1.0})
    {
        CAPTURE(gamma);
        const ScenarioConfig cfg = line_config(gamma);
        const TrajGains g = flat_gains(2, {4.0, 0.0}, {0.2, 0.0}, 1.0, 16.0);
        const Trajectory t = converge(cfg, straight_line(cfg), g);
        const double oracle = grid_argmax(cfg, g, -100.0, 200.0);
        CHECK(std::abs(t[1].x - oracle) < 0.05);
        CHECK(std::abs(t[1].y) < 0.05);

        // the converged point is a fixed point
        TrajReport rep;
        const Trajectory again = solve_traj(cfg, t, g, &rep);
        CHECK(std::hypot(again[1].x - t[1].x, again[1].y - t[1].y) < 1e-6);
        CHECK(rep.objective_after >= rep.objective_before);
    }
}

TEST_CASE("trajectory pass on the default scenario")
{
    for (double gamma : {0.0, 15.0})
    {
        CAPTURE(gamma);
        ScenarioConfig c = default_scenario();
        c.sense_rate_min = gamma;
        validate(c);
        Fixture f(c);
        TrajReport rep;
        const Trajectory t = solve_traj(f.cfg, f.st.traj, f.gains, &rep);
        CHECK(rep.objective_after >= rep.objective_before);
        CHECK(rep.objective_after > rep.objective_before + 1e-3);
        CHECK(max_step_length(f.cfg, t) <= f.cfg.max_step + 1e-6);
        CHECK(std::hypot(t.back().x - f.cfg.uav_end.x, t.back().y - f.cfg.uav_end.y) <= f.cfg.max_step + 1e-6);
        CHECK(t.front().x == f.cfg.uav_start.x);
        CHECK(t.front().y == f.cfg.uav_start.y);
        for (const auto &p : t)
            CHECK(p.z == f.cfg.altitude());
        if (gamma == 0.0)
        {
            double before = 0.0, after = 0.0;
            for (int s = 1; s <= f.cfg.slots; ++s)
            {
                before += distance_factors(f.st.traj, f.cfg, s).first;
                after += distance_factors(t, f.cfg, s).first;
            }
            CHECK(after < before);
        }
    }
}

TEST_CASE("echo ball that excludes the altitude is infeasible")
{
    ScenarioConfig cfg = line_config(0.0);
    cfg.sense_rate_min = 60.0;
    validate(cfg);
    const TrajGains g = flat_gains(2, {4.0, 0.0}, {2.0, 0.0}, 1.0, 16.0);
    CHECK_THROWS_AS(build_traj_subproblem(cfg, straight_line(cfg), g), InfeasibleError);
}

TEST_CASE("mismatched inputs are rejected")
{
    const ScenarioConfig cfg = line_config(0.0);
    const TrajGains g = flat_gains(3, 1.0, 1.0, 1.0, 1.0);
    CHECK_THROWS_AS(build_traj_subproblem(cfg, straight_line(cfg), g), std::invalid_argument);
}
