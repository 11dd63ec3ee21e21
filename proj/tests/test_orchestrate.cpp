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
#include "core/orchestrate.hpp"

#include <cmath>
#include <cstring>

using namespace uavsec;

namespace
{

ScenarioConfig small_config()
{
    ScenarioConfig c = default_scenario();
    c.n_tx = 4;
    c.n_rx = 2;
    c.sense_rate_min = 8.0;
    c = with_slots(c, 10);
    c.max_outer_iters = 8;
    validate(c);
    return c;
}

} // namespace

TEST_CASE("scheme labels")
{
    CHECK(parse_scheme("proposed") == Scheme::proposed);
    CHECK(parse_scheme("opt-bf-fixed-traj") == Scheme::opt_bf_fixed_traj);
    CHECK(parse_scheme("mrt-fixed-traj") == Scheme::mrt_fixed_traj);
    CHECK(std::strcmp(to_string(Scheme::opt_bf_fixed_traj), "opt-bf-fixed-traj") == 0);
    CHECK_THROWS_AS(parse_scheme("greedy"), std::invalid_argument);
}

TEST_CASE("initial state")
{
    const ScenarioConfig cfg = default_scenario();
    const Trajectory line = straight_line(cfg);
    const auto channels = realize_channels(cfg, line, draw_mission_fading(cfg));
    const DesignState st = initialize(cfg, channels);
    CHECK(max_step_length(cfg, st.traj) == doctest::Approx(std::hypot(60.0, 30.0) / 49.0).epsilon(1e-12));
    CHECK(feasibility_residual(cfg, st, channels) <= 1e-9);
    for (std::size_t s = 0; s < st.w.size(); ++s)
    {
        CHECK(st.w[s].squaredNorm() <= cfg.linear.tx_power * (1.0 + 1e-8));
        CHECK(std::abs(st.u[s].norm() - 1.0) < 1e-12);
    }

    const ScenarioConfig two = with_slots(default_scenario(), 2);
    const Trajectory t2 = straight_line(two);
    REQUIRE(t2.size() == 2u);
    CHECK(t2[0].x == two.uav_start.x);
    CHECK(t2[1].x == two.uav_end.x);
    CHECK(t2[1].y == two.uav_end.y);
}

TEST_CASE("loose tolerance stops after one iteration")
{
    ScenarioConfig cfg = small_config();
    cfg.conv_tol = 1e9;
    const RunOutput out = run(cfg, Scheme::proposed);
    CHECK(out.record.iterations.size() == 2u);
    CHECK(out.record.converged);
    CHECK_FALSE(out.record.rolled_back);
}

TEST_CASE("zero iterations keeps the initial design")
{
    const ScenarioConfig cfg = small_config();
    RunOptions o;
    o.max_outer_iters = 0;
    const RunOutput out = run(cfg, Scheme::proposed, o);
    CHECK(out.record.iterations.size() == 1u);
    CHECK_FALSE(out.record.converged);
    CHECK(out.metrics.r_sum == doctest::Approx(out.record.iterations[0].r_sum).epsilon(1e-12));
}

TEST_CASE("proposed run is monotone, feasible and deterministic")
{
    const ScenarioConfig cfg = small_config();
    const RunOutput a = run(cfg, Scheme::proposed);
    const RunOutput b = run(cfg, Scheme::proposed);
    REQUIRE(a.record.iterations.size() >= 2u);
    for (std::size_t k = 1; k < a.record.iterations.size(); ++k)
    {
        const auto &r = a.record.iterations[k];
        CHECK(r.r_sum >= a.record.iterations[k - 1].r_sum - 1e-6);
        CHECK(r.feas_residual <= 1e-6);
        CHECK(r.ms_txbf >= 0.0);
        CHECK(r.ms_traj >= 0.0);
        CHECK(r.ms_rxbf >= 0.0);
        CHECK(r.delta_txbf + r.delta_traj + r.delta_rxbf == doctest::Approx(r.delta).epsilon(1e-9));
    }
    CHECK(a.metrics.r_sum == doctest::Approx(a.record.iterations.back().r_sum).epsilon(1e-10));
    CHECK(max_step_length(cfg, a.state.traj) <= cfg.max_step + 1e-9);

    REQUIRE(a.record.iterations.size() == b.record.iterations.size());
    for (std::size_t k = 0; k < a.record.iterations.size(); ++k)
        CHECK(a.record.iterations[k].r_sum == b.record.iterations[k].r_sum);
    for (std::size_t s = 0; s < a.state.traj.size(); ++s)
    {
        CHECK(a.state.traj[s].x == b.state.traj[s].x);
        CHECK(a.state.traj[s].y == b.state.traj[s].y);
    }
}

TEST_CASE("scheme ordering")
{
    const ScenarioConfig cfg = small_config();
    const double mrt = run(cfg, Scheme::mrt_fixed_traj).metrics.r_sum;
    const RunOutput opt = run(cfg, Scheme::opt_bf_fixed_traj);
    const double prop = run(cfg, Scheme::proposed).metrics.r_sum;
    CHECK(opt.metrics.r_sum >= mrt - 1e-9);
    CHECK(prop >= opt.metrics.r_sum - 1e-9);
    // fixed-trajectory scheme never moves the UAV
    const Trajectory line = straight_line(cfg);
    for (std::size_t s = 0; s < line.size(); ++s)
        CHECK(opt.state.traj[s].x == line[s].x);
}

TEST_CASE("array sizes")
{
    for (int nt : {4, 8, 16})
    {
        ScenarioConfig cfg = small_config();
        cfg.n_tx = nt;
        cfg.max_outer_iters = 2;
        validate(cfg);
        const RunOutput out = run(cfg, Scheme::opt_bf_fixed_traj);
        REQUIRE(out.state.w.size() == 10u);
        CHECK(out.state.w[0].size() == nt);
        CHECK(out.metrics.r_sum >= out.record.iterations[0].r_sum - 1e-9);
    }
}

TEST_CASE("unreachable sensing threshold is infeasible")
{
    ScenarioConfig cfg = small_config();
    cfg.sense_rate_min = 60.0;
    validate(cfg);
    CHECK_THROWS_AS(run(cfg, Scheme::proposed), InfeasibleError);
}
