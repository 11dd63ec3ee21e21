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
#include "core/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace uavsec;

namespace
{

std::string temp_file(const std::string &name, const std::string &text)
{
    const auto p = std::filesystem::temp_directory_path() / ("uavsec_" + name);
    std::ofstream(p) << text;
    return p.string();
}

} // namespace

TEST_CASE("empty file gives the default table")
{
    const ScenarioConfig c = load_config(temp_file("empty.cfg", ""));
    CHECK(c.n_tx == 16);
    CHECK(c.n_rx == 8);
    CHECK(c.slots == 50);
    CHECK(c.slot_len == 0.6);
    CHECK(c.tx_power_dbm == 30.0);
    CHECK(c.linear.tx_power == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("default positions and exponents")
{
    const ScenarioConfig c = default_scenario();
    CHECK(c.iot == Position3{10, 20, 0});
    CHECK(c.ut == Position3{30, 30, 0});
    CHECK(c.uav_start == Position3{0, 0, 15});
    CHECK(c.uav_end == Position3{60, 30, 15});
    CHECK(c.pathloss_exp_comm == 3.1);
    CHECK(c.pathloss_exp_sense == 1.5);
    CHECK(c.rician_ud_db == 15.0);
    CHECK(c.rician_ut_db == 5.0);
    CHECK(c.max_speed == 50.0);
}

TEST_CASE("horizon must equal slots times slot length")
{
    CHECK_NOTHROW(parse_config("slots = 50\nslot_len = 0.6\nhorizon = 30\n"));
    try
    {
        parse_config("slots = 50\nslot_len = 0.6\nhorizon = 20\n");
        FAIL("expected a validation error");
    }
    catch (const ValidationError &e)
    {
        const std::string msg = e.what();
        CHECK(msg.find("20") != std::string::npos);
        CHECK(msg.find("30") != std::string::npos);
    }
}

TEST_CASE("schema errors carry the key")
{
    try
    {
        parse_config("no_such_key = 1\n");
        FAIL("expected a schema error");
    }
    catch (const SchemaError &e)
    {
        CHECK(e.key() == "no_such_key");
    }
    CHECK_THROWS_AS(parse_config("n_tx = sixteen\n"), SchemaError);
    CHECK_THROWS_AS(parse_config("n_tx = 0\n"), ValidationError);
}

TEST_CASE("comments and whitespace are ignored")
{
    const ScenarioConfig c = parse_config("# header\n  tx_power_dbm   =  33   # boosted\n\n");
    CHECK(c.tx_power_dbm == 33.0);
    CHECK(c.linear.tx_power == doctest::Approx(std::pow(10.0, 0.3)).epsilon(1e-14));
}

TEST_CASE("dBm conversion")
{
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(dbm_to_watts(-80.0) == doctest::Approx(1e-11).epsilon(1e-14));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ud(-200.0, 60.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double p = ud(rng);
        CHECK(std::abs(watts_to_dbm(dbm_to_watts(p)) - p) <= 1e-12 * std::max(1.0, std::abs(p)));
    }
}

TEST_CASE("mission longer than S * D is rejected")
{
    ScenarioConfig c = default_scenario();
    c.uav_end = {2000.0, 0.0, 15.0};
    CHECK_THROWS_AS(validate(c), ValidationError);
}

TEST_CASE("altitude is fixed")
{
    ScenarioConfig c = default_scenario();
    c.uav_end.z = 20.0;
    CHECK_THROWS_AS(validate(c), ValidationError);
}

TEST_CASE("config text round-trips")
{
    ScenarioConfig c = default_scenario();
    c.tx_power_dbm = 31.5;
    c.sense_rate_min = 7.25;
    c.rng_seed = 123456789012345ULL;
    c.ut = {31.0, 29.5, 0.0};
    validate(c);
    const ScenarioConfig r = parse_config(to_config_text(c));
    CHECK(r.tx_power_dbm == c.tx_power_dbm);
    CHECK(r.sense_rate_min == c.sense_rate_min);
    CHECK(r.rng_seed == c.rng_seed);
    CHECK(r.ut == c.ut);
    CHECK(to_config_text(r) == to_config_text(c));
}

TEST_CASE("timeline is contiguous and 1-based")
{
    const Timeline t = timeline(default_scenario());
    const auto idx = t.slot_indices();
    REQUIRE(idx.size() == 50);
    for (std::size_t i = 0; i < idx.size(); ++i)
        CHECK(idx[i] == static_cast<int>(i) + 1);
    CHECK(t.slot_start_time(1) == 0.0);
    CHECK(t.slot_start_time(50) == doctest::Approx(29.4));
}

TEST_CASE("with_slots keeps the horizon")
{
    ScenarioConfig c = default_scenario();
    validate(c);
    const ScenarioConfig s = with_slots(c, 10);
    CHECK(s.slots == 10);
    CHECK(s.slots * s.slot_len == doctest::Approx(c.horizon));
    CHECK(s.max_step == doctest::Approx(s.max_speed * s.slot_len));
}

TEST_CASE("sensing threshold is 2^gamma - 1")
{
    ScenarioConfig c = default_scenario();
    c.sense_rate_min = 0.0;
    validate(c);
    CHECK(c.linear.sense_snr_min == 0.0);
    c.sense_rate_min = 15.0;
    validate(c);
    CHECK(c.linear.sense_snr_min == 32767.0);
}
