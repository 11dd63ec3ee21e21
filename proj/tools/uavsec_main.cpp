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
#include "uavsec/uavsec.h"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

int main(int argc, char **argv)
{
    CLI::App app{"Secrecy-rate optimization for a sensing UAV transmitter"};
    app.set_version_flag("--version", std::string(uavsec_version()));

    std::string config, out_dir = "out", scheme = "proposed", sweep, seeds;
    std::uint64_t seed = 0;
    int max_iters = -1, jobs = 1;
    bool quiet = false, timing = false, dump = false;

    app.add_option("--config", config, "scenario file (key = value lines)")->check(CLI::ExistingFile);
    auto *seed_opt = app.add_option("--seed", seed, "fading seed (overrides rng_seed)");
    app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    app.add_option("--scheme", scheme, "proposed | opt-bf-fixed-traj | mrt-fixed-traj")
        ->capture_default_str()
        ->check(CLI::IsMember({"proposed", "opt-bf-fixed-traj", "mrt-fixed-traj"}));
    app.add_option("--sweep", sweep, "<axis>=<v1,v2,...>; axis is power_dbm, sense_rate or slots");
    app.add_option("--seeds", seeds, "comma-separated seeds for --sweep");
    app.add_option("--max-iters", max_iters, "outer iteration cap (default from config)");
    app.add_option("--jobs", jobs, "parallel sweep points")->check(CLI::PositiveNumber);
    app.add_flag("--quiet", quiet, "no progress output");
    app.add_flag("--timing", timing, "also write timing.csv (wall clock, not reproducible)");
    app.add_flag("--dump-channels", dump, "also write channels.csv");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? 0 : 1;
    }
    if (!seeds.empty() && sweep.empty())
    {
        std::fprintf(stderr, "error: --seeds requires --sweep\n");
        return 1;
    }

    uavsec_cli_options o{};
    o.config_path = config.c_str();
    o.has_seed = seed_opt->count() > 0;
    o.seed = seed;
    o.out_dir = out_dir.c_str();
    o.scheme = scheme.c_str();
    o.max_iters = max_iters;
    o.jobs = jobs;
    o.quiet = quiet;
    o.timing = timing;
    o.dump_channels = dump;

    if (!sweep.empty())
        return uavsec_cmd_sweep(&o, sweep.c_str(), seeds.empty() ? nullptr : seeds.c_str());
    return uavsec_cmd_run(&o);
}
