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

#include "core/commands.hpp"
#include "core/errors.hpp"
#include "core/orchestrate.hpp"

#include <cstring>
#include <iostream>
#include <new>
#include <string>

struct uavsec_config
{
    uavsec::ScenarioConfig cfg;
};

struct uavsec_result
{
    uavsec::ScenarioConfig cfg;
    uavsec::Scheme scheme;
    uavsec::RunOutput out;
};

namespace
{

thread_local std::string last_error;

uavsec_status fail(uavsec_status s, const std::string &msg)
{
    last_error = msg;
    return s;
}

// Maps the exception in flight to a status code.
uavsec_status translate()
{
    try
    {
        throw;
    }
    catch (const uavsec::SchemaError &e)
    {
        return fail(UAVSEC_ERR_SCHEMA, e.what());
    }
    catch (const uavsec::ValidationError &e)
    {
        return fail(UAVSEC_ERR_VALIDATION, e.what());
    }
    catch (const uavsec::InfeasibleError &e)
    {
        return fail(UAVSEC_ERR_INFEASIBLE, e.what());
    }
    catch (const std::invalid_argument &e)
    {
        return fail(UAVSEC_ERR_ARGUMENT, e.what());
    }
    catch (const std::bad_alloc &)
    {
        return fail(UAVSEC_ERR_INTERNAL, "out of memory");
    }
    catch (const std::ios_base::failure &e)
    {
        return fail(UAVSEC_ERR_IO, e.what());
    }
    catch (const std::runtime_error &e)
    {
        return fail(UAVSEC_ERR_IO, e.what());
    }
    catch (const std::exception &e)
    {
        return fail(UAVSEC_ERR_INTERNAL, e.what());
    }
    catch (...)
    {
        return fail(UAVSEC_ERR_INTERNAL, "unknown error");
    }
}

template <typename F>
uavsec_status guarded(F &&f)
{
    try
    {
        f();
        last_error.clear();
        return UAVSEC_OK;
    }
    catch (...)
    {
        return translate();
    }
}

uavsec_status slot_check(const uavsec_result *res, int slot)
{
    if (!res)
        return fail(UAVSEC_ERR_ARGUMENT, "null result");
    if (slot < 1 || slot > static_cast<int>(res->out.state.traj.size()))
        return fail(UAVSEC_ERR_ARGUMENT, "slot " + std::to_string(slot) + " out of range");
    return UAVSEC_OK;
}

uavsec::CommandOptions command_options(const uavsec_cli_options *o)
{
    uavsec::CommandOptions c;
    if (o->config_path)
        c.config_path = o->config_path;
    if (o->has_seed)
        c.seed = o->seed;
    if (o->out_dir)
        c.out_dir = o->out_dir;
    if (o->scheme)
        c.scheme = o->scheme;
    c.max_iters = o->max_iters;
    c.jobs = o->jobs;
    c.quiet = o->quiet != 0;
    c.timing = o->timing != 0;
    c.dump_channels = o->dump_channels != 0;
    return c;
}

} // namespace

extern "C" {

const char *uavsec_version(void)
{
    return "1.0.0";
}

const char *uavsec_last_error(void)
{
    return last_error.c_str();
}

uavsec_status uavsec_config_default(uavsec_config **out)
{
    if (!out)
        return fail(UAVSEC_ERR_ARGUMENT, "null output pointer");
    *out = nullptr;
    return guarded([&] {
        auto c = new uavsec_config{uavsec::default_scenario()};
        uavsec::validate(c->cfg);
        *out = c;
    });
}

uavsec_status uavsec_config_load(const char *path, uavsec_config **out)
{
    if (!path || !out)
        return fail(UAVSEC_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new uavsec_config{uavsec::load_config(path)}; });
}

uavsec_status uavsec_config_parse(const char *text, uavsec_config **out)
{
    if (!text || !out)
        return fail(UAVSEC_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new uavsec_config{uavsec::parse_config(text)}; });
}

uavsec_status uavsec_config_set(uavsec_config *cfg, const char *key, const char *value)
{
    if (!cfg || !key || !value)
        return fail(UAVSEC_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        uavsec::ScenarioConfig c = cfg->cfg;
        uavsec::apply_setting(c, key, value);
        uavsec::validate(c);
        cfg->cfg = c;
    });
}

uavsec_status uavsec_config_text(const uavsec_config *cfg, char *buf, size_t cap, size_t *needed)
{
    if (!cfg)
        return fail(UAVSEC_ERR_ARGUMENT, "null config");
    std::string text;
    const uavsec_status s = guarded([&] { text = uavsec::to_config_text(cfg->cfg); });
    if (s != UAVSEC_OK)
        return s;
    if (needed)
        *needed = text.size() + 1;
    if (buf && cap > 0)
    {
        const size_t n = std::min(cap - 1, text.size());
        std::memcpy(buf, text.data(), n);
        buf[n] = '\0';
        if (n < text.size())
            return fail(UAVSEC_ERR_ARGUMENT, "buffer too small");
    }
    return UAVSEC_OK;
}

void uavsec_config_free(uavsec_config *cfg)
{
    delete cfg;
}

uavsec_status uavsec_run(const uavsec_config *cfg, const char *scheme, int max_iters, uavsec_result **out)
{
    if (!cfg || !out)
        return fail(UAVSEC_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        const uavsec::Scheme sch = uavsec::parse_scheme(scheme ? scheme : "proposed");
        uavsec::RunOptions ro;
        ro.max_outer_iters = max_iters;
        auto r = new uavsec_result{cfg->cfg, sch, uavsec::run(cfg->cfg, sch, ro)};
        *out = r;
    });
}

uavsec_status uavsec_result_summary(const uavsec_result *res, uavsec_summary *out)
{
    if (!res || !out)
        return fail(UAVSEC_ERR_ARGUMENT, "null argument");
    const auto &rec = res->out.record;
    out->r_sum = res->out.metrics.r_sum;
    out->iterations = rec.iterations.empty() ? 0 : static_cast<int>(rec.iterations.size()) - 1;
    out->converged = rec.converged ? 1 : 0;
    out->rolled_back = rec.rolled_back ? 1 : 0;
    out->slots = static_cast<int>(res->out.state.traj.size());
    out->feas_residual = rec.iterations.empty() ? 0.0 : rec.iterations.back().feas_residual;
    out->min_distance_ut = uavsec::min_distance(res->out.state.traj, res->cfg.ut);
    out->min_distance_iot = uavsec::min_distance(res->out.state.traj, res->cfg.iot);
    return UAVSEC_OK;
}

uavsec_status uavsec_result_waypoint(const uavsec_result *res, int slot, double xyz[3])
{
    if (const uavsec_status s = slot_check(res, slot); s != UAVSEC_OK)
        return s;
    if (!xyz)
        return fail(UAVSEC_ERR_ARGUMENT, "null output");
    const auto &p = res->out.state.traj[static_cast<std::size_t>(slot - 1)];
    xyz[0] = p.x;
    xyz[1] = p.y;
    xyz[2] = p.z;
    return UAVSEC_OK;
}

uavsec_status uavsec_result_slot_metrics(const uavsec_result *res, int slot, uavsec_slot_metrics *out)
{
    if (const uavsec_status s = slot_check(res, slot); s != UAVSEC_OK)
        return s;
    if (!out)
        return fail(UAVSEC_ERR_ARGUMENT, "null output");
    const auto &m = res->out.metrics.slots[static_cast<std::size_t>(slot - 1)];
    out->snr_ud = m.snr_ud;
    out->snr_ut = m.snr_ut;
    out->snr_echo = m.snr_echo;
    out->secrecy = m.secrecy;
    return UAVSEC_OK;
}

uavsec_status uavsec_result_history(const uavsec_result *res, int k, double *r_sum)
{
    if (!res || !r_sum)
        return fail(UAVSEC_ERR_ARGUMENT, "null argument");
    const auto &it = res->out.record.iterations;
    if (k < 0 || k >= static_cast<int>(it.size()))
        return fail(UAVSEC_ERR_ARGUMENT, "iteration " + std::to_string(k) + " out of range");
    *r_sum = it[static_cast<std::size_t>(k)].r_sum;
    return UAVSEC_OK;
}

uavsec_status uavsec_result_write(const uavsec_result *res, const char *out_dir)
{
    if (!res || !out_dir)
        return fail(UAVSEC_ERR_ARGUMENT, "null argument");
    return guarded([&] { uavsec::write_run_artifacts(out_dir, res->cfg, res->scheme, res->out, {}); });
}

void uavsec_result_free(uavsec_result *res)
{
    delete res;
}

int uavsec_cmd_run(const uavsec_cli_options *opts)
{
    if (!opts)
        return uavsec::exit_io;
    try
    {
        return uavsec::cmd_run(command_options(opts), std::cerr);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return uavsec::exit_io;
    }
}

int uavsec_cmd_sweep(const uavsec_cli_options *opts, const char *sweep, const char *seeds)
{
    if (!opts || !sweep)
        return uavsec::exit_io;
    try
    {
        uavsec::SweepSpec sp = uavsec::parse_sweep(sweep);
        if (seeds && *seeds)
            sp.seeds = uavsec::parse_seeds(seeds);
        return uavsec::cmd_sweep(command_options(opts), sp, std::cerr);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return uavsec::exit_io;
    }
}

} // extern "C"
