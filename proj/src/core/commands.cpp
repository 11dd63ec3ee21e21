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
#include "core/commands.hpp"

#include "core/csv.hpp"
#include "core/errors.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace uavsec
{

namespace
{

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    return out;
}

double to_double(const std::string &s)
{
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(s, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v))
        throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

double to_db(double v)
{
    return v > 0.0 ? 10.0 * std::log10(v) : -std::numeric_limits<double>::infinity();
}

ScenarioConfig load_scenario(const CommandOptions &opts)
{
    ScenarioConfig cfg = opts.config_path.empty() ? default_scenario() : load_config(opts.config_path);
    if (opts.seed)
        cfg.rng_seed = *opts.seed;
    validate(cfg);
    return cfg;
}

RunOptions run_options(const CommandOptions &opts)
{
    RunOptions ro;
    ro.max_outer_iters = opts.max_iters;
    return ro;
}

void write_infeasible(const std::string &dir, const ScenarioConfig &cfg, Scheme scheme, const std::string &why)
{
    nlohmann::ordered_json j;
    j["scheme"] = to_string(scheme);
    j["seed"] = cfg.rng_seed;
    j["status"] = "infeasible";
    j["r_sum"] = 0.0;
    j["iterations"] = 0;
    j["error"] = why;
    std::filesystem::create_directories(dir);
    write_file_atomic((std::filesystem::path(dir) / "summary.json").string(), j.dump(2) + "\n");
}

} // namespace

const char *to_string(SweepAxis a)
{
    switch (a)
    {
    case SweepAxis::power_dbm:
        return "power_dbm";
    case SweepAxis::sense_rate:
        return "sense_rate";
    case SweepAxis::slots:
        return "slots";
    }
    return "?";
}

SweepSpec parse_sweep(const std::string &text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("sweep must look like <axis>=<v1,v2,...>");
    const std::string axis = text.substr(0, eq);
    SweepSpec sp;
    if (axis == "power_dbm")
        sp.axis = SweepAxis::power_dbm;
    else if (axis == "sense_rate")
        sp.axis = SweepAxis::sense_rate;
    else if (axis == "slots")
        sp.axis = SweepAxis::slots;
    else
        throw std::invalid_argument("unknown sweep axis '" + axis + "' (power_dbm, sense_rate, slots)");
    for (const auto &v : split(text.substr(eq + 1), ','))
        sp.values.push_back(to_double(v));
    if (sp.values.empty())
        throw std::invalid_argument("sweep has no values");
    return sp;
}

std::vector<std::uint64_t> parse_seeds(const std::string &text)
{
    std::vector<std::uint64_t> out;
    for (const auto &s : split(text, ','))
    {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad seed '" + s + "'");
        out.push_back(std::stoull(s));
    }
    if (out.empty())
        throw std::invalid_argument("empty seed list");
    return out;
}

ScenarioConfig apply_axis(const ScenarioConfig &cfg, SweepAxis axis, double value)
{
    ScenarioConfig c = cfg;
    switch (axis)
    {
    case SweepAxis::power_dbm:
        c.tx_power_dbm = value;
        break;
    case SweepAxis::sense_rate:
        c.sense_rate_min = value;
        break;
    case SweepAxis::slots:
        if (value != std::floor(value) || value < 2 || value > 1e6)
            throw std::invalid_argument("slots sweep value must be an integer >= 2");
        c = with_slots(c, static_cast<int>(value));
        break;
    }
    validate(c);
    return c;
}

std::string run_status(const RunRecord &rec)
{
    if (rec.rolled_back)
        return "rolled_back";
    return rec.converged ? "converged" : "max_iters";
}

std::string convergence_csv(const RunRecord &rec)
{
    CsvWriter w({"iteration", "r_sum", "delta", "feas_residual"});
    for (const auto &r : rec.iterations)
        w.row(r.iteration, r.r_sum, r.delta, r.feas_residual);
    return w.text();
}

std::string timing_csv(const RunRecord &rec)
{
    CsvWriter w({"iteration", "ms_txbf", "ms_traj", "ms_rxbf"});
    for (const auto &r : rec.iterations)
        w.row(r.iteration, r.ms_txbf, r.ms_traj, r.ms_rxbf);
    return w.text();
}

std::string trajectory_csv(const Trajectory &traj)
{
    CsvWriter w({"slot", "x", "y", "z"});
    for (std::size_t s = 0; s < traj.size(); ++s)
        w.row(static_cast<int>(s + 1), traj[s].x, traj[s].y, traj[s].z);
    return w.text();
}

std::string metrics_csv(const MissionMetrics &m)
{
    CsvWriter w({"slot", "snr_ud_db", "snr_ut_db", "snr_echo_db", "secrecy"});
    for (std::size_t s = 0; s < m.slots.size(); ++s)
    {
        const SlotMetrics &x = m.slots[s];
        w.row(static_cast<int>(s + 1), to_db(x.snr_ud), to_db(x.snr_ut), to_db(x.snr_echo), x.secrecy);
    }
    return w.text();
}

std::string summary_json(const ScenarioConfig &cfg, Scheme scheme, const RunOutput &out)
{
    nlohmann::ordered_json j;
    j["scheme"] = to_string(scheme);
    j["seed"] = cfg.rng_seed;
    j["status"] = run_status(out.record);
    j["r_sum"] = out.metrics.r_sum;
    j["iterations"] = out.record.iterations.empty() ? 0 : static_cast<int>(out.record.iterations.size()) - 1;
    j["converged"] = out.record.converged;
    j["rolled_back"] = out.record.rolled_back;
    j["feas_residual"] = out.record.iterations.empty() ? 0.0 : out.record.iterations.back().feas_residual;
    j["slots"] = cfg.slots;
    j["tx_power_dbm"] = cfg.tx_power_dbm;
    j["sense_rate_min"] = cfg.sense_rate_min;
    j["min_distance_ut"] = min_distance(out.state.traj, cfg.ut);
    j["min_distance_iot"] = min_distance(out.state.traj, cfg.iot);
    j["max_step"] = max_step_length(cfg, out.state.traj);
    auto hist = nlohmann::ordered_json::array();
    for (const auto &r : out.record.iterations)
        hist.push_back(r.r_sum);
    j["r_sum_history"] = hist;
    return j.dump(2) + "\n";
}

void write_run_artifacts(const std::string &dir, const ScenarioConfig &cfg, Scheme scheme, const RunOutput &out,
                         const CommandOptions &opts)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create '" + dir + "': " + ec.message());
    const fs::path d(dir);
    write_file_atomic((d / "convergence.csv").string(), convergence_csv(out.record));
    write_file_atomic((d / "trajectory.csv").string(), trajectory_csv(out.state.traj));
    write_file_atomic((d / "metrics.csv").string(), metrics_csv(out.metrics));
    write_file_atomic((d / "summary.json").string(), summary_json(cfg, scheme, out));
    if (opts.timing)
        write_file_atomic((d / "timing.csv").string(), timing_csv(out.record));
    if (opts.dump_channels)
        write_channel_dump((d / "channels.csv").string(), out.channels);
}

int cmd_run(const CommandOptions &opts, std::ostream &log)
{
    ScenarioConfig cfg;
    Scheme scheme;
    try
    {
        cfg = load_scenario(opts);
        scheme = parse_scheme(opts.scheme);
    }
    catch (const std::exception &e)
    {
        log << "error: " << e.what() << "\n";
        return exit_io;
    }

    try
    {
        const RunOutput out = run(cfg, scheme, run_options(opts));
        write_run_artifacts(opts.out_dir, cfg, scheme, out, opts);
        if (!opts.quiet)
        {
            for (const auto &r : out.record.iterations)
                log << "iter " << r.iteration << "  R_sum " << format_number(r.r_sum) << "  delta "
                    << format_number(r.delta) << "\n";
            log << to_string(scheme) << ": R_sum " << format_number(out.metrics.r_sum) << " ("
                << run_status(out.record) << ")\n";
        }
        return exit_ok;
    }
    catch (const InfeasibleError &e)
    {
        log << "infeasible: " << e.what() << "\n";
        try
        {
            write_infeasible(opts.out_dir, cfg, scheme, e.what());
        }
        catch (const std::exception &io)
        {
            log << "error: " << io.what() << "\n";
            return exit_io;
        }
        return exit_infeasible;
    }
    catch (const std::exception &e)
    {
        log << "error: " << e.what() << "\n";
        return exit_io;
    }
}

int cmd_sweep(const CommandOptions &opts, const SweepSpec &sweep, std::ostream &log)
{
    struct Task
    {
        double value;
        std::uint64_t seed;
        Scheme scheme;
        ScenarioConfig cfg;
        std::string dir;
        double r_sum = 0.0;
        std::string status;
        std::string error;
    };

    std::vector<Task> tasks;
    try
    {
        const ScenarioConfig base = load_scenario(opts);
        std::vector<std::uint64_t> seeds = sweep.seeds;
        if (seeds.empty())
            seeds.push_back(base.rng_seed);
        const Scheme schemes[] = {Scheme::mrt_fixed_traj, Scheme::opt_bf_fixed_traj, Scheme::proposed};
        for (double v : sweep.values)
        {
            for (std::uint64_t seed : seeds)
            {
                ScenarioConfig c = base;
                c.rng_seed = seed;
                c = apply_axis(c, sweep.axis, v);
                for (Scheme sch : schemes)
                {
                    const std::filesystem::path dir = std::filesystem::path(opts.out_dir) /
                                                      (std::string(to_string(sweep.axis)) + "=" + format_number(v)) /
                                                      ("seed=" + std::to_string(seed)) / to_string(sch);
                    tasks.push_back({v, seed, sch, c, dir.string(), 0.0, {}, {}});
                }
            }
        }
    }
    catch (const std::exception &e)
    {
        log << "error: " << e.what() << "\n";
        return exit_io;
    }

    std::mutex log_mu;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    auto worker = [&]() {
        for (std::size_t k = next++; k < tasks.size(); k = next++)
        {
            Task &t = tasks[k];
            try
            {
                const RunOutput out = run(t.cfg, t.scheme, run_options(opts));
                write_run_artifacts(t.dir, t.cfg, t.scheme, out, opts);
                t.r_sum = out.metrics.r_sum;
                t.status = run_status(out.record);
            }
            catch (const InfeasibleError &e)
            {
                t.r_sum = 0.0;
                t.status = "infeasible";
                try
                {
                    write_infeasible(t.dir, t.cfg, t.scheme, e.what());
                }
                catch (const std::exception &io)
                {
                    t.error = io.what();
                }
            }
            catch (const std::exception &e)
            {
                t.status = "error";
                t.error = e.what();
            }
            const std::size_t n = ++done;
            if (!opts.quiet || !t.error.empty())
            {
                std::lock_guard<std::mutex> lk(log_mu);
                log << "[" << n << "/" << tasks.size() << "] " << to_string(sweep.axis) << "="
                    << format_number(t.value) << " seed=" << t.seed << " " << to_string(t.scheme) << ": ";
                if (t.error.empty())
                    log << "R_sum " << format_number(t.r_sum) << " (" << t.status << ")\n";
                else
                    log << "error: " << t.error << "\n";
            }
        }
    };

    const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j)
        pool.emplace_back(worker);
    worker();
    for (auto &th : pool)
        th.join();

    CsvWriter w({"axis", "value", "seed", "scheme", "r_sum", "status"});
    bool io_failed = false;
    for (const Task &t : tasks)
    {
        io_failed = io_failed || !t.error.empty();
        w.row(to_string(sweep.axis), t.value, std::to_string(t.seed), to_string(t.scheme), t.r_sum, t.status);
    }
    try
    {
        w.write_atomic((std::filesystem::path(opts.out_dir) / "sweep.csv").string());
    }
    catch (const std::exception &e)
    {
        log << "error: " << e.what() << "\n";
        return exit_io;
    }
    return io_failed ? exit_io : exit_ok;
}

} // namespace uavsec
