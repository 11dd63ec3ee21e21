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

#include "core/scenario.hpp"

#include "core/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace uavsec
{

namespace
{

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw SchemaError(key, "expected a number, got '" + t + "'");
    return v;
}

long long parse_int(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    long long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw SchemaError(key, "expected an integer, got '" + t + "'");
    return v;
}

Position3 parse_position(const std::string &key, const std::string &text)
{
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        parts.push_back(parse_double(key, item));
    if (parts.size() != 3)
        throw SchemaError(key, "expected 'x, y, z', got '" + trim(text) + "'");
    return {parts[0], parts[1], parts[2]};
}

std::string fmt(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct Field
{
    std::function<void(ScenarioConfig &, const std::string &, const std::string &)> set;
    std::function<std::string(const ScenarioConfig &)> get;
};

template <typename T>
Field real_field(T ScenarioConfig::*m)
{
    return {[m](ScenarioConfig &c, const std::string &k, const std::string &v) { c.*m = parse_double(k, v); },
            [m](const ScenarioConfig &c) { return fmt(c.*m); }};
}

template <typename T>
Field int_field(T ScenarioConfig::*m)
{
    return {[m](ScenarioConfig &c, const std::string &k, const std::string &v) {
                const long long x = parse_int(k, v);
                if constexpr (std::is_unsigned_v<T>)
                {
                    if (x < 0)
                        throw SchemaError(k, "must be non-negative");
                }
                c.*m = static_cast<T>(x);
            },
            [m](const ScenarioConfig &c) { return std::to_string(c.*m); }};
}

Field pos_field(Position3 ScenarioConfig::*m)
{
    return {[m](ScenarioConfig &c, const std::string &k, const std::string &v) { c.*m = parse_position(k, v); },
            [m](const ScenarioConfig &c) {
                const Position3 &p = c.*m;
                return fmt(p.x) + ", " + fmt(p.y) + ", " + fmt(p.z);
            }};
}

// Ordered as written by to_config_text.
const std::vector<std::pair<std::string, Field>> &fields()
{
    static const std::vector<std::pair<std::string, Field>> table = {
        {"n_tx", int_field(&ScenarioConfig::n_tx)},
        {"n_rx", int_field(&ScenarioConfig::n_rx)},
        {"horizon", real_field(&ScenarioConfig::horizon)},
        {"slots", int_field(&ScenarioConfig::slots)},
        {"slot_len", real_field(&ScenarioConfig::slot_len)},
        {"noise_dev_dbm", real_field(&ScenarioConfig::noise_dev_dbm)},
        {"noise_eve_dbm", real_field(&ScenarioConfig::noise_eve_dbm)},
        {"noise_echo_dbm", real_field(&ScenarioConfig::noise_echo_dbm)},
        {"rician_ud_db", real_field(&ScenarioConfig::rician_ud_db)},
        {"rician_ut_db", real_field(&ScenarioConfig::rician_ut_db)},
        {"pathloss_ref_db", real_field(&ScenarioConfig::pathloss_ref_db)},
        {"pathloss_exp_comm", real_field(&ScenarioConfig::pathloss_exp_comm)},
        {"pathloss_exp_sense", real_field(&ScenarioConfig::pathloss_exp_sense)},
        {"max_speed", real_field(&ScenarioConfig::max_speed)},
        {"max_step", real_field(&ScenarioConfig::max_step)},
        {"tx_power_dbm", real_field(&ScenarioConfig::tx_power_dbm)},
        {"sense_rate_min", real_field(&ScenarioConfig::sense_rate_min)},
        {"conv_tol", real_field(&ScenarioConfig::conv_tol)},
        {"max_outer_iters", int_field(&ScenarioConfig::max_outer_iters)},
        {"rng_seed", int_field(&ScenarioConfig::rng_seed)},
        {"trust_region", real_field(&ScenarioConfig::trust_region)},
        {"iot", pos_field(&ScenarioConfig::iot)},
        {"ut", pos_field(&ScenarioConfig::ut)},
        {"uav_start", pos_field(&ScenarioConfig::uav_start)},
        {"uav_end", pos_field(&ScenarioConfig::uav_end)},
    };
    return table;
}

const Field *find_field(const std::string &key)
{
    for (const auto &[name, f] : fields())
        if (name == key)
            return &f;
    return nullptr;
}

bool close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

void require_finite(const std::string &name, double v)
{
    if (!std::isfinite(v))
        throw ValidationError(name + " must be finite, got " + fmt(v));
}

void require_finite(const std::string &name, const Position3 &p)
{
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        throw ValidationError(name + " has a non-finite component");
    if (p.z < 0.0)
        throw ValidationError(name + ".z must be >= 0, got " + fmt(p.z));
}

} // namespace

double distance(const Position3 &a, const Position3 &b)
{
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::vector<int> Timeline::slot_indices() const
{
    std::vector<int> idx(static_cast<std::size_t>(slots));
    for (int s = 0; s < slots; ++s)
        idx[static_cast<std::size_t>(s)] = s + 1;
    return idx;
}

ScenarioConfig default_scenario()
{
    ScenarioConfig cfg;
    validate(cfg);
    return cfg;
}

void validate(ScenarioConfig &cfg)
{
    if (cfg.n_tx < 1)
        throw ValidationError("n_tx must be >= 1, got " + std::to_string(cfg.n_tx));
    if (cfg.n_rx < 1)
        throw ValidationError("n_rx must be >= 1, got " + std::to_string(cfg.n_rx));
    if (cfg.slots < 2)
        throw ValidationError("slots must be >= 2, got " + std::to_string(cfg.slots));
    if (cfg.max_outer_iters < 1)
        throw ValidationError("max_outer_iters must be >= 1");

    for (const auto &[name, v] : std::initializer_list<std::pair<const char *, double>>{
             {"horizon", cfg.horizon},
             {"slot_len", cfg.slot_len},
             {"noise_dev_dbm", cfg.noise_dev_dbm},
             {"noise_eve_dbm", cfg.noise_eve_dbm},
             {"noise_echo_dbm", cfg.noise_echo_dbm},
             {"rician_ud_db", cfg.rician_ud_db},
             {"rician_ut_db", cfg.rician_ut_db},
             {"pathloss_ref_db", cfg.pathloss_ref_db},
             {"pathloss_exp_comm", cfg.pathloss_exp_comm},
             {"pathloss_exp_sense", cfg.pathloss_exp_sense},
             {"max_speed", cfg.max_speed},
             {"max_step", cfg.max_step},
             {"tx_power_dbm", cfg.tx_power_dbm},
             {"sense_rate_min", cfg.sense_rate_min},
             {"trust_region", cfg.trust_region}})
        require_finite(name, v);
    require_finite("iot", cfg.iot);
    require_finite("ut", cfg.ut);
    require_finite("uav_start", cfg.uav_start);
    require_finite("uav_end", cfg.uav_end);

    if (cfg.horizon <= 0.0 || cfg.slot_len <= 0.0)
        throw ValidationError("horizon and slot_len must be positive");
    if (!close(cfg.horizon, cfg.slots * cfg.slot_len, 1e-9))
        throw ValidationError("horizon (" + fmt(cfg.horizon) + ") != slots * slot_len (" +
                              fmt(cfg.slots * cfg.slot_len) + ")");
    if (!close(cfg.max_step, cfg.max_speed * cfg.slot_len, 1e-9))
        throw ValidationError("max_step (" + fmt(cfg.max_step) + ") != max_speed * slot_len (" +
                              fmt(cfg.max_speed * cfg.slot_len) + ")");
    if (cfg.max_step <= 0.0)
        throw ValidationError("max_step must be positive");
    if (cfg.pathloss_exp_comm <= 0.0 || cfg.pathloss_exp_sense <= 0.0)
        throw ValidationError("path-loss exponents must be positive");
    if (cfg.sense_rate_min < 0.0)
        throw ValidationError("sense_rate_min must be >= 0, got " + fmt(cfg.sense_rate_min));
    if (!(cfg.conv_tol >= 0.0))
        throw ValidationError("conv_tol must be >= 0");
    if (cfg.trust_region <= 0.0)
        throw ValidationError("trust_region must be positive");

    if (cfg.iot.z != 0.0 || cfg.ut.z != 0.0)
        throw ValidationError("ground nodes (iot, ut) must have z = 0");
    if (cfg.uav_start.z <= 0.0)
        throw ValidationError("uav_start.z must be positive");
    if (cfg.uav_end.z != cfg.uav_start.z)
        throw ValidationError("uav_end.z (" + fmt(cfg.uav_end.z) + ") must equal uav_start.z (" +
                              fmt(cfg.uav_start.z) + "); altitude is fixed");

    const double span = distance(cfg.uav_start, cfg.uav_end);
    if (span > cfg.slots * cfg.max_step * (1.0 + 1e-12))
        throw ValidationError("start-to-end distance (" + fmt(span) + " m) exceeds slots * max_step (" +
                              fmt(cfg.slots * cfg.max_step) + " m)");

    LinearParams &lin = cfg.linear;
    lin.noise_dev = dbm_to_watts(cfg.noise_dev_dbm);
    lin.noise_eve = dbm_to_watts(cfg.noise_eve_dbm);
    lin.noise_echo = dbm_to_watts(cfg.noise_echo_dbm);
    lin.rician_ud = db_to_linear(cfg.rician_ud_db);
    lin.rician_ut = db_to_linear(cfg.rician_ut_db);
    lin.pathloss_ref = db_to_linear(cfg.pathloss_ref_db);
    lin.tx_power = dbm_to_watts(cfg.tx_power_dbm);
    lin.sense_snr_min = std::exp2(cfg.sense_rate_min) - 1.0;
}

void apply_setting(ScenarioConfig &cfg, const std::string &key, const std::string &value)
{
    const Field *f = find_field(key);
    if (f == nullptr)
        throw SchemaError(key, "unknown key");
    f->set(cfg, key, value);
}

ScenarioConfig parse_config(const std::string &text)
{
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw SchemaError(line, "line " + std::to_string(lineno) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw SchemaError(key, "line " + std::to_string(lineno) + " has an empty key");
        apply_setting(cfg, key, value);
    }
    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

ScenarioConfig with_slots(ScenarioConfig cfg, int slots)
{
    const double old_step = cfg.max_step;
    cfg.slots = slots;
    cfg.slot_len = cfg.horizon / slots;
    cfg.max_step = cfg.max_speed * cfg.slot_len;
    // trust region keeps its ratio to the per-slot step
    cfg.trust_region *= cfg.max_step / old_step;
    validate(cfg);
    return cfg;
}

Timeline timeline(const ScenarioConfig &cfg) { return {cfg.slots, cfg.slot_len}; }

std::string to_config_text(const ScenarioConfig &cfg)
{
    std::string out;
    for (const auto &[name, f] : fields())
        out += name + " = " + f.get(cfg) + "\n";
    return out;
}

} // namespace uavsec
