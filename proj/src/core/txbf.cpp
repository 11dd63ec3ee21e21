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

#include "core/txbf.hpp"

#include "core/errors.hpp"
#include "core/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace uavsec
{

namespace
{

const double ln2 = std::log(2.0);

// e such that the echo amplitude is L_ut^2 e^H w.
Eigen::VectorXcd echo_direction(const ChannelSlot &ch, const Eigen::VectorXcd &u)
{
    return std::conj(u.dot(ch.g_rt)) * ch.h_ut;
}

double true_secrecy(const ScenarioConfig &cfg, const ChannelSlot &ch, const Eigen::VectorXcd &w)
{
    return secrecy_rate_unclamped(snr_device(ch, w, cfg.linear.noise_dev), snr_eve(ch, w, cfg.linear.noise_eve));
}

} // namespace

Eigen::VectorXcd TxProblem::beamformer(const Eigen::VectorXd &x, double power) const
{
    return std::sqrt(power) * cvx::unstack(x, 0, n_tx);
}

double echo_minorant(const ScenarioConfig &cfg, const ChannelSlot &ch, const Eigen::VectorXcd &u,
                     const Eigen::VectorXcd &w0, const Eigen::VectorXcd &w)
{
    const double l4 = std::pow(ch.l_ut, 4);
    const auto lo = cvx::taylor_lower_quadratic(echo_direction(ch, u), w0);
    return l4 * lo(w) / cfg.linear.noise_echo;
}

Eigen::VectorXcd repair_tx_feasibility(const ScenarioConfig &cfg, const ChannelSlot &ch, const Eigen::VectorXcd &w0,
                                       const Eigen::VectorXcd &u, int slot)
{
    const double tau = cfg.linear.sense_snr_min;
    const double sigma = cfg.linear.noise_echo;
    if (snr_echo(ch, w0, u, sigma) >= tau)
        return w0;
    const Eigen::VectorXcd e = echo_direction(ch, u);
    const double P = cfg.linear.tx_power;
    if (e.norm() == 0.0)
        throw InfeasibleError("transmit beamforming", slot, "echo SNR constraint cannot be met: target echo is null");
    const Eigen::VectorXcd w_mf = std::sqrt(P) * e / e.norm();
    const double best = snr_echo(ch, w_mf, u, sigma);
    if (best < tau)
        throw InfeasibleError("transmit beamforming", slot,
                              "echo SNR constraint cannot be met: matched filter reaches " + std::to_string(best) +
                                  " < required " + std::to_string(tau));
    // align the global phase so the echo amplitude grows monotonically along the mix
    Eigen::VectorXcd base = w0;
    const std::complex<double> ew = e.dot(w0);
    if (std::abs(ew) > 0.0)
        base *= std::conj(ew) / std::abs(ew);
    const double target = tau * (1.0 + 1e-6);
    if (best < target)
        return w_mf;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        const Eigen::VectorXcd w = (1.0 - mid) * base + mid * w_mf;
        if (snr_echo(ch, w, u, sigma) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return (1.0 - hi) * base + hi * w_mf;
}

Eigen::VectorXcd secrecy_beamformer(const ScenarioConfig &cfg, const ChannelSlot &ch, const Eigen::VectorXcd &u)
{
    const double P = cfg.linear.tx_power;
    const double nd = ch.h_ud.norm(), ne = ch.h_ut.norm();
    if (nd == 0.0 || ne == 0.0)
        throw std::invalid_argument("secrecy_beamformer: null channel");
    const Eigen::VectorXcd hd = ch.h_ud / nd, he = ch.h_ut / ne;
    const std::complex<double> c = he.dot(hd);
    const double cmag = std::abs(c);
    const std::complex<double> ph = cmag > 0.0 ? c / cmag : std::complex<double>(1.0, 0.0);
    Eigen::VectorXcd v = hd - c * he;
    const double g2 = v.norm();
    if (g2 > 1e-14)
        v /= g2;
    else
        v.setZero();
    const double phi = std::atan2(g2, cmag);

    // w(theta) = sqrt(P) (cos(theta) ph he + sin(theta) v), |hd^H w|^2 = P cos^2(theta - phi)
    const double A = P * nd * nd * ch.l_ud * ch.l_ud / cfg.linear.noise_dev;
    const double B = P * ne * ne * ch.l_ut * ch.l_ut / cfg.linear.noise_eve;
    double theta_max = std::acos(0.0);
    const double tau = cfg.linear.sense_snr_min;
    if (tau > 0.0)
    {
        const double cs = P * ne * ne * std::pow(ch.l_ut, 4) * std::norm(u.dot(ch.g_rt)) / cfg.linear.noise_echo;
        const double need = tau * (1.0 + 1e-9) / cs;
        if (need > 1.0)
            throw InfeasibleError("transmit beamforming", 0, "echo SNR constraint cannot be met at full power");
        theta_max = std::acos(std::sqrt(need));
    }
    auto f = [&](double th) {
        const double cd = std::cos(th - phi), ce = std::cos(th);
        return std::log2(1.0 + A * cd * cd) - std::log2(1.0 + B * ce * ce);
    };
    const int grid = 2000;
    int best = 0;
    double fbest = f(0.0);
    for (int k = 1; k <= grid; ++k)
    {
        const double fk = f(theta_max * k / grid);
        if (fk > fbest)
        {
            fbest = fk;
            best = k;
        }
    }
    double lo = theta_max * std::max(0, best - 1) / grid, hi = theta_max * std::min(grid, best + 1) / grid;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it)
    {
        const double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
        if (f(m1) < f(m2))
            lo = m1;
        else
            hi = m2;
    }
    double th = 0.5 * (lo + hi);
    if (f(th) < fbest)
        th = theta_max * best / grid;
    return std::sqrt(P) * (std::cos(th) * ph * he + std::sin(th) * v);
}

TxProblem build_tx_subproblem(const TxSubproblemInput &inp, int slot)
{
    if (inp.cfg == nullptr)
        throw std::invalid_argument("build_tx_subproblem: missing config");
    const ScenarioConfig &cfg = *inp.cfg;
    const auto s = static_cast<std::size_t>(slot);
    if (s >= inp.channels.size() || s >= inp.w0.size() || s >= inp.u.size())
        throw std::invalid_argument("build_tx_subproblem: slot out of range");
    const ChannelSlot &ch = inp.channels[s];
    const Eigen::VectorXcd &w0 = inp.w0[s];
    const Eigen::VectorXcd &u = inp.u[s];
    const int n = static_cast<int>(w0.size());
    const double P = cfg.linear.tx_power;
    const double tau = cfg.linear.sense_snr_min;

    if (tau > 0.0 && snr_echo(ch, w0, u, cfg.linear.noise_echo) < tau * (1.0 - 1e-6))
        throw std::invalid_argument("build_tx_subproblem: expansion point violates the echo SNR constraint; repair "
                                    "feasibility first");

    const Eigen::VectorXcd v0 = w0 / std::sqrt(P);
    const double c_d = P * ch.l_ud * ch.l_ud / cfg.linear.noise_dev;
    const double c_e = P * ch.l_ut * ch.l_ut / cfg.linear.noise_eve;
    const double snr_d0 = c_d * std::norm(ch.h_ud.dot(v0));
    const double snr_e0 = c_e * std::norm(ch.h_ut.dot(v0));

    TxProblem tp{cvx::ConvexSubproblem(2 * n + 1), Eigen::VectorXd(2 * n + 1), std::max(1.0, snr_d0), n};
    const int it = 2 * n;
    const double T = tp.scale_t;

    // objective: -log2(1 + T t') + slope * snr_ut(v)
    const auto up = cvx::taylor_upper_logistic(snr_e0);
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(2 * n + 1, 2 * n + 1);
    Q.topLeftCorner(2 * n, 2 * n) = up.slope * c_e * cvx::modulus_square_form(ch.h_ut);
    tp.problem.set_objective(Q, Eigen::VectorXd::Zero(2 * n + 1), 0.0);
    tp.problem.add_objective_term({it, 1.0 / ln2, cvx::ScalarKind::neg_log, 1.0, T, 1.0});
    tp.offset = -up.value0 + up.slope * snr_e0;

    // device rate: T t' <= c_d (2 Re(b^H v) - |h^H v0|^2), scaled by 1 / T
    {
        const auto lo = cvx::taylor_lower_quadratic(ch.h_ud, v0);
        const Eigen::VectorXd r = cvx::real_inner(lo.b);
        cvx::Constraint c;
        c.label = "device rate";
        for (int i = 0; i < 2 * n; ++i)
            c.lin.push_back({i, -2.0 * c_d * r[i] / T});
        c.lin.push_back({it, 1.0});
        c.constant = c_d * lo.offset / T;
        tp.problem.add_constraint(c);
    }

    // echo SNR: c_s (2 Re(b^H v) - |e^H v0|^2) >= tau, scaled by 1 / tau
    if (tau > 0.0)
    {
        const double c_s = P * std::pow(ch.l_ut, 4) / cfg.linear.noise_echo;
        const auto lo = cvx::taylor_lower_quadratic(echo_direction(ch, u), v0);
        const Eigen::VectorXd r = cvx::real_inner(lo.b);
        cvx::Constraint c;
        c.label = "echo SNR";
        for (int i = 0; i < 2 * n; ++i)
            c.lin.push_back({i, -2.0 * c_s * r[i] / tau});
        c.constant = 1.0 + c_s * lo.offset / tau;
        tp.problem.add_constraint(c);
    }

    std::vector<int> idx(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i)
        idx[static_cast<std::size_t>(i)] = i;
    tp.problem.add_ball(idx, std::vector<double>(static_cast<std::size_t>(2 * n), 0.0), 1.0, "transmit power");

    tp.start.head(2 * n) = cvx::stack(v0);
    tp.start[it] = (0.5 * snr_d0 - 0.25) / T;
    return tp;
}

TxSolution solve_tx(const TxSubproblemInput &inp, const TxOptions &opts)
{
    if (inp.cfg == nullptr)
        throw std::invalid_argument("solve_tx: missing config");
    const ScenarioConfig &cfg = *inp.cfg;
    const std::size_t S = inp.channels.size();
    if (inp.w0.size() != S || inp.u.size() != S)
        throw std::invalid_argument("solve_tx: slot count mismatch");

    TxSolution out;
    out.w.resize(S);
    out.gamma_bar.resize(S);
    out.surrogate.resize(S);
    const double tau = cfg.linear.sense_snr_min;
    const double norm_cap = std::sqrt(cfg.linear.tx_power);
    for (std::size_t s = 0; s < S; ++s)
    {
        const ChannelSlot &ch = inp.channels[s];
        const int slot = static_cast<int>(s) + 1;
        Eigen::VectorXcd cur = inp.w0[s];
        if (tau > 0.0)
            cur = repair_tx_feasibility(cfg, ch, cur, inp.u[s], slot);
        double cur_rate = true_secrecy(cfg, ch, cur);
        if (opts.closed_form_start)
        {
            const Eigen::VectorXcd w = secrecy_beamformer(cfg, ch, inp.u[s]);
            const double rate = true_secrecy(cfg, ch, w);
            if (rate > cur_rate && (tau <= 0.0 || snr_echo(ch, w, inp.u[s], cfg.linear.noise_echo) >= tau))
            {
                cur = w;
                cur_rate = rate;
            }
        }
        double gamma = std::log2(1.0 + snr_device(ch, cur, cfg.linear.noise_dev));
        double surrogate = cur_rate;
        for (int pass = 0; pass < std::max(1, opts.max_inner); ++pass)
        {
            TxSubproblemInput one{&cfg, std::span(&ch, 1), std::span(&cur, 1), inp.u.subspan(s, 1)};
            TxProblem tp = build_tx_subproblem(one, 0);
            const cvx::SolveReport rep = cvx::solve(tp.problem, tp.start);
            if (rep.status == cvx::SolveStatus::infeasible)
                throw InfeasibleError("transmit beamforming", slot,
                                      "echo SNR and power constraints admit no common point");
            Eigen::VectorXcd w = tp.beamformer(rep.x, cfg.linear.tx_power);
            if (w.norm() > norm_cap)
                w *= norm_cap / w.norm();
            const bool echo_ok = tau <= 0.0 || snr_echo(ch, w, inp.u[s], cfg.linear.noise_echo) >= tau;
            const double rate = true_secrecy(cfg, ch, w);
            // keep the expansion point when rounding leaves the new point behind
            if (!echo_ok || rate < cur_rate)
                break;
            const double gain = rate - cur_rate;
            cur = w;
            cur_rate = rate;
            gamma = std::log2(1.0 + std::max(0.0, tp.scale_t * rep.x[2 * tp.n_tx]));
            surrogate = tp.surrogate_secrecy(rep.x);
            if (gain <= opts.inner_tol)
                break;
        }
        out.w[s] = cur;
        out.gamma_bar[s] = gamma;
        out.surrogate[s] = surrogate;
    }
    return out;
}

} // namespace uavsec
