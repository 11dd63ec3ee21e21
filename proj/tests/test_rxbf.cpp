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
#include "core/rxbf.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace uavsec;
using cd = std::complex<double>;

namespace
{

Eigen::VectorXcd random_cvec(std::mt19937_64 &rng, int n)
{
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i)
        v[i] = {nd(rng), nd(rng)};
    return v;
}

ChannelSlot random_slot(std::mt19937_64 &rng, int nt, int nr)
{
    ChannelSlot s;
    s.h_ud = random_cvec(rng, nt);
    s.h_ut = random_cvec(rng, nt);
    s.g_rt = random_cvec(rng, nr);
    s.l_ud = 0.5;
    s.l_ut = 0.7;
    return s;
}

Eigen::MatrixXcd random_psd(std::mt19937_64 &rng, int n, int rank)
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < rank; ++k)
    {
        const Eigen::VectorXcd a = random_cvec(rng, n);
        m += a * a.adjoint();
    }
    return 0.5 * (m + m.adjoint());
}

double quad(const Eigen::MatrixXcd &m, const Eigen::VectorXcd &u)
{
    return std::real(u.dot(m * u));
}

} // namespace

TEST_CASE("omega vanishes when w is orthogonal to the target channel")
{
    std::mt19937_64 rng(1);
    ChannelSlot s = random_slot(rng, 3, 2);
    Eigen::VectorXcd w = random_cvec(rng, 3);
    w -= s.h_ut * (s.h_ut.dot(w) / s.h_ut.squaredNorm());
    const EchoQuadratic q = build_omega(s, w);
    CHECK(q.omega.norm() < 1e-12);
    CHECK(std::abs(q.lambda_max) < 1e-12);
}

TEST_CASE("two-element hand example")
{
    ChannelSlot s;
    s.h_ut = Eigen::VectorXcd::Zero(2);
    s.h_ut[0] = 1.0;
    s.g_rt = Eigen::VectorXcd(2);
    s.g_rt << cd(1, 0), cd(0, 1);
    s.l_ut = 1.0;
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(2);
    w[0] = 1.0;
    const EchoQuadratic q = build_omega(s, w);
    CHECK(q.lambda_max == doctest::Approx(2.0).epsilon(1e-14));
    const Eigen::VectorXcd v = s.g_rt / std::sqrt(2.0);
    CHECK((q.omega * v - 2.0 * v).norm() < 1e-14);
    CHECK(std::real(q.omega.trace()) == doctest::Approx(q.lambda_max).epsilon(1e-14));
}

TEST_CASE("omega is Hermitian, PSD and rank one")
{
    std::mt19937_64 rng(2);
    for (int k = 0; k < 50; ++k)
    {
        const ChannelSlot s = random_slot(rng, 4, 5);
        const EchoQuadratic q = build_omega(s, random_cvec(rng, 4));
        CHECK((q.omega - q.omega.adjoint()).norm() <= 1e-12 * std::max(1.0, q.omega.norm()));
        CHECK(q.lambda_min >= -1e-10 * std::max(1.0, q.lambda_max));
        CHECK(std::real(q.omega.trace()) == doctest::Approx(q.lambda_max).epsilon(1e-12));
    }
}

TEST_CASE("MM surrogate audit: minorant, tight at the expansion point")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> dim(1, 6);
    int checked = 0;
    for (int k = 0; k < 1000; ++k)
    {
        const int n = dim(rng);
        std::uniform_int_distribution<int> rk(1, n);
        const EchoQuadratic q = echo_quadratic(random_psd(rng, n, rk(rng)));
        const Eigen::VectorXcd u0 = random_cvec(rng, n).normalized();
        const Eigen::VectorXcd u = random_cvec(rng, n).normalized();
        const MmSurrogate s = mm_surrogate(q, u0);
        CHECK(s(u) <= quad(q.omega, u) + 1e-10);
        CHECK(std::abs(s(u0) - quad(q.omega, u0)) <= 1e-12 * std::max(1.0, q.lambda_max));
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("lambda_max form majorizes")
{
    std::mt19937_64 rng(4);
    for (int k = 0; k < 1000; ++k)
    {
        const EchoQuadratic q = echo_quadratic(random_psd(rng, 4, 2));
        const Eigen::VectorXcd u0 = random_cvec(rng, 4).normalized();
        const Eigen::VectorXcd u = random_cvec(rng, 4).normalized();
        const MmSurrogate s = mm_majorant(q, u0);
        CHECK(s(u) >= quad(q.omega, u) - 1e-10);
        CHECK(std::abs(s(u0) - quad(q.omega, u0)) <= 1e-12 * std::max(1.0, q.lambda_max));
    }
}

TEST_CASE("scaled identity makes the surrogate exact")
{
    const EchoQuadratic q = echo_quadratic(3.5 * Eigen::MatrixXcd::Identity(3, 3));
    std::mt19937_64 rng(5);
    const MmSurrogate s = mm_surrogate(q, random_cvec(rng, 3).normalized());
    for (int k = 0; k < 20; ++k)
    {
        const Eigen::VectorXcd u = random_cvec(rng, 3);
        CHECK(s(u) == doctest::Approx(3.5 * u.squaredNorm()).epsilon(1e-13));
    }
}

TEST_CASE("MM converges to the matched filter")
{
    std::mt19937_64 rng(6);
    for (int k = 0; k < 30; ++k)
    {
        const ChannelSlot s = random_slot(rng, 4, 4);
        const Eigen::VectorXcd w = random_cvec(rng, 4);
        const double sigma2 = 1e-3;
        const RxResult r = solve_rx_detailed(s, w, random_cvec(rng, 4).normalized(), 0.0, sigma2);
        CHECK(r.u.norm() == doctest::Approx(1.0).epsilon(1e-15));
        // rank-one closed form: a = L^2 (h^H w) g, best value ||a||^2 / sigma2
        const Eigen::VectorXcd a = s.l_ut * s.l_ut * s.h_ut.dot(w) * s.g_rt;
        const double oracle = a.squaredNorm() / sigma2;
        CHECK(std::abs(snr_echo(s, w, r.u, sigma2) - oracle) <= 1e-6 * oracle);
        CHECK(std::abs(a.normalized().dot(r.u)) >= 1.0 - 1e-8);
        for (std::size_t i = 1; i < r.echo_history.size(); ++i)
            CHECK(r.echo_history[i] >= r.echo_history[i - 1] * (1.0 - 1e-12));
    }
}

TEST_CASE("matched filter start is a fixed point")
{
    std::mt19937_64 rng(7);
    const ChannelSlot s = random_slot(rng, 3, 4);
    const Eigen::VectorXcd w = random_cvec(rng, 3);
    const Eigen::VectorXcd mf = fix_phase(s.g_rt.normalized());
    const Eigen::VectorXcd u = solve_rx(s, w, mf, 0.0, 1.0);
    CHECK((u - mf).norm() <= 1e-9);
}

TEST_CASE("sensing threshold beyond the matched filter is infeasible")
{
    std::mt19937_64 rng(8);
    const ChannelSlot s = random_slot(rng, 3, 4);
    const Eigen::VectorXcd w = random_cvec(rng, 3);
    const Eigen::VectorXcd a = s.l_ut * s.l_ut * s.h_ut.dot(w) * s.g_rt;
    const double best = a.squaredNorm();
    CHECK_NOTHROW(solve_rx(s, w, random_cvec(rng, 4).normalized(), 0.99 * best, 1.0));
    try
    {
        solve_rx_detailed(s, w, random_cvec(rng, 4).normalized(), 1.01 * best, 1.0, 12);
        FAIL("expected infeasibility");
    }
    catch (const InfeasibleError &e)
    {
        CHECK(e.slot() == 12);
    }
}

TEST_CASE("phase normalization")
{
    std::mt19937_64 rng(9);
    for (int k = 0; k < 100; ++k)
    {
        const Eigen::VectorXcd u = random_cvec(rng, 5).normalized();
        const Eigen::VectorXcd f = fix_phase(u);
        Eigen::Index i = 0;
        f.cwiseAbs().maxCoeff(&i);
        CHECK(std::abs(f[i].imag()) <= 1e-15);
        CHECK(f[i].real() >= 0.0);
        CHECK(std::abs(std::abs(u.dot(f)) - 1.0) <= 1e-14);
        CHECK((fix_phase(f) - f).norm() <= 1e-15);
    }
}
