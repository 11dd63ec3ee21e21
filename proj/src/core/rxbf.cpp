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

#include "core/rxbf.hpp"

#include "core/cvxcore.hpp"
#include "core/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace uavsec
{

namespace
{

double quad(const Eigen::MatrixXcd &m, const Eigen::VectorXcd &u) { return u.dot(m * u).real(); }

MmSurrogate make_surrogate(const EchoQuadratic &q, const Eigen::VectorXcd &u0, double lambda)
{
    if (std::abs(u0.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("mm_surrogate: expansion point must have unit norm");
    MmSurrogate s;
    const auto n = q.omega.rows();
    s.shifted = q.omega - lambda * Eigen::MatrixXcd::Identity(n, n);
    s.u0 = u0;
    s.lambda = lambda;
    s.offset = quad(s.shifted, u0);
    return s;
}

Eigen::VectorXcd principal_vector(const Eigen::MatrixXcd &omega)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(omega);
    return es.eigenvectors().col(omega.rows() - 1);
}

} // namespace

double MmSurrogate::operator()(const Eigen::VectorXcd &u) const
{
    return lambda * u.squaredNorm() + 2.0 * u.dot(shifted * u0).real() - offset;
}

EchoQuadratic build_omega(const ChannelSlot &slot, const Eigen::VectorXcd &w)
{
    const Eigen::VectorXcd a = slot.l_ut * slot.l_ut * slot.h_ut.dot(w) * slot.g_rt;
    EchoQuadratic q;
    q.omega = a * a.adjoint();
    q.lambda_max = a.squaredNorm();
    q.lambda_min = a.size() > 1 ? 0.0 : q.lambda_max;
    return q;
}

EchoQuadratic echo_quadratic(const Eigen::MatrixXcd &omega)
{
    if (omega.rows() != omega.cols() || omega.rows() == 0)
        throw std::invalid_argument("echo_quadratic: matrix must be square and non-empty");
    const double scale = std::max(1e-300, omega.cwiseAbs().maxCoeff());
    if ((omega - omega.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("echo_quadratic: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(omega, Eigen::EigenvaluesOnly);
    EchoQuadratic q;
    q.omega = omega;
    q.lambda_min = es.eigenvalues()[0];
    q.lambda_max = es.eigenvalues()[omega.rows() - 1];
    return q;
}

MmSurrogate mm_surrogate(const EchoQuadratic &q, const Eigen::VectorXcd &u0)
{
    return make_surrogate(q, u0, q.lambda_min);
}

MmSurrogate mm_majorant(const EchoQuadratic &q, const Eigen::VectorXcd &u0)
{
    return make_surrogate(q, u0, q.lambda_max);
}

Eigen::VectorXcd fix_phase(const Eigen::VectorXcd &u)
{
    Eigen::Index k = 0;
    u.cwiseAbs().maxCoeff(&k);
    const std::complex<double> c = u[k];
    if (std::abs(c) == 0.0)
        return u;
    return u * (std::conj(c) / std::abs(c));
}

RxResult solve_rx_detailed(const ChannelSlot &slot, const Eigen::VectorXcd &w, const Eigen::VectorXcd &u_start,
                           double gamma_lin, double sigma2, int slot_index)
{
    if (std::abs(u_start.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("solve_rx: start must have unit norm");
    const EchoQuadratic q = build_omega(slot, w);
    if (q.lambda_max / sigma2 < gamma_lin)
        throw InfeasibleError("receive beamforming", slot_index,
                              "echo SNR constraint cannot be met: matched filter reaches " +
                                  std::to_string(q.lambda_max / sigma2) + " < required " + std::to_string(gamma_lin));
    RxResult r;
    r.u = u_start;
    if (q.lambda_max == 0.0)
        return r;

    const int n = static_cast<int>(u_start.size());
    // work with Omega / lambda_max so the subproblem is O(1)
    EchoQuadratic qs = q;
    qs.omega /= q.lambda_max;
    qs.lambda_min /= q.lambda_max;
    qs.lambda_max = 1.0;
    const double tau = gamma_lin * sigma2 / q.lambda_max;

    Eigen::VectorXcd u = u_start;
    double value = quad(qs.omega, u);
    std::vector<int> idx(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i)
        idx[static_cast<std::size_t>(i)] = i;

    for (int it = 0; it < 100; ++it)
    {
        MmSurrogate s = mm_surrogate(qs, u);
        Eigen::VectorXcd grad = s.shifted * u;
        if (grad.norm() < 1e-12)
        {
            // orthogonal to the signal subspace: restart from the principal direction
            u = principal_vector(qs.omega);
            s = mm_surrogate(qs, u);
            grad = s.shifted * u;
        }
        // maximize 2 Re(u^H g) on the unit ball, keeping the surrogate echo above tau
        cvx::ConvexSubproblem p(2 * n);
        const Eigen::VectorXd rg = cvx::real_inner(grad);
        p.set_linear_objective(-2.0 * rg);
        p.add_ball(idx, std::vector<double>(static_cast<std::size_t>(2 * n), 0.0), 1.0, "unit norm");
        if (value > tau)
        {
            std::vector<cvx::LinEntry> a;
            for (int i = 0; i < 2 * n; ++i)
                a.push_back({i, -2.0 * rg[i]});
            p.add_affine(a, tau - s.lambda + s.offset, "echo SNR");
        }
        const cvx::SolveReport rep = cvx::solve(p, Eigen::VectorXd::Zero(2 * n));
        Eigen::VectorXcd next = cvx::unstack(rep.x, 0, n);
        if (next.norm() == 0.0)
            break;
        next /= next.norm();
        const double next_value = quad(qs.omega, next);
        ++r.iterations;
        if (next_value < value)
            break;
        const double delta = next_value - value;
        u = next;
        value = next_value;
        r.echo_history.push_back(value * q.lambda_max / sigma2);
        if (delta <= 1e-8 * std::max(value, 1e-300))
            break;
    }
    r.u = fix_phase(u);
    return r;
}

Eigen::VectorXcd solve_rx(const ChannelSlot &slot, const Eigen::VectorXcd &w, const Eigen::VectorXcd &u_start,
                          double gamma_lin, double sigma2)
{
    return solve_rx_detailed(slot, w, u_start, gamma_lin, sigma2).u;
}

} // namespace uavsec
