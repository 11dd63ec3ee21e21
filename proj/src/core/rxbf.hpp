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

#ifndef UAVSEC_RXBF_HPP
#define UAVSEC_RXBF_HPP

#include "core/channel.hpp"

#include <Eigen/Dense>

#include <vector>

namespace uavsec
{

struct EchoQuadratic
{
    Eigen::MatrixXcd omega; // Hermitian PSD
    double lambda_max = 0.0;
    double lambda_min = 0.0;
};

// Omega = a a^H with a = L_ut^2 (h_ut^H w) g_rt.
EchoQuadratic build_omega(const ChannelSlot &slot, const Eigen::VectorXcd &w);
// Any Hermitian PSD matrix; eigenvalues from a full decomposition.
EchoQuadratic echo_quadratic(const Eigen::MatrixXcd &omega);

// s(u) = lambda ||u||^2 + 2 Re(u^H (Omega - lambda I) u0) - u0^H (Omega - lambda I) u0
struct MmSurrogate
{
    Eigen::MatrixXcd shifted; // Omega - lambda I
    Eigen::VectorXcd u0;
    double lambda = 0.0;
    double offset = 0.0; // u0^H (Omega - lambda I) u0

    double operator()(const Eigen::VectorXcd &u) const;
};

// Minorant of u^H Omega u touching at u0 (lambda = lambda_min).
MmSurrogate mm_surrogate(const EchoQuadratic &q, const Eigen::VectorXcd &u0);
// Majorant with lambda = lambda_max; unusable for an ascent step.
MmSurrogate mm_majorant(const EchoQuadratic &q, const Eigen::VectorXcd &u0);

struct RxResult
{
    Eigen::VectorXcd u;
    int iterations = 0;
    std::vector<double> echo_history; // linear echo SNR after each step
};

// Maximizes the echo SNR u^H Omega u / sigma2 over unit-norm u by MM steps.
// Throws InfeasibleError when the best attainable echo SNR is below gamma_lin.
// slot is 1-based and used for diagnostics.
RxResult solve_rx_detailed(const ChannelSlot &slot, const Eigen::VectorXcd &w, const Eigen::VectorXcd &u_start,
                           double gamma_lin, double sigma2, int slot_index = 0);

Eigen::VectorXcd solve_rx(const ChannelSlot &slot, const Eigen::VectorXcd &w, const Eigen::VectorXcd &u_start,
                          double gamma_lin, double sigma2);

// Rotates u so its largest-magnitude entry is real and non-negative.
Eigen::VectorXcd fix_phase(const Eigen::VectorXcd &u);

} // namespace uavsec

#endif
