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

#ifndef UAVSEC_TXBF_HPP
#define UAVSEC_TXBF_HPP

#include "core/channel.hpp"
#include "core/cvxcore.hpp"
#include "core/scenario.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace uavsec
{

struct TxSubproblemInput
{
    const ScenarioConfig *cfg = nullptr; // power, sensing threshold, noise powers
    std::span<const ChannelSlot> channels;
    std::span<const Eigen::VectorXcd> w0; // expansion points
    std::span<const Eigen::VectorXcd> u;  // fixed receive beamformers
};

struct TxSolution
{
    std::vector<Eigen::VectorXcd> w;
    std::vector<double> gamma_bar; // per-slot device-rate slack, bps/Hz
    std::vector<double> surrogate; // per-slot surrogate secrecy at the solution
};

// One slot's convex program over x = [Re v; Im v; t'], v = w / sqrt(P) and
// device SNR slack t = scale_t * t'.
struct TxProblem
{
    cvx::ConvexSubproblem problem;
    Eigen::VectorXd start;
    double scale_t = 1.0;
    int n_tx = 0;

    Eigen::VectorXcd beamformer(const Eigen::VectorXd &x, double power) const;
    // log2(1 + t) - majorant of log2(1 + snr_ut), in bps/Hz
    double surrogate_secrecy(const Eigen::VectorXd &x) const { return -problem.objective(x) + offset; }

    double offset = 0.0; // constant dropped from the objective
};

// Linearized echo SNR at w for the fixed combiner u; equals snr_echo at w0.
double echo_minorant(const ScenarioConfig &cfg, const ChannelSlot &ch, const Eigen::VectorXcd &u,
                     const Eigen::VectorXcd &w0, const Eigen::VectorXcd &w);

// Moves w0 toward the sensing matched filter until the echo constraint holds.
// Throws InfeasibleError naming the echo SNR constraint when even the matched
// filter at full power fails. slot is 1-based and only used for diagnostics.
Eigen::VectorXcd repair_tx_feasibility(const ScenarioConfig &cfg, const ChannelSlot &ch, const Eigen::VectorXcd &w0,
                                       const Eigen::VectorXcd &u, int slot);

// Exact per-slot optimum. The slot secrecy and echo SNR depend on w only
// through |h_ud^H w|, |h_ut^H w| and ||w||, so the maximizer lies at full
// power in span{h_ud, h_ut}; the remaining angle is searched on a grid with
// golden-section refinement.
Eigen::VectorXcd secrecy_beamformer(const ScenarioConfig &cfg, const ChannelSlot &ch, const Eigen::VectorXcd &u);

// slot is a 0-based index into the input spans.
TxProblem build_tx_subproblem(const TxSubproblemInput &inp, int slot);

struct TxOptions
{
    // SCA passes per slot; each pass re-expands around the previous result
    int max_inner = 1;
    double inner_tol = 1e-7; // bps/Hz
    // start the passes from secrecy_beamformer when it is better
    bool closed_form_start = false;
};

TxSolution solve_tx(const TxSubproblemInput &inp, const TxOptions &opts = {});

} // namespace uavsec

#endif
