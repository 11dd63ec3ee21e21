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

#ifndef UAVSEC_CVXCORE_HPP
#define UAVSEC_CVXCORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace uavsec::cvx
{

// ------------------------------------------------------------------------
// Problem description
// ------------------------------------------------------------------------

struct QuadEntry
{
    int i = 0;
    int j = 0;
    double v = 0.0; // contributes v * x_i * x_j
};

struct LinEntry
{
    int i = 0;
    double v = 0.0;
};

enum class ScalarKind
{
    power,   // coeff * y^exponent
    neg_log, // -coeff * log(y)
};

// coeff * phi(scale * x[index] + shift), defined for y = scale * x + shift > 0.
struct ScalarTerm
{
    int index = 0;
    double coeff = 1.0;
    ScalarKind kind = ScalarKind::power;
    double exponent = 1.0;
    double scale = 1.0;
    double shift = 0.0;
};

// c(x) = sum quad + sum lin + constant + sum scalars <= 0
struct Constraint
{
    std::vector<QuadEntry> quad;
    std::vector<LinEntry> lin;
    double constant = 0.0;
    std::vector<ScalarTerm> scalars;
    std::string label;
};

// Convex program over a real vector (complex unknowns are stacked as [Re; Im]):
//   minimize  x'Qx + c'x + k + sum objective scalars
//   s.t.      c_i(x) <= 0
// Convexity is certified as pieces are added; a non-convex piece throws
// std::invalid_argument.
class ConvexSubproblem
{
public:
    explicit ConvexSubproblem(int dim);

    int dim() const { return dim_; }
    int constraint_count() const { return static_cast<int>(cons_.size()); }
    const std::string &constraint_label(int i) const { return cons_[static_cast<std::size_t>(i)].label; }

    void set_objective(const Eigen::MatrixXd &quad, const Eigen::VectorXd &lin, double constant);
    void set_linear_objective(const Eigen::VectorXd &lin, double constant = 0.0);
    void add_objective_term(const ScalarTerm &term);

    void add_constraint(const Constraint &c);
    // a'x + b <= 0
    void add_affine(std::vector<LinEntry> a, double b, std::string label);
    // scale * (||x[idx] - center||^2 - radius^2) <= 0
    void add_ball(const std::vector<int> &idx, const std::vector<double> &center, double radius, std::string label,
                  double scale = 1.0);

    double objective(const Eigen::VectorXd &x) const;
    Eigen::VectorXd objective_gradient(const Eigen::VectorXd &x) const;
    double constraint_value(int i, const Eigen::VectorXd &x) const;
    double max_violation(const Eigen::VectorXd &x) const;
    // Every scalar term argument strictly positive.
    bool in_domain(const Eigen::VectorXd &x) const;

    // Internal compiled form, exposed for the solver.
    struct Compiled
    {
        std::vector<int> support;
        Eigen::MatrixXd quad; // local, symmetric: value contribution xl' quad xl
        Eigen::VectorXd lin;  // local
        double constant = 0.0;
        std::vector<ScalarTerm> scalars; // index is local
        std::string label;
    };

    const std::vector<Compiled> &compiled() const { return cons_; }
    bool has_quad_objective() const { return has_quad_; }
    const Eigen::MatrixXd &objective_quad() const { return obj_quad_; }
    const Eigen::VectorXd &objective_lin() const { return obj_lin_; }
    double objective_constant() const { return obj_const_; }
    const std::vector<ScalarTerm> &objective_scalars() const { return obj_scalars_; }

private:
    int dim_;
    bool has_quad_ = false;
    Eigen::MatrixXd obj_quad_;
    Eigen::VectorXd obj_lin_;
    double obj_const_ = 0.0;
    std::vector<ScalarTerm> obj_scalars_;
    std::vector<Compiled> cons_;
};

// ------------------------------------------------------------------------
// Solver
// ------------------------------------------------------------------------

struct SolveOptions
{
    double feas_tol = 1e-6;
    double opt_tol = 1e-6;   // KKT stationarity residual
    double gap_tol = 1e-9;   // barrier duality gap m / t
    double infeas_tol = 1e-5; // phase-1 residual above this declares infeasibility
    int max_newton = 600;
};

enum class SolveStatus
{
    optimal,
    max_iters,
    infeasible,
};

const char *to_string(SolveStatus s);

struct SolveReport
{
    Eigen::VectorXd x;
    double objective = 0.0;
    double max_violation = 0.0;
    double kkt_residual = 0.0;
    double gap = 0.0;
    int iterations = 0;
    int phase1_iterations = 0;
    SolveStatus status = SolveStatus::max_iters;
};

// Log-barrier interior-point method with a phase-1 search for a strictly
// feasible point. Never returns a point worse than a feasible start.
SolveReport solve(const ConvexSubproblem &p, const Eigen::VectorXd &start, const SolveOptions &opts = {});

// ------------------------------------------------------------------------
// First-order surrogates
// ------------------------------------------------------------------------

// g(x) = 2 Re(b^H x) - offset, the tangent minorant of |a^H x|^2 at x0,
// with b = (a^H x0) a and offset = |a^H x0|^2.
struct QuadMinorant
{
    Eigen::VectorXcd b;
    double offset = 0.0;

    double operator()(const Eigen::VectorXcd &x) const { return 2.0 * b.dot(x).real() - offset; }
};

QuadMinorant taylor_lower_quadratic(const Eigen::VectorXcd &a, const Eigen::VectorXcd &x0);

struct Affine1D
{
    double value0 = 0.0; // value at the expansion point
    double slope = 0.0;
    double x0 = 0.0;

    double operator()(double x) const { return value0 + slope * (x - x0); }
};

// log2(1 + v0) + (v - v0) / (ln2 (1 + v0)), a global majorant of log2(1 + v).
Affine1D taylor_upper_logistic(double v0);

// Tangent of z^e at z0 for e < 0; a global minorant of z^e on z > 0.
Affine1D taylor_convex_power(double z0, double exponent);

// Real stacking helpers: x = [Re w; Im w].
Eigen::VectorXd stack(const Eigen::VectorXcd &w);
Eigen::VectorXcd unstack(const Eigen::VectorXd &x, int offset, int n);
// Re(b^H w) = r' x with r = [Re b; Im b].
Eigen::VectorXd real_inner(const Eigen::VectorXcd &b);
// |a^H w|^2 = x' M x.
Eigen::MatrixXd modulus_square_form(const Eigen::VectorXcd &a);

} // namespace uavsec::cvx

#endif
