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

#include "core/cvxcore.hpp"

#include <cmath>
#include <random>

using namespace uavsec::cvx;

namespace
{

Eigen::VectorXcd random_cvec(std::mt19937_64 &rng, int n, double scale = 1.0)
{
    std::normal_distribution<double> nd(0.0, scale);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i)
        v[i] = {nd(rng), nd(rng)};
    return v;
}

} // namespace

TEST_CASE("bounded quadratic hits the active bound")
{
    ConvexSubproblem p(1);
    Eigen::MatrixXd q(1, 1);
    q << 1.0;
    Eigen::VectorXd c(1);
    c << -4.0;
    p.set_objective(q, c, 4.0); // (x - 2)^2
    p.add_affine({{0, 1.0}}, -1.0, "x<=1");
    auto r = solve(p, Eigen::VectorXd::Constant(1, -3.0));
    CHECK(r.status == SolveStatus::optimal);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(r.max_violation <= 1e-9);
    CHECK(r.kkt_residual < 1e-6);
}

TEST_CASE("projection onto a ball matches the closed form")
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd(0.0, 3.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        const int n = 5;
        Eigen::VectorXd ctr(n);
        for (int i = 0; i < n; ++i)
            ctr[i] = nd(rng);
        ConvexSubproblem p(n);
        p.set_objective(Eigen::MatrixXd::Identity(n, n), -2.0 * ctr, ctr.squaredNorm());
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i)
            idx[static_cast<std::size_t>(i)] = i;
        p.add_ball(idx, std::vector<double>(n, 0.0), 1.0, "unit ball");
        auto r = solve(p, Eigen::VectorXd::Zero(n));
        const Eigen::VectorXd expect = ctr.norm() > 1.0 ? Eigen::VectorXd(ctr / ctr.norm()) : ctr;
        CHECK((r.x - expect).norm() < 1e-6);
    }
}

TEST_CASE("phase one recovers from an infeasible start")
{
    ConvexSubproblem p(2);
    Eigen::VectorXd c(2);
    c << 1.0, 1.0;
    p.set_linear_objective(c);
    p.add_ball({0, 1}, {5.0, 5.0}, 1.0, "ball");
    auto r = solve(p, Eigen::VectorXd::Zero(2));
    CHECK(r.status == SolveStatus::optimal);
    CHECK(r.x[0] == doctest::Approx(5.0 - std::sqrt(0.5)).epsilon(1e-6));
    CHECK(r.x[1] == doctest::Approx(5.0 - std::sqrt(0.5)).epsilon(1e-6));
}

TEST_CASE("contradictory constraints report infeasible")
{
    ConvexSubproblem p(1);
    p.set_linear_objective(Eigen::VectorXd::Ones(1));
    p.add_affine({{0, 1.0}}, 1.0, "x<=-1");
    p.add_affine({{0, -1.0}}, 1.0, "x>=1");
    auto r = solve(p, Eigen::VectorXd::Zero(1));
    CHECK(r.status == SolveStatus::infeasible);
}

TEST_CASE("scalar terms: log and negative power")
{
    SUBCASE("-log x + x is minimized at 1")
    {
        ConvexSubproblem p(1);
        p.set_linear_objective(Eigen::VectorXd::Ones(1));
        p.add_objective_term({0, 1.0, ScalarKind::neg_log});
        auto r = solve(p, Eigen::VectorXd::Constant(1, 5.0));
        CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("x^-2 with x <= 2")
    {
        ConvexSubproblem p(1);
        p.set_linear_objective(Eigen::VectorXd::Zero(1));
        p.add_objective_term({0, 1.0, ScalarKind::power, -2.0});
        p.add_affine({{0, 1.0}}, -2.0, "x<=2");
        auto r = solve(p, Eigen::VectorXd::Constant(1, 0.5));
        CHECK(r.x[0] == doctest::Approx(2.0).epsilon(1e-7));
    }
    SUBCASE("power constraint: z^-2 <= 4 with minimize z")
    {
        ConvexSubproblem p(1);
        p.set_linear_objective(Eigen::VectorXd::Ones(1));
        Constraint c;
        c.scalars.push_back({0, 1.0, ScalarKind::power, -2.0});
        c.constant = -4.0;
        c.label = "power";
        p.add_constraint(c);
        auto r = solve(p, Eigen::VectorXd::Constant(1, 0.3));
        CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-7));
    }
}

TEST_CASE("non-convex pieces are rejected")
{
    ConvexSubproblem p(2);
    Eigen::MatrixXd q(2, 2);
    q << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(p.set_objective(q, Eigen::VectorXd::Zero(2), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(p.add_objective_term({0, -1.0, ScalarKind::neg_log}), std::invalid_argument);
    CHECK_THROWS_AS(p.add_objective_term({0, 1.0, ScalarKind::power, 0.5}), std::invalid_argument);
    Constraint c;
    c.quad.push_back({0, 1, 1.0});
    c.label = "saddle";
    CHECK_THROWS_AS(p.add_constraint(c), std::invalid_argument);
}

TEST_CASE("feasible start is never made worse")
{
    ConvexSubproblem p(1);
    p.set_linear_objective(Eigen::VectorXd::Ones(1));
    p.add_affine({{0, -1.0}}, 0.0, "x>=0");
    auto r = solve(p, Eigen::VectorXd::Constant(1, 1e-12));
    CHECK(r.objective <= 1e-12);
}

TEST_CASE("complex stacking identities")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial)
    {
        const Eigen::VectorXcd a = random_cvec(rng, 4);
        const Eigen::VectorXcd w = random_cvec(rng, 4);
        const Eigen::VectorXd x = stack(w);
        CHECK(std::norm(a.dot(w)) == doctest::Approx(x.dot(modulus_square_form(a) * x)).epsilon(1e-12));
        CHECK(a.dot(w).real() == doctest::Approx(real_inner(a).dot(x)).epsilon(1e-12));
        CHECK((unstack(x, 0, 4) - w).norm() < 1e-15);
    }
}

TEST_CASE("surrogate audits")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ud(0.0, 50.0);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        const Eigen::VectorXcd a = random_cvec(rng, 6);
        const Eigen::VectorXcd x0 = random_cvec(rng, 6);
        const Eigen::VectorXcd x = random_cvec(rng, 6, 2.0);
        const auto lo = taylor_lower_quadratic(a, x0);
        const double exact = std::norm(a.dot(x));
        if (lo(x) > exact + 1e-10 * std::max(1.0, exact))
            ++violations;
        CHECK(std::abs(lo(x0) - std::norm(a.dot(x0))) <= 1e-12 * std::max(1.0, std::norm(a.dot(x0))));

        const double v0 = ud(rng), v = ud(rng);
        const auto up = taylor_upper_logistic(v0);
        if (up(v) < std::log2(1.0 + v) - 1e-10)
            ++violations;
        CHECK(std::abs(up(v0) - std::log2(1.0 + v0)) <= 1e-12);

        const double z0 = 0.01 + ud(rng), z = 0.01 + ud(rng);
        const auto cp = taylor_convex_power(z0, -0.8);
        if (cp(z) > std::pow(z, -0.8) + 1e-10)
            ++violations;
        CHECK(std::abs(cp(z0) - std::pow(z0, -0.8)) <= 1e-12);
    }
    CHECK(violations == 0);
    CHECK_THROWS(taylor_upper_logistic(-0.1));
    CHECK_THROWS(taylor_convex_power(0.0, -1.0));
}
