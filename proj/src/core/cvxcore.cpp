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

#include "core/cvxcore.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace uavsec::cvx
{

namespace
{

constexpr double psd_tol = 1e-8;

bool scalar_convex(const ScalarTerm &t)
{
    if (t.scale == 0.0)
        return true;
    if (t.kind == ScalarKind::neg_log)
        return t.coeff >= 0.0;
    const double e = t.exponent;
    if (t.coeff >= 0.0)
        return e <= 0.0 || e >= 1.0;
    return e >= 0.0 && e <= 1.0;
}

double scalar_arg(const ScalarTerm &t, double x) { return t.scale * x + t.shift; }

double scalar_value(const ScalarTerm &t, double y)
{
    if (t.kind == ScalarKind::neg_log)
        return -t.coeff * std::log(y);
    return t.coeff * std::pow(y, t.exponent);
}

// first and second derivative with respect to x
void scalar_derivs(const ScalarTerm &t, double y, double &d1, double &d2)
{
    const double a = t.scale;
    if (t.kind == ScalarKind::neg_log)
    {
        d1 = -t.coeff * a / y;
        d2 = t.coeff * a * a / (y * y);
        return;
    }
    const double e = t.exponent;
    d1 = t.coeff * e * std::pow(y, e - 1.0) * a;
    d2 = t.coeff * e * (e - 1.0) * std::pow(y, e - 2.0) * a * a;
}

void check_psd(const Eigen::MatrixXd &m, const std::string &what)
{
    if (m.size() == 0)
        return;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -psd_tol * top)
        throw std::invalid_argument(what + ": quadratic part is not positive semidefinite");
}

// Newton matrix, dense for small problems and sparse otherwise. A sink in
// discard mode ignores every contribution.
class Hessian
{
public:
    enum class Mode
    {
        dense,
        sparse,
        discard,
    };

    Hessian(int n, Mode mode) : n_(n), mode_(mode)
    {
        if (mode_ == Mode::dense)
            dense_.setZero(n, n);
    }

    void reset()
    {
        if (mode_ == Mode::dense)
            dense_.setZero(n_, n_);
        trips_.clear();
    }

    void add(int i, int j, double v)
    {
        if (mode_ == Mode::dense)
            dense_(i, j) += v;
        else if (mode_ == Mode::sparse)
            trips_.emplace_back(i, j, v);
    }

    void add_matrix(const Eigen::MatrixXd &m, double scale)
    {
        if (mode_ == Mode::dense)
            dense_ += scale * m;
        else if (mode_ == Mode::sparse)
            for (int j = 0; j < m.cols(); ++j)
                for (int i = 0; i < m.rows(); ++i)
                    if (m(i, j) != 0.0)
                        trips_.emplace_back(i, j, scale * m(i, j));
    }

    double diag_scale()
    {
        double top = 1.0;
        if (mode_ == Mode::dense)
            return std::max(top, dense_.diagonal().cwiseAbs().maxCoeff());
        Eigen::VectorXd d = Eigen::VectorXd::Zero(n_);
        for (const auto &t : trips_)
            if (t.row() == t.col())
                d[t.row()] += t.value();
        return std::max(top, d.cwiseAbs().maxCoeff());
    }

    // Solves (H + reg I) d = rhs; false on factorization failure.
    bool solve(const Eigen::VectorXd &rhs, double reg, Eigen::VectorXd &d)
    {
        if (mode_ == Mode::dense)
        {
            Eigen::MatrixXd hr = dense_;
            if (reg > 0.0)
                hr.diagonal().array() += reg;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(hr);
            if (ldlt.info() != Eigen::Success)
                return false;
            d = ldlt.solve(rhs);
            return true;
        }
        std::vector<Eigen::Triplet<double>> all = trips_;
        for (int i = 0; i < n_; ++i)
            all.emplace_back(i, i, reg);
        Eigen::SparseMatrix<double> hs(n_, n_);
        hs.setFromTriplets(all.begin(), all.end());
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(hs);
        if (ldlt.info() != Eigen::Success)
            return false;
        d = ldlt.solve(rhs);
        return ldlt.info() == Eigen::Success;
    }

private:
    int n_;
    Mode mode_;
    Eigen::MatrixXd dense_;
    std::vector<Eigen::Triplet<double>> trips_;
};

// Barrier view over either the problem itself or its phase-1 extension.
struct Oracle
{
    const ConvexSubproblem &p;
    bool phase1 = false; // extra variable s at index n, constraints c_i(x) - s <= 0, -s - 1 <= 0
    // In phase 1 the objective scalars only contribute domain guards.

    int n() const { return p.dim() + (phase1 ? 1 : 0); }
    int m() const { return p.constraint_count() + (phase1 ? 1 + guard_count() : 0); }
    int guard_count() const { return static_cast<int>(p.objective_scalars().size()); }

    bool domain(const Eigen::VectorXd &z) const
    {
        for (const auto &t : p.objective_scalars())
            if (!(scalar_arg(t, z[t.index]) > 0.0))
                return false;
        for (const auto &c : p.compiled())
            for (const auto &t : c.scalars)
                if (!(scalar_arg(t, z[c.support[static_cast<std::size_t>(t.index)]]) > 0.0))
                    return false;
        return z.allFinite();
    }

    double f0(const Eigen::VectorXd &z) const
    {
        if (phase1)
            return z[p.dim()];
        return p.objective(z);
    }

    // gradient into g, hscale times the Hessian into h
    void f0_derivs(const Eigen::VectorXd &z, Eigen::VectorXd &g, Hessian &h, double hscale = 1.0) const
    {
        const int N = n();
        g.setZero(N);
        if (phase1)
        {
            g[p.dim()] = 1.0;
            return;
        }
        g = p.objective_lin();
        if (p.has_quad_objective())
        {
            g += 2.0 * p.objective_quad() * z;
            h.add_matrix(p.objective_quad(), 2.0 * hscale);
        }
        for (const auto &t : p.objective_scalars())
        {
            double d1 = 0.0, d2 = 0.0;
            scalar_derivs(t, scalar_arg(t, z[t.index]), d1, d2);
            g[t.index] += d1;
            h.add(t.index, t.index, hscale * d2);
        }
    }

    // Value of constraint k (phase-1 numbering: originals, then s-bound, then guards).
    double cval(int k, const Eigen::VectorXd &z) const
    {
        const int mc = p.constraint_count();
        if (k < mc)
        {
            const double v = p.constraint_value(k, z.head(p.dim()));
            return phase1 ? v - z[p.dim()] : v;
        }
        if (k == mc)
            return -z[p.dim()] - 1.0;
        const auto &t = p.objective_scalars()[static_cast<std::size_t>(k - mc - 1)];
        return -scalar_arg(t, z[t.index]);
    }

    // Adds w1 * grad grad' + w2 * hess of constraint k into (g, h) with g += w2 * grad.
    void cderivs_accumulate(int k, const Eigen::VectorXd &z, double wg, double wouter, double whess,
                            Eigen::VectorXd &g, Hessian &h) const
    {
        const int mc = p.constraint_count();
        if (k < mc)
        {
            const auto &c = p.compiled()[static_cast<std::size_t>(k)];
            const auto &sup = c.support;
            const int ks = static_cast<int>(sup.size());
            Eigen::VectorXd xl(ks);
            for (int i = 0; i < ks; ++i)
                xl[i] = z[sup[static_cast<std::size_t>(i)]];
            Eigen::VectorXd gl = c.lin;
            Eigen::MatrixXd hl = Eigen::MatrixXd::Zero(ks, ks);
            if (c.quad.size() > 0)
            {
                gl += 2.0 * c.quad * xl;
                hl += 2.0 * c.quad;
            }
            for (const auto &t : c.scalars)
            {
                double d1 = 0.0, d2 = 0.0;
                scalar_derivs(t, scalar_arg(t, xl[t.index]), d1, d2);
                gl[t.index] += d1;
                hl(t.index, t.index) += d2;
            }
            // local gradient extended by -1 on s in phase 1
            const int sidx = phase1 ? p.dim() : -1;
            for (int a = 0; a < ks; ++a)
            {
                const int ia = sup[static_cast<std::size_t>(a)];
                g[ia] += wg * gl[a];
                for (int b = 0; b < ks; ++b)
                    h.add(ia, sup[static_cast<std::size_t>(b)], wouter * gl[a] * gl[b] + whess * hl(a, b));
                if (sidx >= 0)
                {
                    h.add(ia, sidx, -wouter * gl[a]);
                    h.add(sidx, ia, -wouter * gl[a]);
                }
            }
            if (sidx >= 0)
            {
                g[sidx] -= wg;
                h.add(sidx, sidx, wouter);
            }
            return;
        }
        if (k == mc)
        {
            const int s = p.dim();
            g[s] -= wg;
            h.add(s, s, wouter);
            return;
        }
        const auto &t = p.objective_scalars()[static_cast<std::size_t>(k - mc - 1)];
        g[t.index] -= wg * t.scale;
        h.add(t.index, t.index, wouter * t.scale * t.scale);
    }
};

struct BarrierResult
{
    Eigen::VectorXd z;
    double t = 1.0;
    int iterations = 0;
    bool converged = false;
    bool early = false;
};

double barrier_value(const Oracle &o, const Eigen::VectorXd &z, double t)
{
    if (!o.domain(z))
        return std::numeric_limits<double>::infinity();
    double phi = t * o.f0(z);
    for (int k = 0; k < o.m(); ++k)
    {
        const double v = o.cval(k, z);
        if (!(v < 0.0))
            return std::numeric_limits<double>::infinity();
        phi -= std::log(-v);
    }
    return std::isfinite(phi) ? phi : std::numeric_limits<double>::infinity();
}

template <typename Stop>
BarrierResult barrier(const Oracle &o, Eigen::VectorXd z, double gap_tol, int budget, Stop stop)
{
    BarrierResult r;
    const int N = o.n();
    const int M = o.m();
    // phase 1 needs the centre of its first stage to sit at negative slack
    double t = o.phase1 ? 10.0 : 1.0;
    if (M > 0 && !o.phase1)
    {
        // balance objective and barrier gradients at the start
        Eigen::VectorXd g0;
        Hessian none(N, Hessian::Mode::discard);
        o.f0_derivs(z, g0, none);
        Eigen::VectorXd gb = Eigen::VectorXd::Zero(N);
        for (int k = 0; k < M; ++k)
        {
            const double v = o.cval(k, z);
            o.cderivs_accumulate(k, z, 1.0 / -v, 0.0, 0.0, gb, none);
        }
        const double gn = g0.norm();
        if (gn > 0.0)
            t = std::clamp(gb.norm() / gn, 1e-3, 1e3);
    }
    const double mu = 20.0;
    Eigen::VectorXd g(N);
    Hessian h(N, N > 64 ? Hessian::Mode::sparse : Hessian::Mode::dense);
    for (;;)
    {
        // centering
        double prev_dec = std::numeric_limits<double>::infinity();
        for (int inner = 0; inner < 200; ++inner)
        {
            if (r.iterations >= budget)
            {
                r.z = z;
                r.t = t;
                return r;
            }
            Eigen::VectorXd g0;
            h.reset();
            o.f0_derivs(z, g0, h, t);
            g = t * g0;
            for (int k = 0; k < M; ++k)
            {
                const double v = o.cval(k, z);
                o.cderivs_accumulate(k, z, 1.0 / -v, 1.0 / (v * v), 1.0 / -v, g, h);
            }
            Eigen::VectorXd d;
            double reg = 0.0;
            const double hscale = h.diag_scale();
            for (int attempt = 0; attempt < 6; ++attempt)
            {
                if (h.solve(-g, reg, d) && d.allFinite() && g.dot(d) < 0.0)
                    break;
                reg = reg == 0.0 ? 1e-12 * hscale : reg * 100.0;
                d.resize(0);
            }
            if (d.size() == 0)
                d = -g / hscale;
            const double dec = -g.dot(d);
            ++r.iterations;
            if (dec / 2.0 <= 1e-20 || (dec < 1e-10 && dec > 0.25 * prev_dec))
                break;
            prev_dec = dec;
            const double phi = barrier_value(o, z, t);
            double step = 1.0;
            bool moved = false;
            // inside the quadratic convergence region a full step is safe and
            // the Armijo test is dominated by rounding
            if (dec < 0.01 && std::isfinite(barrier_value(o, z + d, t)))
            {
                z += d;
                moved = true;
                step = 0.0;
            }
            while (!moved && step > 1e-14)
            {
                const Eigen::VectorXd zn = z + step * d;
                const double pn = barrier_value(o, zn, t);
                if (pn <= phi - 0.01 * step * dec)
                {
                    z = zn;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (stop(z))
            {
                r.z = z;
                r.t = t;
                r.early = true;
                return r;
            }
            if (!moved)
                break;
        }
        if (M == 0 || M / t < gap_tol)
        {
            r.converged = true;
            break;
        }
        t *= mu;
    }
    r.z = z;
    r.t = t;
    return r;
}

double kkt_residual(const ConvexSubproblem &p, const Eigen::VectorXd &x, double t)
{
    Oracle o{p, false};
    const int N = p.dim();
    Eigen::VectorXd g0;
    Hessian scratch(N, Hessian::Mode::discard);
    o.f0_derivs(x, g0, scratch);

    // barrier multipliers lambda_i = 1 / (-t f_i)
    Eigen::VectorXd g = g0;
    std::vector<int> active;
    for (int k = 0; k < p.constraint_count(); ++k)
    {
        const double v = p.constraint_value(k, x);
        if (v < 0.0)
            o.cderivs_accumulate(k, x, 1.0 / (-t * v), 0.0, 0.0, g, scratch);
        if (v >= -1e-7)
            active.push_back(k);
    }
    double best = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;

    // least-squares multipliers on the near-active set; rounding in -f_i near
    // the boundary makes the barrier estimate coarse
    if (!active.empty())
    {
        Eigen::MatrixXd G(N, static_cast<Eigen::Index>(active.size()));
        for (std::size_t a = 0; a < active.size(); ++a)
        {
            Eigen::VectorXd gi = Eigen::VectorXd::Zero(N);
            o.cderivs_accumulate(active[a], x, 1.0, 0.0, 0.0, gi, scratch);
            G.col(static_cast<Eigen::Index>(a)) = gi;
        }
        const Eigen::VectorXd lam = G.completeOrthogonalDecomposition().solve(-g0);
        if ((lam.array() >= 0.0).all())
            best = std::min(best, (g0 + G * lam).cwiseAbs().maxCoeff());
    }
    return best;
}

} // namespace

const char *to_string(SolveStatus s)
{
    switch (s)
    {
    case SolveStatus::optimal:
        return "optimal";
    case SolveStatus::max_iters:
        return "max_iters";
    case SolveStatus::infeasible:
        return "infeasible";
    }
    return "unknown";
}

ConvexSubproblem::ConvexSubproblem(int dim) : dim_(dim)
{
    if (dim < 1)
        throw std::invalid_argument("ConvexSubproblem: dimension must be positive");
    obj_lin_ = Eigen::VectorXd::Zero(dim);
}

void ConvexSubproblem::set_objective(const Eigen::MatrixXd &quad, const Eigen::VectorXd &lin, double constant)
{
    if (quad.rows() != dim_ || quad.cols() != dim_ || lin.size() != dim_)
        throw std::invalid_argument("set_objective: dimension mismatch");
    Eigen::MatrixXd q = 0.5 * (quad + quad.transpose());
    check_psd(q, "objective");
    obj_quad_ = q;
    has_quad_ = !q.isZero(0.0);
    obj_lin_ = lin;
    obj_const_ = constant;
}

void ConvexSubproblem::set_linear_objective(const Eigen::VectorXd &lin, double constant)
{
    if (lin.size() != dim_)
        throw std::invalid_argument("set_linear_objective: dimension mismatch");
    has_quad_ = false;
    obj_quad_.resize(0, 0);
    obj_lin_ = lin;
    obj_const_ = constant;
}

void ConvexSubproblem::add_objective_term(const ScalarTerm &term)
{
    if (term.index < 0 || term.index >= dim_)
        throw std::invalid_argument("add_objective_term: index out of range");
    if (!scalar_convex(term))
        throw std::invalid_argument("add_objective_term: term is not convex");
    obj_scalars_.push_back(term);
}

void ConvexSubproblem::add_constraint(const Constraint &c)
{
    Compiled out;
    out.label = c.label;
    out.constant = c.constant;
    auto local = [&](int i) {
        if (i < 0 || i >= dim_)
            throw std::invalid_argument("constraint '" + c.label + "': index out of range");
        auto it = std::find(out.support.begin(), out.support.end(), i);
        if (it != out.support.end())
            return static_cast<int>(it - out.support.begin());
        out.support.push_back(i);
        return static_cast<int>(out.support.size()) - 1;
    };
    for (const auto &q : c.quad)
    {
        local(q.i);
        local(q.j);
    }
    for (const auto &l : c.lin)
        local(l.i);
    for (const auto &s : c.scalars)
        local(s.index);
    const int k = static_cast<int>(out.support.size());
    out.lin = Eigen::VectorXd::Zero(k);
    if (!c.quad.empty())
    {
        out.quad = Eigen::MatrixXd::Zero(k, k);
        for (const auto &q : c.quad)
        {
            const int a = local(q.i), b = local(q.j);
            out.quad(a, b) += 0.5 * q.v;
            out.quad(b, a) += 0.5 * q.v;
        }
        check_psd(out.quad, "constraint '" + c.label + "'");
    }
    for (const auto &l : c.lin)
        out.lin[local(l.i)] += l.v;
    for (auto s : c.scalars)
    {
        if (!scalar_convex(s))
            throw std::invalid_argument("constraint '" + c.label + "': scalar term is not convex");
        s.index = local(s.index);
        out.scalars.push_back(s);
    }
    cons_.push_back(std::move(out));
}

void ConvexSubproblem::add_affine(std::vector<LinEntry> a, double b, std::string label)
{
    Constraint c;
    c.lin = std::move(a);
    c.constant = b;
    c.label = std::move(label);
    add_constraint(c);
}

void ConvexSubproblem::add_ball(const std::vector<int> &idx, const std::vector<double> &center, double radius,
                                std::string label, double scale)
{
    if (idx.size() != center.size())
        throw std::invalid_argument("add_ball: index and center sizes differ");
    if (!(scale > 0.0))
        throw std::invalid_argument("add_ball: scale must be positive");
    Constraint c;
    c.label = std::move(label);
    double k = -radius * radius;
    for (std::size_t i = 0; i < idx.size(); ++i)
    {
        c.quad.push_back({idx[i], idx[i], scale});
        c.lin.push_back({idx[i], -2.0 * center[i] * scale});
        k += center[i] * center[i];
    }
    c.constant = k * scale;
    add_constraint(c);
}

double ConvexSubproblem::objective(const Eigen::VectorXd &x) const
{
    double v = obj_lin_.dot(x) + obj_const_;
    if (has_quad_)
        v += x.dot(obj_quad_ * x);
    for (const auto &t : obj_scalars_)
    {
        const double y = scalar_arg(t, x[t.index]);
        if (!(y > 0.0))
            return std::numeric_limits<double>::infinity();
        v += scalar_value(t, y);
    }
    return v;
}

Eigen::VectorXd ConvexSubproblem::objective_gradient(const Eigen::VectorXd &x) const
{
    Oracle o{*this, false};
    Eigen::VectorXd g;
    Hessian h(dim_, Hessian::Mode::discard);
    o.f0_derivs(x, g, h);
    return g;
}

double ConvexSubproblem::constraint_value(int i, const Eigen::VectorXd &x) const
{
    const auto &c = cons_.at(static_cast<std::size_t>(i));
    const int k = static_cast<int>(c.support.size());
    Eigen::VectorXd xl(k);
    for (int a = 0; a < k; ++a)
        xl[a] = x[c.support[static_cast<std::size_t>(a)]];
    double v = c.lin.dot(xl) + c.constant;
    if (c.quad.size() > 0)
        v += xl.dot(c.quad * xl);
    for (const auto &t : c.scalars)
    {
        const double y = scalar_arg(t, xl[t.index]);
        if (!(y > 0.0))
            return std::numeric_limits<double>::infinity();
        v += scalar_value(t, y);
    }
    return v;
}

double ConvexSubproblem::max_violation(const Eigen::VectorXd &x) const
{
    double worst = 0.0;
    for (int i = 0; i < constraint_count(); ++i)
        worst = std::max(worst, constraint_value(i, x));
    return worst;
}

bool ConvexSubproblem::in_domain(const Eigen::VectorXd &x) const
{
    Oracle o{*this, false};
    return o.domain(x);
}

SolveReport solve(const ConvexSubproblem &p, const Eigen::VectorXd &start, const SolveOptions &opts)
{
    const int n = p.dim();
    if (start.size() != n)
        throw std::invalid_argument("solve: start has wrong dimension");
    if (!p.in_domain(start))
        throw std::invalid_argument("solve: start lies outside the domain of a scalar term");

    SolveReport rep;
    const int mc = p.constraint_count();
    Eigen::VectorXd x = start;
    double worst = mc ? -std::numeric_limits<double>::infinity() : -1.0;
    for (int i = 0; i < mc; ++i)
        worst = std::max(worst, p.constraint_value(i, x));

    // a start within rounding of the boundary gives the barrier a useless gradient
    const double interior = 1e-7;
    if (worst > -interior)
    {
        Oracle o1{p, true};
        Eigen::VectorXd z(n + 1);
        z.head(n) = x;
        z[n] = std::max(worst, 0.0) + 1.0;
        auto stop = [&](const Eigen::VectorXd &zz) { return zz[n] < -interior; };
        BarrierResult b = barrier(o1, z, 1e-10, opts.max_newton, stop);
        rep.iterations += b.iterations;
        rep.phase1_iterations = b.iterations;
        const double s = b.z[n];
        x = b.z.head(n);
        if (s >= 0.0)
        {
            rep.x = start;
            rep.objective = p.objective(start);
            rep.max_violation = std::max(0.0, worst);
            rep.status = SolveStatus::infeasible;
            if (s <= opts.infeas_tol)
            {
                // feasible up to tolerance but without a usable interior
                rep.x = x;
                rep.objective = p.objective(x);
                rep.max_violation = p.max_violation(x);
                rep.status = SolveStatus::max_iters;
            }
            rep.gap = s;
            return rep;
        }
    }

    Oracle o{p, false};
    const int budget = std::max(1, opts.max_newton - rep.iterations);
    BarrierResult b = barrier(o, x, opts.gap_tol, budget, [](const Eigen::VectorXd &) { return false; });
    rep.iterations += b.iterations;
    rep.x = b.z;
    rep.objective = p.objective(b.z);
    rep.max_violation = p.max_violation(b.z);
    rep.gap = mc / b.t;
    rep.kkt_residual = kkt_residual(p, b.z, b.t);
    rep.status = b.converged ? SolveStatus::optimal : SolveStatus::max_iters;

    const double start_viol = p.max_violation(start);
    const double start_obj = p.objective(start);
    if (start_viol <= opts.feas_tol && start_obj < rep.objective)
    {
        rep.x = start;
        rep.objective = start_obj;
        rep.max_violation = start_viol;
    }
    return rep;
}

// ------------------------------------------------------------------------

QuadMinorant taylor_lower_quadratic(const Eigen::VectorXcd &a, const Eigen::VectorXcd &x0)
{
    if (a.size() != x0.size())
        throw std::invalid_argument("taylor_lower_quadratic: size mismatch");
    const std::complex<double> ax = a.dot(x0);
    QuadMinorant m;
    // b^H x = conj(a^H x0) a^H x
    m.b = a * ax;
    m.offset = std::norm(ax);
    return m;
}

Affine1D taylor_upper_logistic(double v0)
{
    if (!(v0 >= 0.0) || !std::isfinite(v0))
        throw std::invalid_argument("taylor_upper_logistic: expansion point must be finite and non-negative");
    return {std::log2(1.0 + v0), 1.0 / (std::log(2.0) * (1.0 + v0)), v0};
}

Affine1D taylor_convex_power(double z0, double exponent)
{
    if (!(z0 > 0.0) || !std::isfinite(z0))
        throw std::invalid_argument("taylor_convex_power: expansion point must be positive");
    if (exponent > 0.0 && exponent < 1.0)
        throw std::invalid_argument("taylor_convex_power: exponent must make z^e convex");
    return {std::pow(z0, exponent), exponent * std::pow(z0, exponent - 1.0), z0};
}

Eigen::VectorXd stack(const Eigen::VectorXcd &w)
{
    const auto n = w.size();
    Eigen::VectorXd x(2 * n);
    x.head(n) = w.real();
    x.tail(n) = w.imag();
    return x;
}

Eigen::VectorXcd unstack(const Eigen::VectorXd &x, int offset, int n)
{
    Eigen::VectorXcd w(n);
    for (int i = 0; i < n; ++i)
        w[i] = {x[offset + i], x[offset + n + i]};
    return w;
}

Eigen::VectorXd real_inner(const Eigen::VectorXcd &b) { return stack(b); }

Eigen::MatrixXd modulus_square_form(const Eigen::VectorXcd &a)
{
    // a^H w = (p + j q)' x with p = [ar; ai], q = [-ai; ar]
    const auto n = a.size();
    Eigen::VectorXd p(2 * n), q(2 * n);
    p << a.real(), a.imag();
    q << -a.imag(), a.real();
    return p * p.transpose() + q * q.transpose();
}

} // namespace uavsec::cvx
