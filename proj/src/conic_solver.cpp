// SPDX-License-Identifier: Apache-2.0
//
// squintless: wideband beam-squint mitigation with rotatable antenna arrays
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

#include "squintless/conic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace squintless
{

using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("Hermitian matrix must be square");
    const double scale = std::max(1.0, m.norm());
    if ((m - m.adjoint()).norm() > 1e-8 * scale)
        throw std::invalid_argument("matrix is not Hermitian");
    m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::outer(const Eigen::VectorXcd &v)
{
    return HermitianMatrix(v * v.adjoint());
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n)
{
    return HermitianMatrix(Mat::Zero(n, n));
}

HermitianMatrix psd_project(const HermitianMatrix &h)
{
    if (!h.matrix().allFinite())
        throw std::invalid_argument("psd_project: matrix has non-finite entries");
    Eigen::SelfAdjointEigenSolver<Mat> es(h.matrix());
    const RVec clipped = es.eigenvalues().cwiseMax(0.0);
    return HermitianMatrix(es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint());
}

HermitianMatrix SdpProblem::gain_matrix(std::size_t l) const
{
    const Mat &f = gain_factors.at(l);
    return HermitianMatrix(f * f.adjoint());
}

SdpProblem SdpProblem::from_steering(const Eigen::MatrixXcd &steering, HermitianMatrix linear_term,
                                     double diag_value)
{
    SdpProblem p;
    p.gain_factors.reserve(static_cast<std::size_t>(steering.cols()));
    for (Eigen::Index l = 0; l < steering.cols(); ++l)
        p.gain_factors.emplace_back(steering.col(l));
    p.linear_term = std::move(linear_term);
    p.diag_value = diag_value;
    return p;
}

SdpProblem SdpProblem::from_matrices(std::span<const HermitianMatrix> gain_matrices, HermitianMatrix linear_term,
                                     double diag_value)
{
    SdpProblem p;
    for (const auto &v : gain_matrices)
    {
        Eigen::SelfAdjointEigenSolver<Mat> es(v.matrix());
        const RVec &ev = es.eigenvalues();
        const double cutoff = 1e-14 * std::max(1.0, ev.cwiseAbs().maxCoeff());
        if (ev.minCoeff() < -1e-10 * std::max(1.0, ev.cwiseAbs().maxCoeff()))
            throw std::invalid_argument("gain matrices must be positive semidefinite");
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            if (ev[i] > cutoff)
                keep.push_back(i);
        Mat f(v.rows(), static_cast<Eigen::Index>(std::max<std::size_t>(keep.size(), 1)));
        f.setZero();
        for (std::size_t k = 0; k < keep.size(); ++k)
            f.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]) * std::sqrt(ev[keep[k]]);
        p.gain_factors.push_back(std::move(f));
    }
    p.linear_term = std::move(linear_term);
    p.diag_value = diag_value;
    return p;
}

namespace
{

Mat herm(const Mat &y)
{
    return 0.5 * (y + y.adjoint());
}

// Standard-form view of the problem:
//   min <C, X>  s.t.  A(X) = b,  X = (W, x) in H+ x R+^{L+1}
// with x = (sigma, t_1..t_L). Constraint i < L reads Tr(V_i W) - sigma - t_i = 0,
// constraint L + n reads W(n, n) = diag_value. Every W-block constraint matrix
// is stored through a factor, so A_i = F_i F_i^H with F_i a set of columns of F.
struct Layout
{
    Mat F;
    std::vector<int> owner;
    Eigen::Index n = 0; // matrix dimension
    int num_gain = 0;   // L
    int m = 0;          // L + n
};

Layout build_layout(const SdpProblem &p)
{
    Layout lay;
    lay.n = p.dimension();
    lay.num_gain = static_cast<int>(p.gain_factors.size());
    lay.m = lay.num_gain + static_cast<int>(lay.n);

    Eigen::Index cols = lay.n;
    for (const auto &f : p.gain_factors)
        cols += f.cols();
    lay.F.resize(lay.n, cols);
    lay.owner.reserve(static_cast<std::size_t>(cols));

    Eigen::Index c = 0;
    for (int l = 0; l < lay.num_gain; ++l)
    {
        const Mat &f = p.gain_factors[static_cast<std::size_t>(l)];
        lay.F.middleCols(c, f.cols()) = f;
        for (Eigen::Index k = 0; k < f.cols(); ++k)
            lay.owner.push_back(l);
        c += f.cols();
    }
    lay.F.rightCols(lay.n) = Mat::Identity(lay.n, lay.n);
    for (Eigen::Index k = 0; k < lay.n; ++k)
        lay.owner.push_back(lay.num_gain + static_cast<int>(k));
    return lay;
}

RVec apply_a(const Layout &lay, const Mat &y)
{
    const Mat yf = y * lay.F;
    RVec out = RVec::Zero(lay.m);
    for (Eigen::Index p = 0; p < lay.F.cols(); ++p)
        out[lay.owner[p]] += std::real(lay.F.col(p).dot(yf.col(p)));
    return out;
}

Mat apply_at(const Layout &lay, const RVec &u)
{
    Mat fu = lay.F;
    for (Eigen::Index p = 0; p < lay.F.cols(); ++p)
        fu.col(p) *= u[lay.owner[p]];
    return herm(fu * lay.F.adjoint());
}

// Linear block: constraint i < L has coefficient -1 on sigma and -1 on t_i.
RVec apply_a_lp(const Layout &lay, const RVec &x)
{
    RVec out = RVec::Zero(lay.m);
    for (int i = 0; i < lay.num_gain; ++i)
        out[i] = -x[0] - x[1 + i];
    return out;
}

RVec apply_at_lp(const Layout &lay, const RVec &u)
{
    RVec out(lay.num_gain + 1);
    out[0] = -u.head(lay.num_gain).sum();
    for (int i = 0; i < lay.num_gain; ++i)
        out[1 + i] = -u[i];
    return out;
}

double max_step_psd(const Mat &x, const Mat &dx)
{
    Eigen::LLT<Mat> llt(x);
    if (llt.info() != Eigen::Success)
        return 0.0;
    const Mat y = llt.matrixL().solve(dx);
    const Mat b = llt.matrixL().solve(y.adjoint()); // L^-1 dX^H L^-H
    const double lmin = Eigen::SelfAdjointEigenSolver<Mat>(herm(b), Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

double max_step_lp(const RVec &x, const RVec &dx)
{
    double step = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (dx[i] < 0.0)
            step = std::min(step, -x[i] / dx[i]);
    return step;
}

struct Direction
{
    Mat dX, dS;
    RVec dx, ds, du;
};

std::string describe(const SdpResiduals &r, int iterations)
{
    std::ostringstream os;
    os << "after " << iterations << " iterations: primal " << r.primal << ", dual " << r.dual << ", gap " << r.gap;
    return os.str();
}

} // namespace

SdpSolution solve_maxmin_sdp(const SdpProblem &problem)
{
    const Eigen::Index n = problem.dimension();
    if (n < 1)
        throw std::invalid_argument("SDP dimension must be >= 1");
    if (problem.gain_factors.empty())
        throw std::invalid_argument("SDP needs at least one gain constraint");
    if (!(problem.diag_value > 0.0))
        throw std::invalid_argument("infeasible diagonal constraint: diag_value must be positive");
    for (const auto &f : problem.gain_factors)
        if (f.rows() != n || !f.allFinite())
            throw std::invalid_argument("gain factor has the wrong row count or non-finite entries");
    if (!problem.linear_term.matrix().allFinite())
        throw std::invalid_argument("linear term has non-finite entries");
    if (!(problem.tolerance > 0.0) || problem.max_iterations < 1)
        throw std::invalid_argument("SDP tolerance and iteration limit must be positive");

    const Layout lay = build_layout(problem);
    const int L = lay.num_gain;
    const int m = lay.m;
    const double cone_order = static_cast<double>(n + L + 1);

    const Mat cw = -problem.linear_term.matrix();
    RVec clp = RVec::Zero(L + 1);
    clp[0] = -1.0;
    RVec b = RVec::Zero(m);
    b.tail(n).setConstant(problem.diag_value);
    const double norm_b = b.norm();
    const double norm_c = std::sqrt(cw.squaredNorm() + 1.0);

    const double gap_target = 1e-2 * problem.tolerance;
    const double feas_target = 1e-10;

    Mat X = Mat::Identity(n, n);
    RVec x = RVec::Ones(L + 1);
    const double eta = 1.0 + problem.linear_term.matrix().norm();
    Mat S = eta * Mat::Identity(n, n);
    RVec s = RVec::Constant(L + 1, eta);
    RVec u = RVec::Zero(m);

    double pobj = 0.0, dobj = 0.0, relgap = 1.0, pinf = 1.0, dinf = 1.0;
    int iter = 0;
    bool converged = false;

    for (; iter < problem.max_iterations; ++iter)
    {
        const RVec rp = b - apply_a(lay, X) - apply_a_lp(lay, x);
        const Mat rd_w = herm(cw - apply_at(lay, u) - S);
        const RVec rd = clp - apply_at_lp(lay, u) - s;

        pobj = std::real((cw.adjoint() * X).trace()) + clp.dot(x);
        dobj = b.dot(u);
        relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        pinf = rp.norm() / (1.0 + norm_b);
        dinf = std::sqrt(rd_w.squaredNorm() + rd.squaredNorm()) / (1.0 + norm_c);
        if (relgap <= gap_target && pinf <= feas_target && dinf <= feas_target)
        {
            converged = true;
            break;
        }

        const double mu = (std::real((X * S).trace()) + x.dot(s)) / cone_order;

        Eigen::LLT<Mat> s_llt(S);
        if (s_llt.info() != Eigen::Success)
            break;
        const Mat G = herm(s_llt.solve(Mat::Identity(n, n)));

        // Schur complement M_ij = Re Tr(A_i X A_j G) + linear block.
        const Mat P = lay.F.adjoint() * X * lay.F;
        const Mat Q = lay.F.adjoint() * G * lay.F;
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index q = 0; q < lay.F.cols(); ++q)
            for (Eigen::Index p = 0; p < lay.F.cols(); ++p)
                M(lay.owner[p], lay.owner[q]) += std::real(P(p, q) * Q(q, p));
        const double x0s0 = x[0] / s[0];
        M.topLeftCorner(L, L).array() += x0s0;
        for (int i = 0; i < L; ++i)
            M(i, i) += x[1 + i] / s[1 + i];
        M = 0.5 * (M + M.transpose()).eval();

        Eigen::LLT<Eigen::MatrixXd> m_llt(M);
        Eigen::LDLT<Eigen::MatrixXd> m_ldlt;
        const bool use_llt = m_llt.info() == Eigen::Success;
        if (!use_llt)
        {
            M.diagonal().array() += 1e-14 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
            m_ldlt.compute(M);
            if (m_ldlt.info() != Eigen::Success)
                break;
        }

        const Mat x_rd_g = herm(X * rd_w * G);
        const RVec x_rd_s = x.cwiseProduct(rd).cwiseQuotient(s);
        auto solve_direction = [&](const Mat &rc_w, const RVec &rc) {
            Direction d;
            const RVec rhs = rp - apply_a(lay, rc_w - x_rd_g) - apply_a_lp(lay, rc - x_rd_s);
            d.du = use_llt ? RVec(m_llt.solve(rhs)) : RVec(m_ldlt.solve(rhs));
            d.dS = herm(rd_w - apply_at(lay, d.du));
            d.ds = rd - apply_at_lp(lay, d.du);
            d.dX = herm(rc_w - herm(X * d.dS * G));
            d.dx = rc - x.cwiseProduct(d.ds).cwiseQuotient(s);
            return d;
        };

        // Predictor (affine scaling).
        const Direction aff = solve_direction(-X, -x);
        const double ap_aff = std::min({1.0, max_step_psd(X, aff.dX), max_step_lp(x, aff.dx)});
        const double ad_aff = std::min({1.0, max_step_psd(S, aff.dS), max_step_lp(s, aff.ds)});
        const double mu_aff = (std::real(((X + ap_aff * aff.dX) * (S + ad_aff * aff.dS)).trace()) +
                               (x + ap_aff * aff.dx).dot(s + ad_aff * aff.ds)) /
                              cone_order;
        const double centering = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

        // Corrector.
        const RVec inv_s = s.cwiseInverse();
        const Mat rc_w = centering * mu * G - X - herm(aff.dX * aff.dS * G);
        const RVec rc = centering * mu * inv_s - x - aff.dx.cwiseProduct(aff.ds).cwiseProduct(inv_s);
        const Direction dir = solve_direction(rc_w, rc);

        const double tau = std::max(0.9, 1.0 - 10.0 * mu / (1.0 + std::abs(pobj)));
        const double tau_c = std::min(tau, 0.995);
        const double ap = std::min({1.0, tau_c * max_step_psd(X, dir.dX), tau_c * max_step_lp(x, dir.dx)});
        const double ad = std::min({1.0, tau_c * max_step_psd(S, dir.dS), tau_c * max_step_lp(s, dir.ds)});
        if (!(ap > 0.0) || !(ad > 0.0) || !std::isfinite(ap) || !std::isfinite(ad))
            break;

        X = herm(X + ap * dir.dX);
        x += ap * dir.dx;
        S = herm(S + ad * dir.dS);
        s += ad * dir.ds;
        u += ad * dir.du;
    }

    // Certificate on the returned point. The diagonal is rescaled exactly
    // onto diag_value; the congruence keeps W positive definite.
    SdpSolution sol;
    sol.iterations = iter;
    Mat W = herm(X);
    RVec scale(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const double wii = std::real(W(i, i));
        scale[i] = wii > 0.0 ? std::sqrt(problem.diag_value / wii) : 1.0;
    }
    W = herm(scale.asDiagonal() * W * scale.asDiagonal());

    double diag_err = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        diag_err = std::max(diag_err, std::abs(std::real(W(i, i)) - problem.diag_value));
    const double lmin = Eigen::SelfAdjointEigenSolver<Mat>(W, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();

    double sigma = std::numeric_limits<double>::infinity();
    for (const auto &f : problem.gain_factors)
        sigma = std::min(sigma, std::real((f.adjoint() * W * f).trace()));
    sol.sigma = sigma;
    sol.objective = sigma + std::real((problem.linear_term.matrix() * W).trace());
    sol.dual_bound = -dobj;
    sol.residuals.primal = std::max(diag_err, std::max(0.0, -lmin));
    sol.residuals.dual = dinf;
    sol.residuals.gap =
        std::abs(sol.dual_bound - sol.objective) / (1.0 + std::abs(sol.objective) + std::abs(sol.dual_bound));
    sol.W = HermitianMatrix(W);

    const bool certified = sol.residuals.primal <= 1e-8 && sol.residuals.dual <= problem.tolerance &&
                           sol.residuals.gap <= problem.tolerance;
    if (!certified)
    {
        const std::string why = converged ? "SDP certificate check failed " : "SDP solver did not converge ";
        throw SolverError(why + describe(sol.residuals, iter), sol.residuals);
    }
    return sol;
}

ScalarMaxMin solve_scalar_maxmin_quadratic(std::span<const Quadratic> coeffs, double lo, double hi)
{
    if (coeffs.empty())
        throw std::invalid_argument("scalar max-min needs at least one quadratic");
    if (!(lo < hi))
        throw std::invalid_argument("scalar max-min interval must satisfy lo < hi");
    for (const auto &q : coeffs)
    {
        if (!std::isfinite(q.a) || !std::isfinite(q.b) || !std::isfinite(q.c))
            throw std::invalid_argument("scalar max-min coefficients must be finite");
        if (q.a > 0.0)
            throw std::invalid_argument("scalar max-min requires concave quadratics (a <= 0)");
    }

    auto h = [&](double mu) {
        double v = std::numeric_limits<double>::infinity();
        for (const auto &q : coeffs)
            v = std::min(v, q(mu));
        return v;
    };

    std::vector<double> cand{lo, hi};
    auto push = [&](double r) {
        if (std::isfinite(r) && r >= lo && r <= hi)
            cand.push_back(r);
    };

    for (const auto &q : coeffs)
        if (q.a < 0.0)
            push(-q.b / (2.0 * q.a));

    // Kinks of the lower envelope: roots of q_i - q_j.
    for (std::size_t i = 0; i < coeffs.size(); ++i)
    {
        for (std::size_t j = i + 1; j < coeffs.size(); ++j)
        {
            const double a = coeffs[i].a - coeffs[j].a;
            const double b = coeffs[i].b - coeffs[j].b;
            const double c = coeffs[i].c - coeffs[j].c;
            const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
            if (scale == 0.0)
                continue;
            if (std::abs(a) <= 1e-14 * scale)
            {
                if (b != 0.0)
                    push(-c / b);
                continue;
            }
            const double disc = b * b - 4.0 * a * c;
            if (disc < 0.0)
                continue;
            const double qq = -0.5 * (b + std::copysign(std::sqrt(disc), b));
            if (qq != 0.0)
            {
                push(qq / a);
                push(c / qq);
            }
            else
            {
                push(0.0);
            }
        }
    }

    std::sort(cand.begin(), cand.end());
    std::vector<double> vals(cand.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < cand.size(); ++k)
    {
        vals[k] = h(cand[k]);
        best = std::max(best, vals[k]);
    }
    const double tie = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(best));
    for (std::size_t k = 0; k < cand.size(); ++k)
        if (vals[k] >= best - tie)
            return {cand[k], vals[k]};
    return {cand.front(), vals.front()};
}

} // namespace squintless
