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

#include "squintless/beamforming_opt.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace squintless
{

namespace
{

using Mat = Eigen::MatrixXcd;

Eigen::SelfAdjointEigenSolver<Mat> eig(const HermitianMatrix &W)
{
    if (!W.matrix().allFinite())
        throw std::invalid_argument("matrix has non-finite entries");
    return Eigen::SelfAdjointEigenSolver<Mat>(W.matrix());
}

// v^(i) in the penalized objective: worst-case gain minus the rank penalty.
double penalized_objective(const Mat &steering, const HermitianMatrix &W, double rho)
{
    const Mat vw = W.matrix() * steering;
    double sigma = std::numeric_limits<double>::infinity();
    for (Eigen::Index l = 0; l < steering.cols(); ++l)
        sigma = std::min(sigma, std::real(steering.col(l).dot(vw.col(l))));
    return sigma - rho * rank_one_gap(W);
}

double rank_ratio(const HermitianMatrix &W)
{
    const double top = eig(W).eigenvalues().maxCoeff();
    return top > 0.0 ? rank_one_gap(W) / top : 0.0;
}

struct LoopOutcome
{
    HermitianMatrix W;
    bool converged = false;
};

LoopOutcome run_loop(const Mat &steering, double diag_value, HermitianMatrix W, double rho,
                     const BeamformingOptions &opts, ScaTrace &trace)
{
    double v_prev = trace.objective_values.empty() ? penalized_objective(steering, W, rho)
                                                   : trace.objective_values.back();
    if (trace.objective_values.empty())
    {
        trace.objective_values.push_back(v_prev);
        trace.rank_one_gaps.push_back(rank_one_gap(W));
    }

    for (int i = 0; i < opts.max_iter; ++i)
    {
        // Tr(W) = 1 on the feasible set, so the linearized penalty
        // -rho * (Tr W - ||W_i||_2 - Re Tr(s s^H (W - W_i))) only depends on W
        // through rho * Re Tr(s s^H W).
        const Mat D = rho * spectral_subgradient(W).matrix();
        SdpProblem problem = SdpProblem::from_steering(steering, HermitianMatrix(D), diag_value);
        problem.tolerance = opts.sdp_tolerance;

        SdpSolution sol;
        try
        {
            sol = solve_maxmin_sdp(problem);
        }
        catch (const SolverError &e)
        {
            throw SolverError("beamforming SCA iteration " + std::to_string(trace.iterations + 1) + ": " + e.what(),
                              e.residuals());
        }
        trace.worst_residuals.primal = std::max(trace.worst_residuals.primal, sol.residuals.primal);
        trace.worst_residuals.dual = std::max(trace.worst_residuals.dual, sol.residuals.dual);
        trace.worst_residuals.gap = std::max(trace.worst_residuals.gap, sol.residuals.gap);

        W = sol.W;
        const double v = penalized_objective(steering, W, rho);
        trace.objective_values.push_back(v);
        trace.rank_one_gaps.push_back(rank_one_gap(W));
        ++trace.iterations;
        spdlog::debug("  W-SCA it {}: v = {:.9g}, rank gap = {:.3g}", trace.iterations, v, trace.rank_one_gaps.back());

        if (std::abs(v - v_prev) <= opts.tol * std::max(1.0, std::abs(v_prev)))
            return {W, true};
        v_prev = v;
    }
    return {W, false};
}

} // namespace

double rank_one_gap(const HermitianMatrix &W)
{
    const auto es = eig(W);
    const Eigen::VectorXd &ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    if (ev.minCoeff() < -1e-8 * scale)
        throw std::invalid_argument("rank_one_gap requires a positive semidefinite matrix");
    return std::max(0.0, ev.cwiseMax(0.0).sum() - ev.maxCoeff());
}

HermitianMatrix spectral_subgradient(const HermitianMatrix &W)
{
    const auto es = eig(W);
    const Eigen::VectorXd &ev = es.eigenvalues(); // ascending
    const Eigen::Index n = ev.size();
    Eigen::Index pick = n - 1;
    for (Eigen::Index k = 0; k < n; ++k)
    {
        if (ev[n - 1] - ev[k] <= 1e-10)
        {
            pick = k;
            break;
        }
    }
    const Eigen::VectorXcd s = es.eigenvectors().col(pick).normalized();
    return HermitianMatrix::outer(s);
}

Eigen::MatrixXcd steering_matrix(int num_antennas, const CompositeGrid &grid, double mu)
{
    Mat a(num_antennas, static_cast<Eigen::Index>(grid.size()));
    for (std::size_t l = 0; l < grid.size(); ++l)
    {
        const double step = grid.samples[l] * mu;
        for (int n = 0; n < num_antennas; ++n)
            a(n, static_cast<Eigen::Index>(l)) = std::polar(1.0, step * n);
    }
    return a;
}

BeamformingResult sca_beamforming(const CompositeGrid &grid, double mu, const HermitianMatrix &W_init,
                                  const BeamformingOptions &opts)
{
    if (!(opts.rho > 0.0))
        throw std::invalid_argument("penalty rho must be positive");
    if (!(opts.tol > 0.0) || opts.max_iter < 1)
        throw std::invalid_argument("SCA tolerance and iteration limit must be positive");
    if (grid.samples.empty())
        throw std::invalid_argument("composite grid is empty");
    const auto n = static_cast<int>(W_init.rows());
    if (n < 1)
        throw std::invalid_argument("initial W is empty");
    const double diag_value = 1.0 / n;
    for (int i = 0; i < n; ++i)
        if (std::abs(std::real(W_init.matrix()(i, i)) - diag_value) > 1e-8)
            throw std::invalid_argument("initial W must have diagonal 1/N");

    const Mat steering = steering_matrix(n, grid, mu);

    BeamformingResult out;
    out.trace.rho = opts.rho;
    LoopOutcome res = run_loop(steering, diag_value, W_init, opts.rho, opts, out.trace);

    if (rank_ratio(res.W) > opts.escalation_ratio)
    {
        spdlog::info("  W-SCA rank ratio {:.3g} above {:.3g}; doubling rho to {}", rank_ratio(res.W),
                     opts.escalation_ratio, 2.0 * opts.rho);
        out.trace.escalated = true;
        out.trace.rho = 2.0 * opts.rho;
        out.trace.restart_index = out.trace.objective_values.size();
        // The penalized objective changes with rho; restart the trace
        // bookkeeping at the current point.
        out.trace.objective_values.push_back(penalized_objective(steering, res.W, out.trace.rho));
        out.trace.rank_one_gaps.push_back(rank_one_gap(res.W));
        res = run_loop(steering, diag_value, res.W, out.trace.rho, opts, out.trace);
    }
    out.W = res.W;
    out.trace.converged = res.converged;
    return out;
}

BeamformerWeights extract_weights(const HermitianMatrix &W)
{
    const auto es = eig(W);
    const Eigen::Index n = W.rows();
    const double lmax = std::max(0.0, es.eigenvalues()[n - 1]);
    const Eigen::VectorXcd pc = std::sqrt(lmax) * es.eigenvectors().col(n - 1);

    std::complex<double> ref{1.0, 0.0};
    for (Eigen::Index i = 0; i < n; ++i)
    {
        if (std::abs(pc[i]) > 0.0)
        {
            ref = std::conj(pc[i]) / std::abs(pc[i]);
            break;
        }
    }
    BeamformerWeights w;
    w.phases.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const std::complex<double> z = pc[i] * ref;
        w.phases[static_cast<std::size_t>(i)] = std::abs(z) > 0.0 ? std::arg(z) : 0.0;
    }
    return w;
}

} // namespace squintless
