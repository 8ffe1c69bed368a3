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

#include "squintless/rotation_opt.hpp"
#include "squintless/conic_solver.hpp"
#include "squintless/kernels.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace squintless
{

SurrogateCoeffs surrogate_coeffs(double omega, std::span<const double> phases, double mu0)
{
    if (phases.empty())
        throw std::invalid_argument("phases must not be empty");
    if (!(std::abs(mu0) <= 1.0 + 1e-12))
        throw std::invalid_argument("surrogate anchor must satisfy |mu0| <= 1");
    return kernels::surrogate_at(phases, mu0, omega);
}

namespace
{

double worst_gain(std::span<const double> phases, double mu, const CompositeGrid &grid, std::vector<double> &buf)
{
    kernels::composite_gains_omp(phases, mu, grid.samples, buf);
    return *std::min_element(buf.begin(), buf.end());
}

} // namespace

RotationResult sca_rotation(const CompositeGrid &grid, std::span<const double> phases, double mu_init,
                            const RotationOptions &opts)
{
    if (!(std::abs(mu_init) <= 1.0))
        throw std::invalid_argument("initial rotation coefficient must satisfy |mu| <= 1");
    if (grid.samples.empty())
        throw std::invalid_argument("composite grid is empty");
    if (phases.empty())
        throw std::invalid_argument("phases must not be empty");

    RotationResult out;
    std::vector<double> gains(grid.size());
    std::vector<Quadratic> surr(grid.size());

    double mu = mu_init;
    double g = worst_gain(phases, mu, grid, gains);
    out.trace.objective_values.push_back(g);

    for (int i = 0; i < opts.max_iter; ++i)
    {
        kernels::surrogates_omp(phases, mu, grid.samples, surr);
        const ScalarMaxMin step = solve_scalar_maxmin_quadratic(surr, -1.0, 1.0);

        const double g_new = worst_gain(phases, step.mu, grid, gains);
        ++out.trace.iterations;
        // The surrogate is a global minorizer and exact at mu, so g_new >= g
        // up to rounding. Never step to a worse point.
        const bool accept = g_new >= g;
        const double mu_next = accept ? step.mu : mu;
        const double dmu = std::abs(mu_next - mu);
        // Predicted improvement of the surrogate over its anchor value g.
        const double dsur = std::abs(step.sigma - g);
        mu = mu_next;
        g = accept ? g_new : g;
        out.trace.objective_values.push_back(g);
        spdlog::debug("  mu-SCA it {}: mu = {:.9f}, min gain = {:.9g}", out.trace.iterations, mu, g);

        if (!accept || dmu <= opts.tol || dsur <= opts.tol)
        {
            out.trace.converged = true;
            break;
        }
    }
    out.mu = mu;
    return out;
}

RotationAngles reconstruct_angles(double mu)
{
    if (!(std::abs(mu) <= 1.0))
        throw std::domain_error("rotation coefficient must lie in [-1, 1]");
    return RotationAngles(0.0, 0.0, std::acos(mu));
}

} // namespace squintless
