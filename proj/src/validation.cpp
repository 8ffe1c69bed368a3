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

#include "squintless/validation.hpp"

#include "squintless/beam_eval.hpp"
#include "squintless/beamforming_opt.hpp"
#include "squintless/composite_domain.hpp"
#include "squintless/conic_solver.hpp"
#include "squintless/geometry.hpp"
#include "squintless/kernels.hpp"
#include "squintless/rotation_opt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace squintless
{

namespace
{

constexpr double pi = std::numbers::pi;

using Rng = std::mt19937_64;

double uniform(Rng &rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<double> random_phases(Rng &rng, int n)
{
    std::vector<double> p(static_cast<std::size_t>(n));
    for (auto &v : p)
        v = uniform(rng, -pi, pi);
    return p;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

InvariantCheck check_rotation(Rng &rng)
{
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t)
    {
        const RotationAngles a(uniform(rng, 0, 2 * pi), uniform(rng, 0, 2 * pi), uniform(rng, 0, 2 * pi));
        const Eigen::Matrix3d r = rotation_matrix(a);
        worst = std::max(worst, (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::abs(r.determinant() - 1.0));
    }
    return {"rotation matrices are orthogonal with det 1", worst <= 1e-12, "max deviation " + fmt(worst)};
}

InvariantCheck check_steering(Rng &rng)
{
    double modulus = 0.0, beta_shift = 0.0;
    for (int t = 0; t < 200; ++t)
    {
        const ArrayConfig cfg = make_array_config(1 + static_cast<int>(rng() % 32), 1e12, 1e11);
        const double f = uniform(rng, cfg.f_lo(), cfg.f_hi());
        const double theta = uniform(rng, -pi, pi);
        const double al = uniform(rng, 0, 2 * pi), ga = uniform(rng, 0, 2 * pi);
        const auto a = steering_vector(cfg, f, theta, RotationAngles(al, uniform(rng, 0, 2 * pi), ga));
        const auto b = steering_vector(cfg, f, theta, RotationAngles(al, uniform(rng, 0, 2 * pi), ga));
        modulus = std::max(modulus, (a.entries.cwiseAbs().array() - 1.0).abs().maxCoeff());
        beta_shift = std::max(beta_shift, (a.entries - b.entries).cwiseAbs().maxCoeff());
    }
    return {"steering vectors are unit modulus and independent of beta", modulus <= 1e-12 && beta_shift == 0.0,
            "modulus error " + fmt(modulus) + ", beta change " + fmt(beta_shift)};
}

InvariantCheck check_bounds(Rng &rng)
{
    double excess = 0.0;
    for (int t = 0; t < 20; ++t)
    {
        const ArrayConfig cfg = make_array_config(8, 1e12, uniform(rng, 0, 2e11));
        double lo = uniform(rng, -pi + 1e-3, pi), hi = uniform(rng, -pi + 1e-3, pi);
        if (lo > hi)
            std::swap(lo, hi);
        const AngularRange range{lo, hi};
        const auto b = composite_bounds(cfg, range);
        for (int s = 0; s < 5000; ++s)
        {
            const double w = composite_variable(cfg, uniform(rng, cfg.f_lo(), cfg.f_hi()), uniform(rng, lo, hi));
            excess = std::max({excess, b.omega_lo - w, w - b.omega_hi});
        }
    }
    return {"composite bounds contain every sampled (f, theta)", excess <= 1e-12, "max excess " + fmt(excess)};
}

InvariantCheck check_gain(Rng &rng)
{
    double range_err = 0.0, phase_err = 0.0;
    for (int t = 0; t < 200; ++t)
    {
        const int n = 1 + static_cast<int>(rng() % 32);
        BeamformerWeights w{random_phases(rng, n)};
        BeamformerWeights shifted = w;
        const double c = uniform(rng, -pi, pi);
        for (auto &p : shifted.phases)
            p += c;
        const auto a = steering_vector_composite(n, uniform(rng, -4, 4), uniform(rng, -1, 1));
        const double g = beam_gain(w, a);
        range_err = std::max({range_err, -g, g - n});
        phase_err = std::max(phase_err, std::abs(g - beam_gain(shifted, a)));
    }
    return {"gain stays in [0, N] and ignores a global phase", range_err <= 1e-9 && phase_err <= 1e-12,
            "range violation " + fmt(range_err) + ", phase sensitivity " + fmt(phase_err)};
}

InvariantCheck check_surrogate(Rng &rng)
{
    double above = 0.0, anchor = 0.0, a_max = -1.0;
    for (int t = 0; t < 200; ++t)
    {
        const int n = 2 + static_cast<int>(rng() % 7);
        const auto phases = random_phases(rng, n);
        const double omega = uniform(rng, -pi, pi), mu0 = uniform(rng, -1, 1);
        const auto q = surrogate_coeffs(omega, phases, mu0);
        a_max = std::max(a_max, q.a);
        anchor = std::max(anchor, std::abs(q(mu0) - kernels::composite_gain_at(phases, mu0, omega)));
        for (int k = 0; k <= 2000; ++k)
        {
            const double mu = -1.0 + k / 1000.0;
            above = std::max(above, q(mu) - kernels::composite_gain_at(phases, mu, omega));
        }
    }
    return {"surrogate is a tight lower bound with A <= 0", above <= 1e-9 && anchor <= 1e-12 && a_max <= 0.0,
            "max overshoot " + fmt(above) + ", anchor error " + fmt(anchor)};
}

InvariantCheck check_scalar_solver(Rng &rng)
{
    double worst = 0.0;
    for (int t = 0; t < 100; ++t)
    {
        std::vector<Quadratic> qs(1 + rng() % 6);
        for (auto &q : qs)
            q = {-uniform(rng, 0, 3), uniform(rng, -2, 2), uniform(rng, -1, 1)};
        const auto h = [&](double mu) {
            double m = qs.front()(mu);
            for (const auto &q : qs)
                m = std::min(m, q(mu));
            return m;
        };
        const auto best = solve_scalar_maxmin_quadratic(qs, -1.0, 1.0);
        double grid = -INFINITY;
        for (int k = 0; k <= 100000; ++k)
            grid = std::max(grid, h(-1.0 + k * 2e-5));
        worst = std::max({worst, grid - best.sigma, std::abs(best.sigma - h(best.mu))});
    }
    return {"scalar max-min solver beats a dense grid", worst <= 1e-9, "max shortfall " + fmt(worst)};
}

InvariantCheck check_sdp(Rng &rng)
{
    double worst_gap = 0.0, worst_feas = 0.0;
    for (int t = 0; t < 10; ++t)
    {
        const int n = 2 + static_cast<int>(rng() % 5), l = 1 + static_cast<int>(rng() % 8);
        Eigen::MatrixXcd a(n, l);
        for (int j = 0; j < l; ++j)
            a.col(j) = steering_vector_composite(n, uniform(rng, -pi, pi), 1.0).entries;
        Eigen::VectorXcd v = Eigen::VectorXcd::Random(n);
        auto p = SdpProblem::from_steering(a, HermitianMatrix(uniform(rng, 0, 5) * v * v.adjoint()), 1.0 / n);
        const auto sol = solve_maxmin_sdp(p);
        const Eigen::MatrixXcd &W = sol.W.matrix();
        double feas = (W.diagonal().real().array() - 1.0 / n).abs().maxCoeff();
        feas = std::max(feas, -Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(W).eigenvalues().minCoeff());
        worst_feas = std::max(worst_feas, feas);
        worst_gap = std::max(worst_gap, sol.residuals.gap);
    }
    return {"SDP solutions carry a certificate", worst_gap <= 1e-6 && worst_feas <= 1e-8,
            "max gap " + fmt(worst_gap) + ", max feasibility error " + fmt(worst_feas)};
}

InvariantCheck check_rotation_ascent(Rng &rng)
{
    double worst = 0.0;
    for (int t = 0; t < 10; ++t)
    {
        const int n = 2 + static_cast<int>(rng() % 7);
        const auto grid = sample_grid({uniform(rng, 0.0, 1.5), uniform(rng, 1.5, 3.0)}, 16);
        const auto phases = random_phases(rng, n);
        const double mu0 = uniform(rng, -1, 1);
        const auto res = sca_rotation(grid, phases, mu0);
        const BeamformerWeights w{phases};
        worst = std::max(worst, min_composite_gain(w, mu0, grid).value - min_composite_gain(w, res.mu, grid).value);
        for (std::size_t i = 1; i < res.trace.objective_values.size(); ++i)
            worst = std::max(worst, res.trace.objective_values[i - 1] - res.trace.objective_values[i]);
    }
    return {"rotation SCA never lowers the worst-case gain", worst <= 1e-9, "max drop " + fmt(worst)};
}

InvariantCheck check_beamforming_trace(Rng &rng)
{
    double worst = 0.0;
    for (int t = 0; t < 3; ++t)
    {
        const int n = 4;
        const auto grid = sample_grid({uniform(rng, 0.5, 1.5), uniform(rng, 1.5, 3.0)}, 8);
        const HermitianMatrix W0(Eigen::MatrixXcd::Identity(n, n) / n);
        BeamformingOptions opts;
        opts.max_iter = 10;
        const auto res = sca_beamforming(grid, uniform(rng, -1, 1), W0, opts);
        const auto &v = res.trace.objective_values;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!res.trace.escalated || i != res.trace.restart_index)
                worst = std::max(worst, v[i - 1] - v[i]);
    }
    return {"beamforming SCA objective is non-decreasing", worst <= 1e-5, "max drop " + fmt(worst)};
}

InvariantCheck check_kernels(Rng &rng)
{
    const auto phases = random_phases(rng, 16);
    std::vector<double> omegas(257);
    for (auto &w : omegas)
        w = uniform(rng, -pi, pi);
    std::vector<double> a(omegas.size()), b(omegas.size());
    kernels::composite_gains_serial(phases, 0.7, omegas, a);
    kernels::composite_gains_omp(phases, 0.7, omegas, b);
    std::vector<Quadratic> qa(omegas.size()), qb(omegas.size());
    kernels::surrogates_serial(phases, 0.3, omegas, qa);
    kernels::surrogates_omp(phases, 0.3, omegas, qb);
    bool same = a == b;
    for (std::size_t i = 0; i < qa.size(); ++i)
        same = same && qa[i].a == qb[i].a && qa[i].b == qb[i].b && qa[i].c == qb[i].c;
    return {"OpenMP kernels match the serial reference bit for bit", same, same ? "identical" : "outputs differ"};
}

} // namespace

std::vector<InvariantCheck> run_invariant_suite(std::uint64_t seed)
{
    Rng rng(seed);
    const std::vector<std::function<InvariantCheck(Rng &)>> checks = {
        check_rotation,  check_steering, check_bounds,          check_gain,
        check_surrogate, check_scalar_solver, check_sdp,        check_rotation_ascent,
        check_beamforming_trace, check_kernels};
    std::vector<InvariantCheck> out;
    for (const auto &c : checks)
    {
        try
        {
            out.push_back(c(rng));
        }
        catch (const std::exception &e)
        {
            out.push_back({"(check threw)", false, e.what()});
        }
    }
    return out;
}

} // namespace squintless
