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

#include "squintless/orchestrator.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

namespace squintless
{

void SolveParams::validate() const
{
    if (!(rho > 0.0))
        throw std::invalid_argument("penalty rho must be positive");
    if (num_samples < 1)
        throw std::invalid_argument("number of composite samples must be >= 1");
    if (!(ao_tol > 0.0) || ao_max_iter < 1)
        throw std::invalid_argument("AO tolerance and iteration limit must be positive");
    if (!(beamforming.tol > 0.0) || beamforming.max_iter < 1 || !(beamforming.sdp_tolerance > 0.0))
        throw std::invalid_argument("beamforming SCA settings must be positive");
    if (!(rotation.tol > 0.0) || rotation.max_iter < 1)
        throw std::invalid_argument("rotation SCA settings must be positive");
    if (num_randomizations < 1)
        throw std::invalid_argument("number of Gaussian randomizations must be >= 1");
}

BeamformingOptions SolveParams::beamforming_options() const
{
    BeamformingOptions o = beamforming;
    o.rho = rho;
    return o;
}

std::string scheme_id(Scheme s)
{
    switch (s)
    {
    case Scheme::NarrowbandNoRotation: return "1";
    case Scheme::WidebandNoRotation: return "2";
    case Scheme::NarrowbandWithRotation: return "3";
    case Scheme::WidebandFixedRotation: return "4";
    case Scheme::Proposed: return "proposed";
    }
    throw std::invalid_argument("unknown scheme");
}

std::string scheme_description(Scheme s)
{
    switch (s)
    {
    case Scheme::NarrowbandNoRotation: return "narrowband beamforming without rotation";
    case Scheme::WidebandNoRotation: return "wideband beamforming without rotation";
    case Scheme::NarrowbandWithRotation: return "narrowband beamforming with rotation";
    case Scheme::WidebandFixedRotation: return "wideband beamforming with rotation fixed at the range center";
    case Scheme::Proposed: return "joint beamforming and rotation (alternating optimization)";
    }
    throw std::invalid_argument("unknown scheme");
}

Scheme parse_scheme(const std::string &id)
{
    for (Scheme s : all_schemes())
        if (scheme_id(s) == id)
            return s;
    throw std::invalid_argument("unknown scheme '" + id + "' (expected 1, 2, 3, 4 or proposed)");
}

std::vector<Scheme> all_schemes()
{
    return {Scheme::NarrowbandNoRotation, Scheme::WidebandNoRotation, Scheme::NarrowbandWithRotation,
            Scheme::WidebandFixedRotation, Scheme::Proposed};
}

InitResult initialize(const CompositeGrid &grid, int num_antennas, double mu, const SolveParams &params)
{
    params.validate();
    if (num_antennas < 1)
        throw std::invalid_argument("num_antennas must be >= 1");

    const Eigen::MatrixXcd steering = steering_matrix(num_antennas, grid, mu);
    SdpProblem sdr = SdpProblem::from_steering(steering, HermitianMatrix::zero(num_antennas), 1.0 / num_antennas);
    sdr.tolerance = params.beamforming.sdp_tolerance;
    const SdpSolution sol = solve_maxmin_sdp(sdr);

    InitResult out;
    out.mu = mu;
    out.sdr_W = sol.W;
    out.sdr_sigma = sol.sigma;

    // Candidates U * sqrt(Lambda) * q with q ~ CN(0, I) have covariance W.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sol.W.matrix());
    const Eigen::MatrixXcd factor =
        es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

    std::mt19937_64 rng(params.rng_seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::VectorXcd q(num_antennas);
    bool have = false;
    for (int r = 0; r < params.num_randomizations; ++r)
    {
        for (int n = 0; n < num_antennas; ++n)
        {
            const double re = normal(rng);
            const double im = normal(rng);
            q[n] = {re, im};
        }
        const Eigen::VectorXcd v = factor * q;
        BeamformerWeights cand;
        cand.phases.resize(static_cast<std::size_t>(num_antennas));
        for (int n = 0; n < num_antennas; ++n)
            cand.phases[static_cast<std::size_t>(n)] = std::abs(v[n]) > 0.0 ? std::arg(v[n]) : 0.0;
        const double g = min_composite_gain(cand, mu, grid).value;
        if (!have || g > out.min_gain)
        {
            out.weights = std::move(cand);
            out.min_gain = g;
            have = true;
        }
    }
    spdlog::debug("initialization: SDR value {:.6g}, best randomized min gain {:.6g}", out.sdr_sigma, out.min_gain);
    return out;
}

InitResult initialize(const ArrayConfig &config, const AngularRange &range, const SolveParams &params)
{
    const CompositeGrid grid = make_composite_grid(config, range, params.num_samples);
    return initialize(grid, config.num_antennas, 1.0, params);
}

namespace
{

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void merge_residuals(SdpResiduals &into, const SdpResiduals &r)
{
    into.primal = std::max(into.primal, r.primal);
    into.dual = std::max(into.dual, r.dual);
    into.gap = std::max(into.gap, r.gap);
}

double rank_ratio(const HermitianMatrix &W)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(W.matrix(), Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    return top > 0.0 ? rank_one_gap(W) / top : 0.0;
}

// One beamforming SCA run seeded at w w^H. The extracted weights replace the
// incumbent only if they do not lower the worst-case gain at this mu.
BeamformerWeights improve_beamformer(const CompositeGrid &grid, double mu, const BeamformerWeights &incumbent,
                                     const SolveParams &params, SolveReport &report)
{
    const HermitianMatrix w0 = HermitianMatrix::outer(incumbent.complex_weights());
    BeamformingResult bf = sca_beamforming(grid, mu, w0, params.beamforming_options());
    merge_residuals(report.worst_sdp_residuals, bf.trace.worst_residuals);
    report.final_rank_one_ratio = rank_ratio(bf.W);
    report.beamforming_traces.push_back(std::move(bf.trace));

    BeamformerWeights cand = extract_weights(bf.W);
    const double g_cand = min_composite_gain(cand, mu, grid).value;
    const double g_inc = min_composite_gain(incumbent, mu, grid).value;
    return g_cand >= g_inc ? cand : incumbent;
}

void finalize(SolveReport &r, const CompositeGrid &grid)
{
    r.grid = grid;
    r.angles = reconstruct_angles(std::clamp(r.mu, -1.0, 1.0));
    r.gain_curve = composite_gains(r.weights, r.mu, grid);
    const MinGain mg = min_composite_gain(r.weights, r.mu, grid);
    r.min_gain = mg.value;
    r.argmin_index = mg.index;
    r.min_gain_db = to_db(mg.value);
}

SolveReport run_ao(const CompositeGrid &grid, int num_antennas, const SolveParams &params)
{
    const auto t0 = Clock::now();
    SolveReport r;
    const InitResult init = initialize(grid, num_antennas, 1.0, params);
    r.init_min_gain = init.min_gain;
    r.sdr_sigma = init.sdr_sigma;

    BeamformerWeights w = init.weights;
    double mu = init.mu;
    double g = min_composite_gain(w, mu, grid).value;
    r.ao_trace.push_back(g);

    for (int j = 1; j <= params.ao_max_iter; ++j)
    {
        try
        {
            w = improve_beamformer(grid, mu, w, params, r);
            RotationResult rot = sca_rotation(grid, w.phases, mu, params.rotation);
            mu = rot.mu;
            r.rotation_traces.push_back(std::move(rot.trace));
        }
        catch (const SolverError &e)
        {
            throw SolverError("AO iteration " + std::to_string(j) + ": " + e.what(), e.residuals());
        }
        catch (const std::invalid_argument &e)
        {
            throw std::invalid_argument("AO iteration " + std::to_string(j) + ": " + e.what());
        }

        const double g_new = min_composite_gain(w, mu, grid).value;
        r.ao_trace.push_back(g_new);
        r.ao_iterations = j;
        spdlog::info("AO iteration {}: mu = {:.6f}, min gain = {:.6g} ({:.3f} dB)", j, mu, g_new, to_db(g_new));
        const double rel = (g_new - g) / std::max(std::abs(g), 1e-12);
        g = g_new;
        if (rel <= params.ao_tol)
        {
            r.ao_converged = true;
            break;
        }
    }

    r.weights = w;
    r.mu = mu;
    finalize(r, grid);
    r.wall_time_s = elapsed(t0);
    return r;
}

SolveReport fixed_mu_beamforming(const CompositeGrid &grid, int num_antennas, double mu, const SolveParams &params)
{
    SolveReport r;
    const InitResult init = initialize(grid, num_antennas, mu, params);
    r.init_min_gain = init.min_gain;
    r.sdr_sigma = init.sdr_sigma;
    r.ao_trace.push_back(init.min_gain);
    r.weights = improve_beamformer(grid, mu, init.weights, params, r);
    r.mu = mu;
    r.ao_trace.push_back(min_composite_gain(r.weights, mu, grid).value);
    r.ao_iterations = 1;
    r.ao_converged = true;
    return r;
}

} // namespace

SolveReport alternating_optimize(const ArrayConfig &config, const AngularRange &range, const SolveParams &params)
{
    config.validate();
    range.validate();
    params.validate();
    const CompositeGrid grid = make_composite_grid(config, range, params.num_samples);
    return run_ao(grid, config.num_antennas, params);
}

BenchmarkResult run_benchmark(Scheme scheme, const ArrayConfig &config, const AngularRange &range,
                              const SolveParams &params)
{
    config.validate();
    range.validate();
    params.validate();
    const auto t0 = Clock::now();
    const CompositeGrid grid = make_composite_grid(config, range, params.num_samples);
    const int n = config.num_antennas;

    auto narrowband_weights = [&](SolveReport &r) {
        ArrayConfig nb = config;
        nb.bandwidth_hz = 0.0;
        const CompositeGrid nb_grid = make_composite_grid(nb, range, params.num_samples);
        SolveReport nb_report = fixed_mu_beamforming(nb_grid, n, 1.0, params);
        r = std::move(nb_report);
        return r.weights;
    };

    BenchmarkResult out;
    out.scheme = scheme;
    out.id = scheme_id(scheme);
    out.description = scheme_description(scheme);
    SolveReport &r = out.report;

    switch (scheme)
    {
    case Scheme::NarrowbandNoRotation:
        r.weights = narrowband_weights(r);
        r.mu = 1.0;
        break;
    case Scheme::WidebandNoRotation:
        r = fixed_mu_beamforming(grid, n, 1.0, params);
        break;
    case Scheme::NarrowbandWithRotation: {
        r.weights = narrowband_weights(r);
        RotationResult rot = sca_rotation(grid, r.weights.phases, 1.0, params.rotation);
        r.mu = rot.mu;
        r.rotation_traces.push_back(std::move(rot.trace));
        break;
    }
    case Scheme::WidebandFixedRotation:
        r = fixed_mu_beamforming(grid, n, std::cos(range.center()), params);
        break;
    case Scheme::Proposed:
        r = run_ao(grid, n, params);
        break;
    }

    finalize(r, grid);
    r.wall_time_s = elapsed(t0);
    out.gain_curve = r.gain_curve;
    spdlog::info("scheme {}: mu = {:.6f}, min gain {:.3f} dB ({:.2f} s)", out.id, r.mu, r.min_gain_db, r.wall_time_s);
    return out;
}

std::vector<BenchmarkResult> run_benchmarks(std::span<const Scheme> schemes, const ArrayConfig &config,
                                            const AngularRange &range, const SolveParams &params)
{
    std::vector<BenchmarkResult> out;
    out.reserve(schemes.size());
    for (Scheme s : schemes)
        out.push_back(run_benchmark(s, config, range, params));
    return out;
}

} // namespace squintless
