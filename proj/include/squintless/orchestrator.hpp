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

#pragma once

#include "squintless/beam_eval.hpp"
#include "squintless/beamforming_opt.hpp"
#include "squintless/composite_domain.hpp"
#include "squintless/conic_solver.hpp"
#include "squintless/geometry.hpp"
#include "squintless/rotation_opt.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace squintless
{

struct SolveParams
{
    double rho = 20.0;
    int num_samples = 64; ///< L
    double ao_tol = 1e-4;
    int ao_max_iter = 15;
    BeamformingOptions beamforming; ///< rho here is overwritten by `rho`
    RotationOptions rotation;
    int num_randomizations = 100;
    std::uint64_t rng_seed = 0;

    void validate() const;
    BeamformingOptions beamforming_options() const;
};

struct InitResult
{
    BeamformerWeights weights;
    double mu = 1.0;
    HermitianMatrix sdr_W;
    double sdr_sigma = 0.0; ///< relaxation value, an upper bound on any feasible min gain
    double min_gain = 0.0;
};

struct SolveReport
{
    BeamformerWeights weights;
    double mu = 1.0;
    RotationAngles angles;
    double min_gain = 0.0;
    double min_gain_db = 0.0;
    std::size_t argmin_index = 0;
    CompositeGrid grid;
    std::vector<double> gain_curve; ///< linear gain per grid sample

    double init_min_gain = 0.0;
    double sdr_sigma = 0.0;
    std::vector<double> ao_trace;
    std::vector<ScaTrace> beamforming_traces;
    std::vector<ScaTrace> rotation_traces;
    double final_rank_one_ratio = 0.0; ///< (||W||_* - ||W||_2)/||W||_2 of the last beamforming W
    SdpResiduals worst_sdp_residuals;
    int ao_iterations = 0;
    bool ao_converged = false;
    double wall_time_s = 0.0;
};

enum class Scheme
{
    NarrowbandNoRotation = 1,
    WidebandNoRotation = 2,
    NarrowbandWithRotation = 3,
    WidebandFixedRotation = 4,
    Proposed = 5,
};

std::string scheme_id(Scheme s);
std::string scheme_description(Scheme s);
Scheme parse_scheme(const std::string &id);
std::vector<Scheme> all_schemes();

struct BenchmarkResult
{
    Scheme scheme = Scheme::Proposed;
    std::string id;
    std::string description;
    SolveReport report;
    std::vector<double> gain_curve; ///< linear gain per wideband grid sample
};

/// SDR of the max-min problem at rotation coefficient mu, followed by
/// Gaussian randomization; returns the best candidate on `grid`.
InitResult initialize(const CompositeGrid &grid, int num_antennas, double mu, const SolveParams &params);
InitResult initialize(const ArrayConfig &config, const AngularRange &range, const SolveParams &params);

/// Alternating optimization of the beamformer and the rotation coefficient.
SolveReport alternating_optimize(const ArrayConfig &config, const AngularRange &range, const SolveParams &params);

BenchmarkResult run_benchmark(Scheme scheme, const ArrayConfig &config, const AngularRange &range,
                              const SolveParams &params);

std::vector<BenchmarkResult> run_benchmarks(std::span<const Scheme> schemes, const ArrayConfig &config,
                                            const AngularRange &range, const SolveParams &params);

} // namespace squintless
