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
#include "squintless/composite_domain.hpp"
#include "squintless/conic_solver.hpp"

#include <vector>

namespace squintless
{

/// Per-iteration record of an SCA loop. For the beamforming loop
/// objective_values holds min_l Tr(V_l W) - rho * rank_one_gap(W); for the
/// rotation loop it holds the true min gain at each iterate.
struct ScaTrace
{
    std::vector<double> objective_values;
    std::vector<double> rank_one_gaps;
    bool converged = false;
    int iterations = 0;
    double rho = 0.0;          ///< penalty actually used (beamforming only)
    bool escalated = false;    ///< penalty was doubled once
    std::size_t restart_index = 0; ///< first entry recorded under the doubled penalty
    SdpResiduals worst_residuals;
};

struct BeamformingOptions
{
    double rho = 20.0;
    double tol = 1e-4;
    int max_iter = 30;
    double sdp_tolerance = 1e-6;
    double escalation_ratio = 1e-2;
};

/// ||W||_* - ||W||_2; for PSD W this is trace minus the largest eigenvalue.
/// Throws std::invalid_argument if W is not PSD within 1e-8.
double rank_one_gap(const HermitianMatrix &W);

/// s s^H for a unit top eigenvector s of W. A degenerate top eigenvalue
/// (within 1e-10) picks the lowest-index eigenvector among the tied ones.
HermitianMatrix spectral_subgradient(const HermitianMatrix &W);

/// Columns a(omega_l, mu) for every grid sample (N x L).
Eigen::MatrixXcd steering_matrix(int num_antennas, const CompositeGrid &grid, double mu);

struct BeamformingResult
{
    HermitianMatrix W;
    ScaTrace trace;
};

/// Penalized SCA over W for a fixed rotation coefficient.
BeamformingResult sca_beamforming(const CompositeGrid &grid, double mu, const HermitianMatrix &W_init,
                                  const BeamformingOptions &opts = {});

/// Unit-modulus weights from the principal component of W, with the
/// global phase fixed so that the first nonzero component has phase 0.
BeamformerWeights extract_weights(const HermitianMatrix &W);

} // namespace squintless
