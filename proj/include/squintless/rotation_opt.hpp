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

#include "squintless/beamforming_opt.hpp"
#include "squintless/composite_domain.hpp"
#include "squintless/geometry.hpp"
#include "squintless/quadratic.hpp"

#include <span>
#include <vector>

namespace squintless
{

/// Quadratic lower bound A*mu^2 + B*mu + C of the gain at one grid sample.
using SurrogateCoeffs = Quadratic;

struct RotationOptions
{
    double tol = 1e-6;
    int max_iter = 50;
};

/// Minorizer of G(omega, mu) = (1/N) sum_n sum_m cos(omega*mu*(n-m) - (phi_n - phi_m)),
/// exact at mu0. A <= 0 always.
SurrogateCoeffs surrogate_coeffs(double omega, std::span<const double> phases, double mu0);

struct RotationResult
{
    double mu = 1.0;
    ScaTrace trace;
};

/// SCA over mu in [-1, 1] for fixed phases. The true worst-case gain never
/// decreases from one iterate to the next.
RotationResult sca_rotation(const CompositeGrid &grid, std::span<const double> phases, double mu_init,
                            const RotationOptions &opts = {});

/// alpha = 0, beta = 0, gamma = arccos(mu). Throws std::domain_error if |mu| > 1.
RotationAngles reconstruct_angles(double mu);

} // namespace squintless
