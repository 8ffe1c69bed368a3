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

#include "squintless/composite_domain.hpp"
#include "squintless/geometry.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace squintless
{

/// Analog beamformer: phases theta_n, weights w_n = exp(j*theta_n)/sqrt(N).
struct BeamformerWeights
{
    std::vector<double> phases;

    std::size_t size() const { return phases.size(); }
    Eigen::VectorXcd complex_weights() const;

    static BeamformerWeights uniform(int num_antennas);
};

/// Frequency/angle gain map. gains_db is freq_axis.size() x angle_axis.size().
struct GainMap
{
    std::vector<double> freq_axis_hz;
    std::vector<double> angle_axis_rad;
    Eigen::MatrixXd gains_db;
};

struct MinGain
{
    double value = 0.0;
    std::size_t index = 0;
};

/// Linear power gain in dB; zero maps to -inf (exporters clamp).
double to_db(double gain);

/// |w^H a|^2 with w_n = exp(j*theta_n)/sqrt(N). Lies in [0, N].
double beam_gain(const BeamformerWeights &weights, const SteeringVector &steering);

/// Gains of `weights` at rotation coefficient `mu` on every grid sample.
std::vector<double> composite_gains(const BeamformerWeights &weights, double mu, const CompositeGrid &grid);

/// Worst-case gain over the grid; ties resolve to the lowest index.
MinGain min_composite_gain(const BeamformerWeights &weights, double mu, const CompositeGrid &grid);

/// Gains on a uniform nf x na grid over the band and the angular range,
/// for the array rotated by `angles`. A single sample on an axis sits at
/// the center of that axis.
GainMap gain_heatmap(const BeamformerWeights &weights, const RotationAngles &angles, const ArrayConfig &config,
                     const AngularRange &range, int nf, int na);

/// Phases of the narrowband beam pointed at `theta` for carrier-frequency
/// operation at rotation coefficient `mu`: theta_n = n * Omega(f_c, theta) * mu.
BeamformerWeights narrowband_pointed_weights(const ArrayConfig &config, double theta, double mu = 1.0);

} // namespace squintless
