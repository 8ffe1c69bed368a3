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

#include "squintless/beam_eval.hpp"
#include "squintless/kernels.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace squintless
{

Eigen::VectorXcd BeamformerWeights::complex_weights() const
{
    const double amp = 1.0 / std::sqrt(static_cast<double>(phases.size()));
    Eigen::VectorXcd w(static_cast<Eigen::Index>(phases.size()));
    for (std::size_t n = 0; n < phases.size(); ++n)
        w[static_cast<Eigen::Index>(n)] = std::polar(amp, phases[n]);
    return w;
}

BeamformerWeights BeamformerWeights::uniform(int num_antennas)
{
    if (num_antennas < 1)
        throw std::invalid_argument("num_antennas must be >= 1");
    return {std::vector<double>(static_cast<std::size_t>(num_antennas), 0.0)};
}

double to_db(double gain)
{
    if (gain <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(gain);
}

double beam_gain(const BeamformerWeights &weights, const SteeringVector &steering)
{
    if (weights.size() != steering.size() || weights.size() == 0)
        throw std::invalid_argument("beamformer and steering vector lengths differ");
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t n = 0; n < weights.size(); ++n)
        acc += std::polar(1.0, -weights.phases[n]) * steering.entries[static_cast<Eigen::Index>(n)];
    return std::norm(acc) / static_cast<double>(weights.size());
}

std::vector<double> composite_gains(const BeamformerWeights &weights, double mu, const CompositeGrid &grid)
{
    if (weights.size() == 0)
        throw std::invalid_argument("beamformer has no elements");
    if (!(std::abs(mu) <= 1.0 + 1e-12))
        throw std::invalid_argument("rotation coefficient must satisfy |mu| <= 1");
    std::vector<double> out(grid.size());
    kernels::composite_gains_omp(weights.phases, mu, grid.samples, out);
    return out;
}

MinGain min_composite_gain(const BeamformerWeights &weights, double mu, const CompositeGrid &grid)
{
    if (grid.samples.empty())
        throw std::invalid_argument("composite grid is empty");
    const auto gains = composite_gains(weights, mu, grid);
    MinGain best{gains[0], 0};
    for (std::size_t l = 1; l < gains.size(); ++l)
        if (gains[l] < best.value)
            best = {gains[l], l};
    return best;
}

namespace
{

std::vector<double> axis(double lo, double hi, int count)
{
    std::vector<double> v(static_cast<std::size_t>(count));
    if (count == 1)
    {
        v[0] = 0.5 * (lo + hi);
        return v;
    }
    for (int i = 0; i < count; ++i)
        v[i] = lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(count - 1));
    v.back() = hi;
    return v;
}

} // namespace

GainMap gain_heatmap(const BeamformerWeights &weights, const RotationAngles &angles, const ArrayConfig &config,
                     const AngularRange &range, int nf, int na)
{
    config.validate();
    range.validate();
    if (nf < 1 || na < 1)
        throw std::invalid_argument("heatmap resolution must be at least 1x1");
    if (weights.size() != static_cast<std::size_t>(config.num_antennas))
        throw std::invalid_argument("beamformer length does not match the array size");

    GainMap map;
    map.freq_axis_hz = axis(config.f_lo(), config.f_hi(), nf);
    map.angle_axis_rad = axis(range.theta_min, range.theta_max, na);

    std::vector<double> lin(static_cast<std::size_t>(nf) * static_cast<std::size_t>(na));
    const double scale = 2.0 * std::numbers::pi * config.spacing_m / speed_of_light;
    kernels::heatmap_omp(weights.phases, angles.rotation_coefficient(), scale, map.freq_axis_hz, map.angle_axis_rad,
                         lin);

    map.gains_db.resize(nf, na);
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < na; ++j)
            map.gains_db(i, j) = to_db(lin[static_cast<std::size_t>(i) * na + j]);
    return map;
}

BeamformerWeights narrowband_pointed_weights(const ArrayConfig &config, double theta, double mu)
{
    config.validate();
    const double step = composite_variable(config, config.carrier_freq_hz, theta) * mu;
    BeamformerWeights w;
    w.phases.resize(static_cast<std::size_t>(config.num_antennas));
    for (int n = 0; n < config.num_antennas; ++n)
        w.phases[n] = step * n;
    return w;
}

} // namespace squintless
