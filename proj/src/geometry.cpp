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

#include "squintless/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace squintless
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double a)
{
    if (!std::isfinite(a))
        throw std::invalid_argument("rotation angle must be finite");
    double r = std::fmod(a, two_pi);
    if (r < 0.0)
        r += two_pi;
    if (r >= two_pi) // fmod of a tiny negative value can round up to 2pi
        r = 0.0;
    return r;
}

} // namespace

void ArrayConfig::validate() const
{
    if (num_antennas < 1)
        throw std::invalid_argument("num_antennas must be >= 1 (got " + std::to_string(num_antennas) + ")");
    if (!(spacing_m > 0.0) || !std::isfinite(spacing_m))
        throw std::invalid_argument("element spacing must be a positive length in meters");
    if (!(carrier_freq_hz > 0.0) || !std::isfinite(carrier_freq_hz))
        throw std::invalid_argument("carrier frequency must be positive (Hz)");
    if (!(bandwidth_hz >= 0.0) || !std::isfinite(bandwidth_hz))
        throw std::invalid_argument("bandwidth must be >= 0 (Hz)");
    if (!(carrier_freq_hz > 0.5 * bandwidth_hz))
        throw std::invalid_argument("carrier frequency must exceed half the bandwidth");
}

ArrayConfig make_array_config(int num_antennas, double carrier_freq_hz, double bandwidth_hz,
                              double spacing_m)
{
    ArrayConfig cfg;
    cfg.num_antennas = num_antennas;
    cfg.carrier_freq_hz = carrier_freq_hz;
    cfg.bandwidth_hz = bandwidth_hz;
    cfg.spacing_m = spacing_m > 0.0 ? spacing_m : speed_of_light / (2.0 * carrier_freq_hz);
    cfg.validate();
    return cfg;
}

RotationAngles::RotationAngles(double alpha, double beta, double gamma)
    : alpha_(wrap_angle(alpha)), beta_(wrap_angle(beta)), gamma_(wrap_angle(gamma))
{
}

double RotationAngles::rotation_coefficient() const
{
    return std::cos(alpha_) * std::cos(gamma_);
}

Eigen::Matrix3d rotation_matrix(const RotationAngles &angles)
{
    const double ca = std::cos(angles.alpha()), sa = std::sin(angles.alpha());
    const double cb = std::cos(angles.beta()), sb = std::sin(angles.beta());
    const double cg = std::cos(angles.gamma()), sg = std::sin(angles.gamma());

    Eigen::Matrix3d rx, ry, rz;
    rx << 1, 0, 0,
          0, ca, -sa,
          0, sa, ca;
    ry << cb, 0, sb,
          0, 1, 0,
          -sb, 0, cb;
    rz << cg, -sg, 0,
          sg, cg, 0,
          0, 0, 1;
    return rx * ry * rz;
}

std::vector<Eigen::Vector3d> antenna_positions_global(const ArrayConfig &config,
                                                      const RotationAngles &angles)
{
    config.validate();
    const Eigen::Vector3d axis = rotation_matrix(angles).col(0);
    std::vector<Eigen::Vector3d> out;
    out.reserve(static_cast<std::size_t>(config.num_antennas));
    for (int n = 0; n < config.num_antennas; ++n)
        out.push_back(axis * (n * config.spacing_m));
    return out;
}

double composite_variable(const ArrayConfig &config, double freq_hz, double theta)
{
    return two_pi * config.spacing_m * freq_hz * std::cos(theta) / speed_of_light;
}

SteeringVector steering_vector(const ArrayConfig &config, double freq_hz, double theta,
                               const RotationAngles &angles)
{
    config.validate();
    const double slack = 1e-9 * config.carrier_freq_hz;
    if (freq_hz < config.f_lo() - slack || freq_hz > config.f_hi() + slack)
        throw std::out_of_range("frequency " + std::to_string(freq_hz) + " Hz is outside the band [" +
                                std::to_string(config.f_lo()) + ", " + std::to_string(config.f_hi()) + "]");

    // Beta never enters: only the x-component of the rotated array axis,
    // cos(alpha) * cos(gamma), projects onto the direction of departure.
    const double mu = angles.rotation_coefficient();
    return steering_vector_composite(config.num_antennas, composite_variable(config, freq_hz, theta), mu);
}

SteeringVector steering_vector_composite(int num_antennas, double omega_bar, double mu)
{
    if (num_antennas < 1)
        throw std::invalid_argument("num_antennas must be >= 1");
    if (!(std::abs(mu) <= 1.0 + 1e-12))
        throw std::invalid_argument("rotation coefficient must satisfy |mu| <= 1");
    SteeringVector a;
    a.entries.resize(num_antennas);
    const double step = omega_bar * mu;
    for (int n = 0; n < num_antennas; ++n)
        a.entries[n] = std::polar(1.0, step * n);
    return a;
}

} // namespace squintless
