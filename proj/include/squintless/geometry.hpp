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

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <numbers>
#include <vector>

namespace squintless
{

inline constexpr double speed_of_light = 2.99792458e8; // m/s

/// Uniform linear array and the frequency band it transmits over.
///
/// Elements sit on the local x-axis at x_n = n * spacing, n = 0..N-1.
/// A spacing of zero at construction time means half a wavelength at the
/// carrier frequency.
struct ArrayConfig
{
    int num_antennas = 32;
    double spacing_m = 0.0;
    double carrier_freq_hz = 1e12;
    double bandwidth_hz = 1e11;

    /// Throws std::invalid_argument when N < 1, spacing <= 0 or the band
    /// would reach non-positive frequencies.
    void validate() const;

    double f_lo() const { return carrier_freq_hz - 0.5 * bandwidth_hz; }
    double f_hi() const { return carrier_freq_hz + 0.5 * bandwidth_hz; }
    double wavelength() const { return speed_of_light / carrier_freq_hz; }
};

/// Builds a validated config. spacing_m <= 0 selects half-wavelength spacing.
ArrayConfig make_array_config(int num_antennas, double carrier_freq_hz, double bandwidth_hz,
                              double spacing_m = 0.0);

/// Rotations about the x-, y- and z-axes in radians, normalized into [0, 2pi).
class RotationAngles
{
public:
    RotationAngles() = default;
    RotationAngles(double alpha, double beta, double gamma);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

    /// cos(alpha) * cos(gamma), the only way the rotation enters the gain.
    double rotation_coefficient() const;

private:
    double alpha_ = 0.0;
    double beta_ = 0.0;
    double gamma_ = 0.0;
};

/// Per-antenna phase factors; every entry has unit modulus.
struct SteeringVector
{
    Eigen::VectorXcd entries;
    std::size_t size() const { return static_cast<std::size_t>(entries.size()); }
};

/// R = Rx(alpha) * Ry(beta) * Rz(gamma).
Eigen::Matrix3d rotation_matrix(const RotationAngles &angles);

/// Antenna coordinates in the global frame: k(n) = R * [x_n, 0, 0]^T.
std::vector<Eigen::Vector3d> antenna_positions_global(const ArrayConfig &config,
                                                      const RotationAngles &angles);

/// Array response at frequency f (Hz) and angle of departure theta (rad).
/// Entry n has phase 2*pi*f*cos(theta)*cos(alpha)*cos(gamma)*x_n/c.
/// Throws std::out_of_range when f lies outside the configured band.
SteeringVector steering_vector(const ArrayConfig &config, double freq_hz, double theta,
                               const RotationAngles &angles);

/// Array response in the composite domain: entry n = exp(j*omega_bar*mu*n).
SteeringVector steering_vector_composite(int num_antennas, double omega_bar, double mu);

/// Composite variable for a physical (f, theta) pair, in radians per element.
double composite_variable(const ArrayConfig &config, double freq_hz, double theta);

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

} // namespace squintless
