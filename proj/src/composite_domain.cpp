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

#include "squintless/composite_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace squintless
{

void AngularRange::validate() const
{
    if (!std::isfinite(theta_min) || !std::isfinite(theta_max))
        throw std::invalid_argument("angular range bounds must be finite");
    if (theta_min > theta_max)
        throw std::invalid_argument("angular range is empty: theta_min must not exceed theta_max");
    const double pi = std::numbers::pi;
    if (theta_min <= -pi || theta_max > pi)
        throw std::invalid_argument("angular range must lie within (-pi, pi]");
}

AngularRange make_angular_range_deg(double theta_min_deg, double theta_max_deg)
{
    AngularRange r{deg_to_rad(theta_min_deg), deg_to_rad(theta_max_deg)};
    r.validate();
    return r;
}

CompositeBounds composite_bounds(const ArrayConfig &config, const AngularRange &range)
{
    config.validate();
    range.validate();

    double cos_lo = std::min(std::cos(range.theta_min), std::cos(range.theta_max));
    double cos_hi = std::max(std::cos(range.theta_min), std::cos(range.theta_max));
    if (range.theta_min <= 0.0 && range.theta_max >= 0.0)
        cos_hi = 1.0;
    if (range.theta_max >= std::numbers::pi)
        cos_lo = -1.0;

    const double scale = 2.0 * std::numbers::pi * config.spacing_m / speed_of_light;
    const double corners[4] = {cos_lo * config.f_lo(), cos_lo * config.f_hi(),
                               cos_hi * config.f_lo(), cos_hi * config.f_hi()};
    const auto [lo, hi] = std::minmax_element(std::begin(corners), std::end(corners));
    return {scale * *lo, scale * *hi};
}

CompositeGrid sample_grid(const CompositeBounds &bounds, int num_samples)
{
    if (num_samples < 1)
        throw std::invalid_argument("number of composite samples must be >= 1");
    if (bounds.omega_hi < bounds.omega_lo)
        throw std::invalid_argument("composite bounds are inverted");
    if (num_samples == 1 && bounds.omega_hi != bounds.omega_lo)
        throw std::invalid_argument("a single composite sample requires a degenerate interval");

    CompositeGrid grid;
    grid.omega_lo = bounds.omega_lo;
    grid.omega_hi = bounds.omega_hi;
    grid.samples.resize(static_cast<std::size_t>(num_samples));
    if (num_samples == 1)
    {
        grid.samples[0] = bounds.omega_lo;
        return grid;
    }
    const double width = bounds.omega_hi - bounds.omega_lo;
    const double denom = static_cast<double>(num_samples - 1);
    for (int l = 0; l < num_samples; ++l)
        grid.samples[l] = bounds.omega_lo + (static_cast<double>(l) / denom) * width;
    grid.samples.back() = bounds.omega_hi;
    return grid;
}

CompositeGrid make_composite_grid(const ArrayConfig &config, const AngularRange &range, int num_samples)
{
    return sample_grid(composite_bounds(config, range), num_samples);
}

} // namespace squintless
