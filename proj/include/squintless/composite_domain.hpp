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

#include "squintless/geometry.hpp"

#include <vector>

namespace squintless
{

/// Angular coverage region [theta_min, theta_max] in radians.
/// Both ends lie in (-pi, pi]; a single direction (theta_min == theta_max)
/// is accepted for narrowband point coverage.
struct AngularRange
{
    double theta_min = 0.0;
    double theta_max = 0.0;

    void validate() const;
    double center() const { return 0.5 * (theta_min + theta_max); }
};

AngularRange make_angular_range_deg(double theta_min_deg, double theta_max_deg);

struct CompositeBounds
{
    double omega_lo = 0.0;
    double omega_hi = 0.0;
};

/// Uniform samples of the composite variable, both endpoints included.
struct CompositeGrid
{
    double omega_lo = 0.0;
    double omega_hi = 0.0;
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    double spacing() const
    {
        return samples.size() > 1 ? (omega_hi - omega_lo) / static_cast<double>(samples.size() - 1) : 0.0;
    }
};

/// Exact extent of (2*pi*d/c) * f * cos(theta) over the band and the range.
///
/// The extremes of cos(theta) over the range are taken from the two
/// endpoints plus theta = 0 and theta = pi when they are inside; the band
/// edges are positive so the bounds are attained on that finite corner set.
CompositeBounds composite_bounds(const ArrayConfig &config, const AngularRange &range);

/// L samples spaced uniformly over [omega_lo, omega_hi].
/// L == 1 is only meaningful for a degenerate interval.
CompositeGrid sample_grid(const CompositeBounds &bounds, int num_samples);

/// composite_bounds followed by sample_grid.
CompositeGrid make_composite_grid(const ArrayConfig &config, const AngularRange &range, int num_samples);

} // namespace squintless
