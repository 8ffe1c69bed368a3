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

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP variant; both write each output slot from the same expression, so
// results are bit-identical regardless of thread count.

#include "squintless/quadratic.hpp"

#include <span>

namespace squintless::kernels
{

/// |sum_n exp(j(omega*mu*n - phase_n))|^2 / N.
double composite_gain_at(std::span<const double> phases, double mu, double omega);

/// Quadratic minorizer of composite_gain_at(phases, mu, omega) in mu, tight at mu0.
Quadratic surrogate_at(std::span<const double> phases, double mu0, double omega);

void composite_gains_serial(std::span<const double> phases, double mu, std::span<const double> omegas,
                            std::span<double> out);
void composite_gains_omp(std::span<const double> phases, double mu, std::span<const double> omegas,
                         std::span<double> out);

void surrogates_serial(std::span<const double> phases, double mu0, std::span<const double> omegas,
                       std::span<Quadratic> out);
void surrogates_omp(std::span<const double> phases, double mu0, std::span<const double> omegas,
                    std::span<Quadratic> out);

/// Gains on a (row = frequency, column = angle) grid; `omega_scale` is
/// 2*pi*d/c so that the composite variable is omega_scale * f * cos(theta).
/// `out` is row-major, freqs.size() x thetas.size().
void heatmap_serial(std::span<const double> phases, double mu, double omega_scale, std::span<const double> freqs,
                    std::span<const double> thetas, std::span<double> out);
void heatmap_omp(std::span<const double> phases, double mu, double omega_scale, std::span<const double> freqs,
                 std::span<const double> thetas, std::span<double> out);

} // namespace squintless::kernels
