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

#include "squintless/kernels.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace squintless::kernels
{

double composite_gain_at(std::span<const double> phases, double mu, double omega)
{
    const std::size_t n_ant = phases.size();
    const double step = omega * mu;
    double re = 0.0, im = 0.0;
    for (std::size_t n = 0; n < n_ant; ++n)
    {
        const double arg = step * static_cast<double>(n) - phases[n];
        re += std::cos(arg);
        im += std::sin(arg);
    }
    return (re * re + im * im) / static_cast<double>(n_ant);
}

Quadratic surrogate_at(std::span<const double> phases, double mu0, double omega)
{
    // Each term cos(k*mu - dphi) with k = omega*(n - m) is bounded below by
    // cos z0 - sin z0 * k*(mu - mu0) - k^2*(mu - mu0)^2 / 2. Pairs (n, m) and
    // (m, n) contribute identical coefficients, so only n > m is visited and
    // doubled; the N diagonal terms contribute cos(0) = 1 each.
    const std::size_t n_ant = phases.size();
    const double nd = static_cast<double>(n_ant);
    double sum_cos = 0.0, sum_sin_k = 0.0;
    for (std::size_t n = 1; n < n_ant; ++n)
    {
        for (std::size_t m = 0; m < n; ++m)
        {
            const double k = omega * static_cast<double>(n - m);
            const double z0 = k * mu0 - (phases[n] - phases[m]);
            sum_cos += std::cos(z0);
            sum_sin_k += std::sin(z0) * k;
        }
    }
    // sum over n > m of (n - m)^2 = N^2 (N^2 - 1) / 12
    const double sum_k2 = omega * omega * (nd * nd * (nd * nd - 1.0) / 12.0);

    Quadratic q;
    q.a = -sum_k2 / nd;
    q.b = 2.0 * (sum_k2 * mu0 - sum_sin_k) / nd;
    // The constant term is fixed by tightness at mu0, which the termwise sum
    // reproduces only up to cancellation in its large k^2 * mu0^2 parts.
    const double g0 = (2.0 * sum_cos + nd) / nd;
    q.c = g0 - (q.a * mu0 + q.b) * mu0;
    return q;
}

namespace
{

void check_sizes(std::size_t in, std::size_t out)
{
    if (in != out)
        throw std::invalid_argument("kernel output span has the wrong length");
}

} // namespace

void composite_gains_serial(std::span<const double> phases, double mu, std::span<const double> omegas,
                            std::span<double> out)
{
    check_sizes(omegas.size(), out.size());
    for (std::size_t l = 0; l < omegas.size(); ++l)
        out[l] = composite_gain_at(phases, mu, omegas[l]);
}

void composite_gains_omp(std::span<const double> phases, double mu, std::span<const double> omegas,
                         std::span<double> out)
{
    check_sizes(omegas.size(), out.size());
    const auto count = static_cast<std::ptrdiff_t>(omegas.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t l = 0; l < count; ++l)
        out[l] = composite_gain_at(phases, mu, omegas[l]);
}

void surrogates_serial(std::span<const double> phases, double mu0, std::span<const double> omegas,
                       std::span<Quadratic> out)
{
    check_sizes(omegas.size(), out.size());
    for (std::size_t l = 0; l < omegas.size(); ++l)
        out[l] = surrogate_at(phases, mu0, omegas[l]);
}

void surrogates_omp(std::span<const double> phases, double mu0, std::span<const double> omegas,
                    std::span<Quadratic> out)
{
    check_sizes(omegas.size(), out.size());
    const auto count = static_cast<std::ptrdiff_t>(omegas.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t l = 0; l < count; ++l)
        out[l] = surrogate_at(phases, mu0, omegas[l]);
}

void heatmap_serial(std::span<const double> phases, double mu, double omega_scale, std::span<const double> freqs,
                    std::span<const double> thetas, std::span<double> out)
{
    check_sizes(freqs.size() * thetas.size(), out.size());
    const std::size_t na = thetas.size();
    for (std::size_t i = 0; i < freqs.size(); ++i)
        for (std::size_t j = 0; j < na; ++j)
            out[i * na + j] = composite_gain_at(phases, mu, omega_scale * freqs[i] * std::cos(thetas[j]));
}

void heatmap_omp(std::span<const double> phases, double mu, double omega_scale, std::span<const double> freqs,
                 std::span<const double> thetas, std::span<double> out)
{
    check_sizes(freqs.size() * thetas.size(), out.size());
    const std::size_t na = thetas.size();
    const auto rows = static_cast<std::ptrdiff_t>(freqs.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < na; ++j)
            out[i * na + j] = composite_gain_at(phases, mu, omega_scale * freqs[i] * std::cos(thetas[j]));
}

} // namespace squintless::kernels
