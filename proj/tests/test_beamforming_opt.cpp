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

#include "oracles.hpp"

#include "squintless/beam_eval.hpp"
#include "squintless/beamforming_opt.hpp"
#include "squintless/composite_domain.hpp"

#include <doctest.h>

#include <random>

using namespace squintless;

namespace
{

Eigen::MatrixXcd random_psd(std::mt19937_64 &rng, int n)
{
    const Eigen::MatrixXcd a = oracle::random_hermitian(rng, n);
    return a * a;
}

double top_eigenvalue(const Eigen::MatrixXcd &w)
{
    return oracle::eigenvalues_general(w).back();
}

} // namespace

TEST_CASE("rank_one_gap basic values")
{
    Eigen::VectorXcd v(3);
    v << 1.0, std::complex<double>(0, 2), -1.0;
    CHECK(std::abs(rank_one_gap(HermitianMatrix::outer(v))) < 1e-12);
    CHECK(rank_one_gap(HermitianMatrix(Eigen::MatrixXcd::Identity(2, 2))) == doctest::Approx(1.0));
    CHECK_THROWS_AS(rank_one_gap(HermitianMatrix(-Eigen::MatrixXcd::Identity(2, 2))), std::invalid_argument);
}

TEST_CASE("rank_one_gap equals trace minus top eigenvalue from the general eigensolver")
{
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t)
    {
        const Eigen::MatrixXcd w = random_psd(rng, 5);
        const auto ev = oracle::eigenvalues_general(w);
        double sum = 0.0;
        for (double e : ev)
            sum += e;
        CHECK(std::abs(rank_one_gap(HermitianMatrix(w)) - (sum - ev.back())) < 1e-10 * std::max(1.0, sum));
    }
}

TEST_CASE("spectral_subgradient basic values")
{
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    const auto s = spectral_subgradient(HermitianMatrix(d)).matrix();
    CHECK(std::abs(s(0, 0) - 1.0) < 1e-12);
    CHECK(s.cwiseAbs().sum() == doctest::Approx(1.0));

    Eigen::VectorXcd v(3);
    v << 2.0, std::complex<double>(1, 1), -0.5;
    const auto g = spectral_subgradient(HermitianMatrix::outer(v)).matrix();
    CHECK((g - v * v.adjoint() / v.squaredNorm()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("spectral_subgradient is deterministic for a degenerate top eigenvalue")
{
    const auto a = spectral_subgradient(HermitianMatrix(Eigen::MatrixXcd::Identity(3, 3))).matrix();
    const auto b = spectral_subgradient(HermitianMatrix(Eigen::MatrixXcd::Identity(3, 3))).matrix();
    CHECK(a == b);
    CHECK(a.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("spectral_subgradient picks out the spectral norm and linearizes the penalty")
{
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t)
    {
        const Eigen::MatrixXcd w0 = random_psd(rng, 6);
        const Eigen::MatrixXcd s = spectral_subgradient(HermitianMatrix(w0)).matrix();
        CHECK(std::abs((s * w0).trace().real() - top_eigenvalue(w0)) < 1e-10 * top_eigenvalue(w0));

        // f(W) = Tr W - ||W||_2 and its linearization at W0.
        const auto f = [](const Eigen::MatrixXcd &w) { return w.trace().real() - top_eigenvalue(w); };
        const auto f_lin = [&](const Eigen::MatrixXcd &w) { return w.trace().real() - (s * w).trace().real(); };
        CHECK(std::abs(f_lin(w0) - f(w0)) < 1e-10 * std::max(1.0, w0.norm()));
        for (int k = 0; k < 10; ++k)
        {
            const Eigen::MatrixXcd w = random_psd(rng, 6);
            CHECK(f_lin(w) >= f(w) - 1e-8 * std::max(1.0, w.norm()));
        }
    }
}

TEST_CASE("extract_weights recovers the phases of a rank-one matrix")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-oracle::pi, oracle::pi);
    const int n = 7;
    Eigen::VectorXcd v(n);
    std::vector<double> phi(n);
    for (int i = 0; i < n; ++i)
    {
        phi[i] = u(rng);
        v[i] = std::polar(1.0 / std::sqrt(n), phi[i]);
    }
    const auto w = extract_weights(HermitianMatrix::outer(v));
    REQUIRE(w.size() == n);
    CHECK(w.phases[0] == 0.0);
    for (int i = 0; i < n; ++i)
    {
        const double diff = std::remainder((w.phases[i] - w.phases[0]) - (phi[i] - phi[0]), 2 * oracle::pi);
        CHECK(std::abs(diff) < 1e-9);
        CHECK(std::abs(w.complex_weights()[i]) == doctest::Approx(1.0 / std::sqrt(n)).epsilon(1e-15));
    }
}

TEST_CASE("extract_weights of the all-ones matrix is the uniform beamformer")
{
    const auto w = extract_weights(HermitianMatrix(Eigen::MatrixXcd::Constant(5, 5, 0.2)));
    for (double p : w.phases)
        CHECK(std::abs(p) < 1e-12);
    const auto grid = sample_grid({0.5, 3.0}, 10);
    CHECK(min_composite_gain(w, 0.0, grid).value == doctest::Approx(5.0));
}

TEST_CASE("extract_weights handles zero entries")
{
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(3);
    v[1] = std::complex<double>(0.0, 1.0);
    const auto w = extract_weights(HermitianMatrix::outer(v));
    CHECK(w.phases[0] == 0.0);
    CHECK(w.phases[2] == 0.0);
}

TEST_CASE("SCA on a single grid point converges to the matched filter")
{
    const int n = 6;
    const auto grid = sample_grid({1.1, 1.1}, 1);
    const HermitianMatrix w0(Eigen::MatrixXcd::Identity(n, n) / n);
    const auto res = sca_beamforming(grid, 0.8, w0);
    CHECK(res.trace.converged);
    const auto weights = extract_weights(res.W);
    CHECK(min_composite_gain(weights, 0.8, grid).value == doctest::Approx(n).epsilon(1e-6));
    CHECK(rank_one_gap(res.W) < 1e-6);
}

TEST_CASE("SCA started at an optimal rank-one point stays put")
{
    const int n = 5;
    const auto grid = sample_grid({0.9, 0.9}, 1);
    const Eigen::VectorXcd a = steering_vector_composite(n, 0.9, 1.0).entries / std::sqrt(n);
    const auto res = sca_beamforming(grid, 1.0, HermitianMatrix::outer(a));
    REQUIRE(res.trace.objective_values.size() >= 2);
    CHECK(std::abs(res.trace.objective_values[1] - res.trace.objective_values[0]) <= 1e-4 * n);
}

TEST_CASE("SCA objective is non-decreasing within each penalty segment")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 4; ++t)
    {
        const int n = 4 + 2 * t;
        const auto grid = sample_grid({0.3 + u(rng), 1.5 + u(rng)}, 12);
        const auto res = sca_beamforming(grid, 2 * u(rng) - 1, HermitianMatrix(Eigen::MatrixXcd::Identity(n, n) / n));
        const auto &v = res.trace.objective_values;
        for (std::size_t i = 1; i < v.size(); ++i)
        {
            if (res.trace.escalated && i == res.trace.restart_index)
                continue;
            CHECK(v[i] >= v[i - 1] - 10 * 1e-6 * std::max(1.0, std::abs(v[i - 1])));
        }
        CHECK(res.trace.rank_one_gaps.size() == v.size());
    }
}

TEST_CASE("sca_beamforming rejects an initial point with the wrong diagonal")
{
    const auto grid = sample_grid({1.0, 2.0}, 4);
    CHECK_THROWS_AS(sca_beamforming(grid, 1.0, HermitianMatrix(Eigen::MatrixXcd::Identity(3, 3))),
                    std::invalid_argument);
}

TEST_CASE("steering_matrix columns are composite steering vectors")
{
    const auto grid = sample_grid({0.5, 1.5}, 5);
    const auto a = steering_matrix(4, grid, 0.3);
    for (int l = 0; l < 5; ++l)
        CHECK((a.col(l) - steering_vector_composite(4, grid.samples[l], 0.3).entries).cwiseAbs().maxCoeff() < 1e-15);
}
