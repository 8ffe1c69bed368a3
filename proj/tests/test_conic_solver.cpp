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

#include "squintless/conic_solver.hpp"
#include "squintless/geometry.hpp"

#include <doctest.h>

#include <random>

using namespace squintless;

namespace
{

double objective(const SdpProblem &p, const Eigen::MatrixXcd &W)
{
    double sigma = INFINITY;
    for (std::size_t l = 0; l < p.gain_factors.size(); ++l)
        sigma = std::min(sigma, (p.gain_matrix(l).matrix() * W).trace().real());
    return sigma + (p.linear_term.matrix() * W).trace().real();
}

SdpProblem random_problem(std::mt19937_64 &rng, int n, int l, double rho)
{
    std::uniform_real_distribution<double> u(-oracle::pi, oracle::pi);
    Eigen::MatrixXcd a(n, l);
    for (int j = 0; j < l; ++j)
        a.col(j) = steering_vector_composite(n, u(rng), 1.0).entries;
    Eigen::VectorXcd s(n);
    for (int i = 0; i < n; ++i)
        s[i] = {u(rng), u(rng)};
    s.normalize();
    return SdpProblem::from_steering(a, HermitianMatrix(rho * s * s.adjoint()), 1.0 / n);
}

} // namespace

TEST_CASE("HermitianMatrix symmetrizes and rejects bad input")
{
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, std::complex<double>(0, 1), std::complex<double>(0, -1 + 1e-12), 2.0;
    const HermitianMatrix h(m);
    CHECK((h.matrix() - h.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    Eigen::MatrixXcd bad = m;
    bad(0, 1) = 5.0;
    CHECK_THROWS_AS(HermitianMatrix{bad}, std::invalid_argument);
    CHECK_THROWS_AS(HermitianMatrix{Eigen::MatrixXcd(2, 3)}, std::invalid_argument);
}

TEST_CASE("psd_project clips negative eigenvalues")
{
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = -1.0;
    const auto p = psd_project(HermitianMatrix(d));
    CHECK(std::abs(p.matrix()(0, 0) - 2.0) < 1e-15);
    CHECK(p.matrix().cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("psd_project leaves PSD input alone and is idempotent")
{
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t)
    {
        const Eigen::MatrixXcd a = oracle::random_hermitian(rng, 5);
        const HermitianMatrix psd(a * a);
        CHECK((psd_project(psd).matrix() - psd.matrix()).cwiseAbs().maxCoeff() < 1e-12);
        const auto once = psd_project(HermitianMatrix(a));
        CHECK((psd_project(once).matrix() - once.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("psd_project matches the general eigensolver oracle and is the nearest PSD matrix")
{
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t)
    {
        const Eigen::MatrixXcd a = oracle::random_hermitian(rng, 6);
        const auto p = psd_project(HermitianMatrix(a)).matrix();
        CHECK((p - oracle::clip_eigenvalues(a)).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(oracle::eigenvalues_general(p).front() > -1e-12);
        const double dist = (p - a).norm();
        for (int k = 0; k < 20; ++k)
        {
            const Eigen::MatrixXcd b = oracle::random_hermitian(rng, 6);
            CHECK((b * b - a).norm() >= dist - 1e-12);
        }
    }
}

TEST_CASE("psd_project rejects non-finite entries")
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    m(0, 0) = NAN;
    CHECK_THROWS_AS(psd_project(HermitianMatrix(m)), std::invalid_argument);
}

TEST_CASE("SDP analytic N = 2 case")
{
    Eigen::MatrixXcd a(2, 1);
    a << 1.0, 1.0;
    const auto p = SdpProblem::from_steering(a, HermitianMatrix::zero(2), 0.5);
    const auto sol = solve_maxmin_sdp(p);
    CHECK(sol.sigma == doctest::Approx(2.0).epsilon(1e-6));
    CHECK((sol.W.matrix() - Eigen::MatrixXcd::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff() < 1e-6);

    // Brute force over W = 1/2 [[1, w], [w*, 1]] with |w| <= 1.
    double best = -INFINITY;
    for (int i = 0; i <= 200; ++i)
        for (int k = 0; k <= 200; ++k)
        {
            const std::complex<double> w(-1 + i / 100.0, -1 + k / 100.0);
            if (std::abs(w) > 1.0)
                continue;
            best = std::max(best, 1.0 + w.real());
        }
    CHECK(best == doctest::Approx(sol.sigma).epsilon(1e-6));
}

TEST_CASE("SDP with a scaled identity constraint is forced by the diagonal")
{
    const int n = 4;
    std::vector<HermitianMatrix> v{HermitianMatrix(Eigen::MatrixXcd::Identity(n, n) / n)};
    const auto p = SdpProblem::from_matrices(v, HermitianMatrix::zero(n), 1.0 / n);
    const auto sol = solve_maxmin_sdp(p);
    CHECK(sol.sigma == doctest::Approx(1.0 / n).epsilon(1e-6));
}

TEST_CASE("SDP certificates on random instances and no better feasible point")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t)
    {
        const int n = 2 + static_cast<int>(rng() % 7);
        const auto p = random_problem(rng, n, 1 + static_cast<int>(rng() % 12), t % 2 ? 20.0 : 0.0);
        const auto sol = solve_maxmin_sdp(p);
        const Eigen::MatrixXcd &W = sol.W.matrix();
        CHECK(sol.residuals.gap <= 1e-6);
        CHECK(sol.residuals.primal <= 1e-8);
        CHECK(oracle::eigenvalues_general(W).front() >= -1e-8);
        CHECK((W.diagonal().real().array() - 1.0 / n).abs().maxCoeff() <= 1e-8);
        for (std::size_t l = 0; l < p.gain_factors.size(); ++l)
            CHECK((p.gain_matrix(l).matrix() * W).trace().real() >= sol.sigma - 1e-8);
        CHECK(sol.objective == doctest::Approx(objective(p, W)).epsilon(1e-10));
        CHECK(sol.dual_bound >= sol.objective - 1e-9);
        for (int k = 0; k < 100; ++k)
        {
            const auto w2 = oracle::random_fixed_diag_psd(rng, n, 1 + static_cast<int>(rng() % n), 1.0 / n);
            CHECK(objective(p, w2) <= sol.objective + 1e-6);
        }
    }
}

TEST_CASE("SDP error paths")
{
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Ones(3, 2);
    CHECK_THROWS_AS(solve_maxmin_sdp(SdpProblem::from_steering(a, HermitianMatrix::zero(3), 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        solve_maxmin_sdp(SdpProblem::from_steering(Eigen::MatrixXcd(3, 0), HermitianMatrix::zero(3), 1.0 / 3)),
        std::invalid_argument);
    std::vector<HermitianMatrix> neg{HermitianMatrix(-Eigen::MatrixXcd::Identity(3, 3))};
    CHECK_THROWS_AS(SdpProblem::from_matrices(neg, HermitianMatrix::zero(3), 1.0 / 3), std::invalid_argument);

    std::mt19937_64 rng(4);
    auto p = random_problem(rng, 6, 10, 20.0);
    p.max_iterations = 2;
    try
    {
        solve_maxmin_sdp(p);
        FAIL("expected SolverError");
    }
    catch (const SolverError &e)
    {
        CHECK(e.residuals().gap > 1e-6);
    }
}

TEST_CASE("scalar max-min: single vertex")
{
    const std::vector<Quadratic> q{{-1, 0, 1}};
    const auto r = solve_scalar_maxmin_quadratic(q, -1, 1);
    CHECK(r.mu == doctest::Approx(0.0));
    CHECK(r.sigma == doctest::Approx(1.0));
}

TEST_CASE("scalar max-min: two mirrored parabolas meet at zero")
{
    const std::vector<Quadratic> q{{-1, 1, -0.25}, {-1, -1, -0.25}};
    const auto r = solve_scalar_maxmin_quadratic(q, -1, 1);
    CHECK(std::abs(r.mu) < 1e-12);
    CHECK(r.sigma == doctest::Approx(-0.25).epsilon(1e-12));
    const auto [x, v] = oracle::grid_max(
        [&](double mu) { return std::min(q[0](mu), q[1](mu)); }, -1, 1, 100001);
    CHECK(std::abs(x) < 1e-4);
    CHECK(v == doctest::Approx(r.sigma).epsilon(1e-9));
}

TEST_CASE("scalar max-min: constant constraint ties resolve to the lower end")
{
    const std::vector<Quadratic> q{{0, 0, 5}};
    const auto r = solve_scalar_maxmin_quadratic(q, -1, 1);
    CHECK(r.mu == -1.0);
    CHECK(r.sigma == 5.0);
}

TEST_CASE("scalar max-min: linear pieces")
{
    const std::vector<Quadratic> q{{0, 1, 0}, {0, -1, 0.5}};
    const auto r = solve_scalar_maxmin_quadratic(q, -1, 1);
    CHECK(r.mu == doctest::Approx(0.25));
    CHECK(r.sigma == doctest::Approx(0.25));
}

TEST_CASE("scalar max-min matches a dense grid refined by ternary search")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 200; ++t)
    {
        std::vector<Quadratic> q(1 + rng() % 8);
        for (auto &c : q)
            c = {-2 * std::abs(u(rng)), 2 * u(rng), u(rng)};
        const auto h = [&](double mu) {
            double m = INFINITY;
            for (const auto &c : q)
                m = std::min(m, c(mu));
            return m;
        };
        const auto r = solve_scalar_maxmin_quadratic(q, -1, 1);
        const auto [x, v] = oracle::maximize_concave(h, -1, 1, 20001);
        CHECK(std::abs(r.sigma - v) <= 1e-9);
        CHECK(std::abs(h(r.mu) - r.sigma) <= 1e-12);
    }
}

TEST_CASE("scalar max-min error paths")
{
    const std::vector<Quadratic> convex{{1, 0, 0}};
    CHECK_THROWS_AS(solve_scalar_maxmin_quadratic(convex, -1, 1), std::invalid_argument);
    CHECK_THROWS_AS(solve_scalar_maxmin_quadratic(std::span<const Quadratic>{}, -1, 1), std::invalid_argument);
    const std::vector<Quadratic> ok{{-1, 0, 0}};
    CHECK_THROWS_AS(solve_scalar_maxmin_quadratic(ok, 1, 1), std::invalid_argument);
}
