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

#include "squintless/geometry.hpp"

#include <doctest.h>

#include <random>

using namespace squintless;

TEST_CASE("rotation_matrix of zero angles is the identity")
{
    CHECK((rotation_matrix({0, 0, 0}) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rotation_matrix about x by a quarter turn")
{
    Eigen::Matrix3d expected;
    expected << 1, 0, 0, 0, 0, -1, 0, 1, 0;
    CHECK((rotation_matrix({oracle::pi / 2, 0, 0}) - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("rotation_matrix is in SO(3) for random angles")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int t = 0; t < 1000; ++t)
    {
        const Eigen::Matrix3d r = rotation_matrix({u(rng), u(rng), u(rng)});
        CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
    }
}

TEST_CASE("RotationAngles are normalized into [0, 2pi)")
{
    const RotationAngles a(-oracle::pi / 2, 2 * oracle::pi, 5 * oracle::pi);
    CHECK(a.alpha() == doctest::Approx(1.5 * oracle::pi));
    CHECK(a.beta() == 0.0);
    CHECK(a.gamma() == doctest::Approx(oracle::pi));
    const RotationAngles tiny(-1e-300, 0, 0);
    CHECK(tiny.alpha() >= 0.0);
    CHECK(tiny.alpha() < 2 * oracle::pi);
    CHECK_THROWS_AS(RotationAngles(NAN, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(RotationAngles(0, INFINITY, 0), std::invalid_argument);
}

TEST_CASE("antenna positions without rotation lie on the x-axis")
{
    const auto cfg = make_array_config(3, 1e12, 1e11, 1.0);
    const auto k = antenna_positions_global(cfg, {});
    REQUIRE(k.size() == 3);
    for (int n = 0; n < 3; ++n)
        CHECK((k[n] - Eigen::Vector3d(n, 0, 0)).norm() == 0.0);
}

TEST_CASE("antenna positions follow the first column of R and keep their distance")
{
    const auto cfg = make_array_config(4, 1e12, 1e11, 1.0);
    const auto k = antenna_positions_global(cfg, {0, 0, oracle::pi / 2});
    CHECK((k[1] - Eigen::Vector3d(0, 1, 0)).norm() < 1e-15);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (int t = 0; t < 50; ++t)
    {
        const RotationAngles a(u(rng), u(rng), u(rng));
        const auto p = antenna_positions_global(cfg, a);
        const Eigen::Matrix3d r = rotation_matrix(a);
        for (int n = 0; n < 4; ++n)
        {
            CHECK(std::abs(p[n].norm() - n) < 1e-12);
            CHECK((p[n] - r * Eigen::Vector3d(n, 0, 0)).norm() < 1e-12);
        }
    }
}

TEST_CASE("steering_vector is all ones at theta = pi/2 and at gamma = pi/2")
{
    const auto cfg = make_array_config(8, 1e12, 1e11);
    const auto a = steering_vector(cfg, 1.03e12, oracle::pi / 2, {0.3, 0.4, 0.5});
    const auto b = steering_vector(cfg, 0.96e12, 0.2, {0, 0, oracle::pi / 2});
    for (int n = 0; n < 8; ++n)
    {
        CHECK(std::abs(a.entries[n] - 1.0) < 1e-13);
        CHECK(std::abs(b.entries[n] - 1.0) < 1e-13);
    }
}

TEST_CASE("steering_vector half-cycle element phase gives -1 on the second antenna")
{
    // f * cos(theta) * d / c = 1/2 with theta = 0 and no rotation.
    const double f = 1e12;
    const auto cfg = make_array_config(2, f, 0.0, oracle::c0 / (2 * f));
    const auto a = steering_vector(cfg, f, 0.0, {});
    CHECK(std::abs(a.entries[0] - 1.0) < 1e-15);
    CHECK(std::abs(a.entries[1] - std::complex<double>(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("steering_vector matches the direct phase formula, is unit modulus and ignores beta")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t)
    {
        const int n = 1 + static_cast<int>(rng() % 40);
        const auto cfg = make_array_config(n, 1e12, 1e11);
        const double f = cfg.f_lo() + u(rng) * cfg.bandwidth_hz;
        const double theta = -oracle::pi + 2 * oracle::pi * u(rng);
        const double al = 6 * u(rng), be = 6 * u(rng), ga = 6 * u(rng);
        const auto a = steering_vector(cfg, f, theta, {al, be, ga});
        const auto b = steering_vector(cfg, f, theta, {al, be + 1.234, ga});
        const auto ref = oracle::steering(n, cfg.spacing_m, f, theta, al, ga);
        for (int i = 0; i < n; ++i)
        {
            CHECK(std::abs(std::abs(a.entries[i]) - 1.0) < 1e-12);
            CHECK(std::abs(a.entries[i] - ref[i]) < 1e-9);
            CHECK(a.entries[i] == b.entries[i]);
        }
    }
}

TEST_CASE("steering_vector rejects frequencies outside the band")
{
    const auto cfg = make_array_config(4, 1e12, 1e11);
    CHECK_THROWS_AS(steering_vector(cfg, 0.9e12, 0.0, {}), std::out_of_range);
    CHECK_THROWS_AS(steering_vector(cfg, 1.06e12, 0.0, {}), std::out_of_range);
    CHECK_NOTHROW(steering_vector(cfg, 0.95e12, 0.0, {}));
    CHECK_NOTHROW(steering_vector(cfg, 1.05e12, 0.0, {}));
}

TEST_CASE("steering_vector_composite basic values")
{
    const auto ones = steering_vector_composite(5, 2.0, 0.0);
    for (int n = 0; n < 5; ++n)
        CHECK(ones.entries[n] == std::complex<double>(1.0, 0.0));
    const auto alt = steering_vector_composite(4, oracle::pi, 1.0);
    const double expected[] = {1, -1, 1, -1};
    for (int n = 0; n < 4; ++n)
        CHECK(std::abs(alt.entries[n] - expected[n]) < 1e-15);
    CHECK_THROWS_AS(steering_vector_composite(4, 1.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(steering_vector_composite(0, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("composite and physical parameterizations agree and only omega*mu matters")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t)
    {
        const auto cfg = make_array_config(16, 1e12, 1e11);
        const double f = cfg.f_lo() + u(rng) * cfg.bandwidth_hz, theta = 3 * u(rng);
        const RotationAngles ang(6 * u(rng), 6 * u(rng), 6 * u(rng));
        const double omega = composite_variable(cfg, f, theta), mu = ang.rotation_coefficient();
        const auto phys = steering_vector(cfg, f, theta, ang);
        const auto comp = steering_vector_composite(16, omega, mu);
        const auto prod = steering_vector_composite(16, omega * mu, 1.0);
        CHECK((phys.entries - comp.entries).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((comp.entries - prod.entries).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("ArrayConfig validation")
{
    CHECK_THROWS_AS(make_array_config(0, 1e12, 1e11), std::invalid_argument);
    CHECK_THROWS_AS(make_array_config(4, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_array_config(4, 1e12, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_array_config(4, 1e12, 2e12), std::invalid_argument);
    const auto cfg = make_array_config(4, 1e12, 0.0);
    CHECK(cfg.spacing_m == doctest::Approx(oracle::c0 / 2e12));
    CHECK(cfg.f_lo() == cfg.f_hi());
}
