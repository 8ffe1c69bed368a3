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

#include "squintless/cli_io.hpp"
#include "squintless/orchestrator.hpp"
#include "squintless/rotation_opt.hpp"
#include "squintless/validation.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>

namespace sq = squintless;

namespace
{

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("squintless");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::info);
    if (const char *env = std::getenv("SQUINTLESS_LOG"))
        spdlog::set_level(spdlog::level::from_str(env));
}

std::vector<sq::Scheme> selected_schemes(const sq::RunConfig &rc)
{
    if (rc.schemes.empty())
        return sq::all_schemes();
    std::vector<sq::Scheme> out;
    for (const auto &s : rc.schemes)
        out.push_back(sq::parse_scheme(s));
    return out;
}

int cmd_solve(const sq::RunConfig &rc)
{
    const auto report = sq::alternating_optimize(rc.array, rc.range, rc.params);
    const auto path = rc.out_dir / "report.json";
    sq::export_report_json(report, rc, path);
    std::printf("min gain %.4f dB at mu = %.6f (gamma = %.4f deg) after %d AO iterations\n", report.min_gain_db,
                report.mu, sq::rad_to_deg(report.angles.gamma()), report.ao_iterations);
    std::printf("wrote %s\n", path.string().c_str());
    return 0;
}

int cmd_benchmark(const sq::RunConfig &rc)
{
    const auto schemes = selected_schemes(rc);
    const auto results = sq::run_benchmarks(schemes, rc.array, rc.range, rc.params);
    const auto path = rc.out_dir / "benchmark.json";
    sq::export_report_json(results, rc, path);

    std::printf("%-9s %-62s %10s %14s\n", "scheme", "description", "mu", "min gain [dB]");
    for (const auto &r : results)
        std::printf("%-9s %-62s %10.6f %14.4f\n", r.id.c_str(), r.description.c_str(), r.report.mu,
                    r.report.min_gain_db);
    std::printf("wrote %s\n", path.string().c_str());
    return 0;
}

int cmd_sweep(const sq::RunConfig &rc)
{
    struct Job
    {
        std::string name;
        sq::BeamformerWeights weights;
        double mu;
    };
    std::vector<Job> jobs;
    if (!rc.report_path.empty())
    {
        const std::vector<std::string> ids = rc.schemes.empty() ? std::vector<std::string>{"proposed"} : rc.schemes;
        for (const auto &id : ids)
        {
            const auto s = sq::load_report_scheme(rc.report_path, id);
            if (static_cast<int>(s.weights.size()) != rc.array.num_antennas)
                throw sq::ConfigError("report scheme '" + id + "' has " + std::to_string(s.weights.size()) +
                                      " phases but --num-antennas is " + std::to_string(rc.array.num_antennas));
            jobs.push_back({id, s.weights, s.mu});
        }
    }
    else
    {
        const auto report = sq::alternating_optimize(rc.array, rc.range, rc.params);
        jobs.push_back({"norotation", sq::narrowband_pointed_weights(rc.array, rc.range.center()), 1.0});
        jobs.push_back({"rotation", report.weights, report.mu});
    }
    for (const auto &j : jobs)
    {
        const auto map = sq::gain_heatmap(j.weights, sq::reconstruct_angles(j.mu), rc.array, rc.range,
                                          rc.heatmap_nf, rc.heatmap_na);
        const auto path = rc.out_dir / ("heatmap_" + j.name + ".csv");
        sq::export_heatmap_csv(map, path);
        std::printf("wrote %s (min %.4f dB)\n", path.string().c_str(), map.gains_db.minCoeff());
    }
    return 0;
}

int cmd_validate(const sq::RunConfig &rc)
{
    int failures = 0;
    for (const auto &c : sq::run_invariant_suite(rc.params.rng_seed))
    {
        std::printf("%s  %s (%s)\n", c.passed ? "ok  " : "FAIL", c.name.c_str(), c.detail.c_str());
        failures += c.passed ? 0 : 1;
    }
    std::printf("%d check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    setup_logging();
    sq::RunConfig rc;
    try
    {
        rc = sq::parse_config(std::vector<std::string>(argv, argv + argc));
    }
    catch (const sq::ConfigError &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    }
    if (!rc.help_text.empty())
    {
        std::cout << rc.help_text;
        return 0;
    }

    try
    {
        if (rc.command == "solve")
            return cmd_solve(rc);
        if (rc.command == "benchmark")
            return cmd_benchmark(rc);
        if (rc.command == "sweep")
            return cmd_sweep(rc);
        return cmd_validate(rc);
    }
    catch (const sq::ConfigError &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code();
    }
    catch (const std::exception &e)
    {
        spdlog::error("{}", e.what());
        return 1;
    }
}
