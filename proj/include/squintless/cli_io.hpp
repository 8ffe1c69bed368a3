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

#include "squintless/beam_eval.hpp"
#include "squintless/composite_domain.hpp"
#include "squintless/geometry.hpp"
#include "squintless/orchestrator.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace squintless
{

inline constexpr const char *version_string = "squintless 0.1.0";

/// Bad command line or configuration; carries the process exit code.
class ConfigError : public std::runtime_error
{
public:
    explicit ConfigError(const std::string &what, int exit_code = 2)
        : std::runtime_error(what), exit_code_(exit_code)
    {
    }
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig
{
    std::string command;
    ArrayConfig array;
    AngularRange range;
    double theta_min_deg = 0.0;
    double theta_max_deg = 60.0;
    SolveParams params;
    std::filesystem::path out_dir = ".";
    std::vector<std::string> schemes; ///< empty: all schemes
    int heatmap_nf = 64;
    int heatmap_na = 64;
    std::filesystem::path report_path; ///< sweep input, optional
    std::string help_text;             ///< non-empty when --help was requested
};

/// Parses `args` (args[0] is the program name). Precedence is
/// command-line flag > --config file > built-in default.
/// Throws ConfigError with an actionable message on any invalid input.
RunConfig parse_config(const std::vector<std::string> &args);

/// "NFxNA", e.g. "64x128".
std::pair<int, int> parse_heatmap_res(const std::string &text);

/// CSV: first row is the angle axis in degrees, first column the frequency
/// axis in GHz, body the gain in dB truncated to 4 decimals, floored at -120.
void export_heatmap_csv(const GainMap &map, const std::filesystem::path &path);
std::string heatmap_csv_string(const GainMap &map);

/// JSON document with a fixed key order; one entry per scheme in "schemes".
void export_report_json(const std::vector<BenchmarkResult> &results, const RunConfig &config,
                        const std::filesystem::path &path);
void export_report_json(const SolveReport &report, const RunConfig &config, const std::filesystem::path &path);
std::string report_json_string(const std::vector<BenchmarkResult> &results, const RunConfig &config);

struct LoadedScheme
{
    std::string id;
    BeamformerWeights weights;
    double mu = 1.0;
    double min_gain = 0.0;
    CompositeGrid grid;
};

/// Reads one scheme entry back from an exported report.
LoadedScheme load_report_scheme(const std::filesystem::path &path, const std::string &scheme_id);

/// Writes `contents` to a temporary sibling file and renames it over `path`.
void write_file_atomic(const std::filesystem::path &path, const std::string &contents);

} // namespace squintless
