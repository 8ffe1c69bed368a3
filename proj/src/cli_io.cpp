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

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace squintless
{

using ojson = nlohmann::ordered_json;

std::pair<int, int> parse_heatmap_res(const std::string &text)
{
    const auto x = text.find_first_of("xX");
    if (x == std::string::npos)
        throw ConfigError("--heatmap-res must look like NFxNA (e.g. 64x64), got '" + text + "'");
    try
    {
        std::size_t p1 = 0, p2 = 0;
        const std::string a = text.substr(0, x), b = text.substr(x + 1);
        const int nf = std::stoi(a, &p1);
        const int na = std::stoi(b, &p2);
        if (p1 != a.size() || p2 != b.size())
            throw std::invalid_argument("trailing characters");
        if (nf < 1 || na < 1)
            throw ConfigError("--heatmap-res dimensions must be >= 1, got '" + text + "'");
        return {nf, na};
    }
    catch (const ConfigError &)
    {
        throw;
    }
    catch (const std::exception &)
    {
        throw ConfigError("--heatmap-res must look like NFxNA (e.g. 64x64), got '" + text + "'");
    }
}

RunConfig parse_config(const std::vector<std::string> &args)
{
    RunConfig rc;
    CLI::App app{"Wideband beam-squint mitigation with a rotatable linear array", "squintless"};
    app.set_version_flag("--version", version_string);
    app.set_config("--config", "", "Read options from a TOML/INI file (flags given on the command line win)");
    app.require_subcommand(1);

    int num_antennas = 32;
    double carrier = 1e12, bandwidth = 1e11, spacing = 0.0;
    std::string heatmap_res = "64x64";
    std::uint64_t seed = 0;

    app.add_option("--num-antennas", num_antennas, "Number of array elements N")->capture_default_str();
    app.add_option("--carrier-freq-hz", carrier, "Carrier frequency f_c in Hz")->capture_default_str();
    app.add_option("--bandwidth-hz,--bandwidth", bandwidth, "Total bandwidth B in Hz")->capture_default_str();
    app.add_option("--spacing-m", spacing, "Element spacing in meters (0: half wavelength at f_c)")
        ->capture_default_str();
    app.add_option("--theta-min-deg", rc.theta_min_deg, "Lower edge of the angular range, degrees")
        ->capture_default_str();
    app.add_option("--theta-max-deg", rc.theta_max_deg, "Upper edge of the angular range, degrees")
        ->capture_default_str();
    app.add_option("--samples", rc.params.num_samples, "Composite-domain samples L")->capture_default_str();
    app.add_option("--penalty-rho", rc.params.rho, "Rank-one penalty weight rho")->capture_default_str();
    app.add_option("--seed", seed, "Seed for Gaussian randomization")->capture_default_str();
    app.add_option("--randomizations", rc.params.num_randomizations, "Gaussian randomization draws")
        ->capture_default_str();
    app.add_option("--ao-tol", rc.params.ao_tol, "Relative min-gain improvement that stops AO")
        ->capture_default_str();
    app.add_option("--ao-max-iter", rc.params.ao_max_iter, "Maximum AO iterations")->capture_default_str();
    std::string out_dir = ".";
    app.add_option("--out-dir", out_dir, "Directory for exported files")->capture_default_str();
    app.add_option("--scheme", rc.schemes, "Scheme id(s): 1, 2, 3, 4, proposed");
    app.add_option("--heatmap-res", heatmap_res, "Heatmap resolution NFxNA")->capture_default_str();
    std::string report_path;
    app.add_option("--report", report_path, "sweep: read weights and mu from an exported report");

    app.add_subcommand("solve", "Run the alternating optimization and export report.json")->fallthrough();
    app.add_subcommand("benchmark", "Run all schemes and export benchmark.json with a comparison table")
        ->fallthrough();
    app.add_subcommand("sweep", "Export frequency/angle gain heatmaps as CSV")->fallthrough();
    app.add_subcommand("validate", "Run the invariant suite")->fallthrough();

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp &)
    {
        rc.help_text = app.help();
        return rc;
    }
    catch (const CLI::CallForAllHelp &)
    {
        rc.help_text = app.help("", CLI::AppFormatMode::All);
        return rc;
    }
    catch (const CLI::CallForVersion &)
    {
        rc.help_text = std::string(version_string) + "\n";
        return rc;
    }
    catch (const CLI::ParseError &e)
    {
        throw ConfigError(e.what(), e.get_exit_code() == 0 ? 2 : e.get_exit_code());
    }

    rc.command = app.get_subcommands().front()->get_name();

    if (num_antennas < 1)
        throw ConfigError("--num-antennas must be >= 1 (got " + std::to_string(num_antennas) + ")");
    if (!(carrier > 0.0))
        throw ConfigError("--carrier-freq-hz must be a positive frequency in Hz");
    if (!(bandwidth >= 0.0))
        throw ConfigError("--bandwidth-hz must be >= 0 Hz");
    if (!(carrier > 0.5 * bandwidth))
        throw ConfigError("--bandwidth-hz must be less than twice --carrier-freq-hz (band must stay positive)");
    if (spacing < 0.0)
        throw ConfigError("--spacing-m must be >= 0 (0 selects half wavelength)");
    if (!(rc.theta_min_deg < rc.theta_max_deg))
        throw ConfigError("theta_min must be < theta_max");
    if (rc.theta_min_deg <= -180.0 || rc.theta_max_deg > 180.0)
        throw ConfigError("angles must lie in (-180, 180] degrees");
    if (rc.params.num_samples < 2)
        throw ConfigError("--samples must be >= 2");
    if (!(rc.params.rho > 0.0))
        throw ConfigError("--penalty-rho must be positive");
    if (rc.params.num_randomizations < 1)
        throw ConfigError("--randomizations must be >= 1");
    if (!(rc.params.ao_tol > 0.0) || rc.params.ao_max_iter < 1)
        throw ConfigError("--ao-tol and --ao-max-iter must be positive");
    for (const auto &s : rc.schemes)
    {
        try
        {
            parse_scheme(s);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(std::string("--scheme: ") + e.what());
        }
    }

    const auto [nf, na] = parse_heatmap_res(heatmap_res);
    rc.heatmap_nf = nf;
    rc.heatmap_na = na;
    rc.params.rng_seed = seed;
    rc.out_dir = out_dir;
    rc.report_path = report_path;

    try
    {
        rc.array = make_array_config(num_antennas, carrier, bandwidth, spacing);
        rc.range = make_angular_range_deg(rc.theta_min_deg, rc.theta_max_deg);
        rc.params.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    return rc;
}

void write_file_atomic(const std::filesystem::path &path, const std::string &contents)
{
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out)
            throw IoError("failed writing '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec)
    {
        std::filesystem::remove(tmp);
        throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
    }
}

namespace
{

constexpr double db_floor = -120.0;

std::string fixed(double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos)
        s.erase(0, 1); // no "-0.0000"
    return s;
}

// Truncates toward zero at 4 decimals, so 10*log10(32) = 15.05149... prints 15.0514.
std::string db_cell(double db)
{
    if (!(db > db_floor))
        db = db_floor;
    return fixed(std::trunc(db * 1e4) / 1e4, 4);
}

double finite_db(double gain)
{
    const double db = to_db(gain);
    return db > db_floor ? db : db_floor;
}

ojson trace_json(const ScaTrace &t)
{
    ojson j;
    j["iterations"] = t.iterations;
    j["converged"] = t.converged;
    j["objective_values"] = t.objective_values;
    if (!t.rank_one_gaps.empty())
    {
        j["rank_one_gaps"] = t.rank_one_gaps;
        j["rho"] = t.rho;
        j["escalated"] = t.escalated;
        j["restart_index"] = t.restart_index;
    }
    return j;
}

ojson scheme_json(const BenchmarkResult &b)
{
    const SolveReport &r = b.report;
    ojson j;
    j["id"] = b.id;
    j["description"] = b.description;
    j["mu"] = r.mu;
    j["alpha_rad"] = r.angles.alpha();
    j["alpha_deg"] = rad_to_deg(r.angles.alpha());
    j["beta_rad"] = r.angles.beta();
    j["beta_deg"] = rad_to_deg(r.angles.beta());
    j["gamma_rad"] = r.angles.gamma();
    j["gamma_deg"] = rad_to_deg(r.angles.gamma());
    j["phases_rad"] = r.weights.phases;
    j["min_gain_linear"] = r.min_gain;
    j["min_gain_db"] = finite_db(r.min_gain);
    j["argmin_index"] = r.argmin_index;

    std::vector<double> curve_db;
    curve_db.reserve(b.gain_curve.size());
    for (double g : b.gain_curve)
        curve_db.push_back(finite_db(g));
    j["gain_curve"] = {{"omega_rad", r.grid.samples}, {"gain_linear", b.gain_curve}, {"gain_db", curve_db}};

    ojson traces;
    traces["ao"] = r.ao_trace;
    traces["ao_iterations"] = r.ao_iterations;
    traces["ao_converged"] = r.ao_converged;
    ojson bf = ojson::array(), rot = ojson::array();
    for (const auto &t : r.beamforming_traces)
        bf.push_back(trace_json(t));
    for (const auto &t : r.rotation_traces)
        rot.push_back(trace_json(t));
    traces["sca_beamforming"] = bf;
    traces["sca_rotation"] = rot;
    j["traces"] = traces;

    j["solver"] = {{"init_min_gain", r.init_min_gain},
                   {"sdr_sigma", r.sdr_sigma},
                   {"final_rank_one_ratio", r.final_rank_one_ratio},
                   {"max_primal_residual", r.worst_sdp_residuals.primal},
                   {"max_dual_residual", r.worst_sdp_residuals.dual},
                   {"max_relative_gap", r.worst_sdp_residuals.gap}};
    if (b.scheme == Scheme::WidebandFixedRotation)
        j["fixed_rotation"] = {{"center_angle_deg", 0.0}, {"mu", r.mu}};
    return j;
}

} // namespace

std::string heatmap_csv_string(const GainMap &map)
{
    if (map.gains_db.rows() != static_cast<Eigen::Index>(map.freq_axis_hz.size()) ||
        map.gains_db.cols() != static_cast<Eigen::Index>(map.angle_axis_rad.size()))
        throw std::invalid_argument("gain map dimensions are inconsistent");
    std::ostringstream os;
    os << "freq_ghz/theta_deg";
    for (double a : map.angle_axis_rad)
        os << ',' << fixed(rad_to_deg(a), 6);
    os << '\n';
    for (std::size_t i = 0; i < map.freq_axis_hz.size(); ++i)
    {
        os << fixed(map.freq_axis_hz[i] * 1e-9, 6);
        for (std::size_t j = 0; j < map.angle_axis_rad.size(); ++j)
            os << ',' << db_cell(map.gains_db(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        os << '\n';
    }
    return os.str();
}

void export_heatmap_csv(const GainMap &map, const std::filesystem::path &path)
{
    write_file_atomic(path, heatmap_csv_string(map));
}

std::string report_json_string(const std::vector<BenchmarkResult> &results, const RunConfig &config)
{
    ojson doc;
    doc["version"] = version_string;
    doc["config"] = {{"num_antennas", config.array.num_antennas},
                     {"spacing_m", config.array.spacing_m},
                     {"carrier_freq_hz", config.array.carrier_freq_hz},
                     {"bandwidth_hz", config.array.bandwidth_hz},
                     {"theta_min_deg", rad_to_deg(config.range.theta_min)},
                     {"theta_max_deg", rad_to_deg(config.range.theta_max)},
                     {"samples", config.params.num_samples},
                     {"penalty_rho", config.params.rho},
                     {"ao_tol", config.params.ao_tol},
                     {"ao_max_iter", config.params.ao_max_iter},
                     {"sca_beamforming_tol", config.params.beamforming.tol},
                     {"sca_beamforming_max_iter", config.params.beamforming.max_iter},
                     {"sdp_tolerance", config.params.beamforming.sdp_tolerance},
                     {"sca_rotation_tol", config.params.rotation.tol},
                     {"sca_rotation_max_iter", config.params.rotation.max_iter},
                     {"randomizations", config.params.num_randomizations}};
    doc["seed"] = config.params.rng_seed;
    if (!results.empty())
    {
        const CompositeGrid &g = results.front().report.grid;
        doc["grid"] = {{"omega_lo_rad", g.omega_lo}, {"omega_hi_rad", g.omega_hi}, {"samples", g.size()}};
    }
    ojson schemes = ojson::array();
    for (const auto &b : results)
    {
        ojson s = scheme_json(b);
        if (b.scheme == Scheme::WidebandFixedRotation)
            s["fixed_rotation"]["center_angle_deg"] = rad_to_deg(config.range.center());
        schemes.push_back(std::move(s));
    }
    doc["schemes"] = std::move(schemes);
    return doc.dump(2) + "\n";
}

void export_report_json(const std::vector<BenchmarkResult> &results, const RunConfig &config,
                        const std::filesystem::path &path)
{
    write_file_atomic(path, report_json_string(results, config));
}

void export_report_json(const SolveReport &report, const RunConfig &config, const std::filesystem::path &path)
{
    BenchmarkResult b;
    b.scheme = Scheme::Proposed;
    b.id = scheme_id(Scheme::Proposed);
    b.description = scheme_description(Scheme::Proposed);
    b.report = report;
    b.gain_curve = report.gain_curve;
    export_report_json(std::vector<BenchmarkResult>{b}, config, path);
}

LoadedScheme load_report_scheme(const std::filesystem::path &path, const std::string &scheme_id)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open report '" + path.string() + "'");
    ojson doc;
    try
    {
        doc = ojson::parse(in);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw IoError("malformed report '" + path.string() + "': " + e.what());
    }
    if (!doc.contains("schemes") || !doc["schemes"].is_array())
        throw IoError("report '" + path.string() + "' has no schemes array");
    for (const auto &s : doc["schemes"])
    {
        if (s.value("id", std::string{}) != scheme_id)
            continue;
        LoadedScheme out;
        out.id = scheme_id;
        out.weights.phases = s.at("phases_rad").get<std::vector<double>>();
        out.mu = s.at("mu").get<double>();
        out.min_gain = s.at("min_gain_linear").get<double>();
        out.grid.samples = s.at("gain_curve").at("omega_rad").get<std::vector<double>>();
        if (!out.grid.samples.empty())
        {
            out.grid.omega_lo = out.grid.samples.front();
            out.grid.omega_hi = out.grid.samples.back();
        }
        return out;
    }
    throw IoError("report '" + path.string() + "' has no scheme '" + scheme_id + "'");
}

} // namespace squintless
