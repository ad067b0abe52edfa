// Copyright 2026 The vbmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file experiment.hpp
 * @brief Configuration-driven scenario runner and its output formats.
 *
 * A run is a pure function of (config, seed). Scenario points are visited
 * in a fixed order and point k draws its counts from seed ^ k, so output
 * files are byte-identical across runs.
 *
 * results.csv columns:
 *   scenario, state, angle_deg, time_us, fidelity_raw, fidelity_corrected,
 *   bound_poisson, bound_efficiency, pass_shor_preskill
 * Empty cells mean "not applicable". Rows named average / avg_hybrid /
 * avg_linear / avg_circular hold means over the per-state rows above them.
 */

#ifndef VBMEM_EXPERIMENT_HPP
#define VBMEM_EXPERIMENT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <span>
#include <string_view>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "vbmem/error.hpp"
#include "vbmem/fields.hpp"
#include "vbmem/io.hpp"
#include "vbmem/memory.hpp"
#include "vbmem/optics.hpp"
#include "vbmem/photodetection.hpp"
#include "vbmem/pipeline.hpp"
#include "vbmem/security.hpp"
#include "vbmem/tomography.hpp"

namespace vbmem {

using json = nlohmann::json;

enum class Scenario { StoreTomography, FidelityVsTime, FidelityVsRotation, FieldMaps, BoundsTable };

inline constexpr std::array<std::pair<Scenario, std::string_view>, 5> kScenarioNames{{
    {Scenario::StoreTomography, "store_tomography"},
    {Scenario::FidelityVsTime, "fidelity_vs_time"},
    {Scenario::FidelityVsRotation, "fidelity_vs_rotation"},
    {Scenario::FieldMaps, "field_maps"},
    {Scenario::BoundsTable, "bounds_table"},
}};

inline std::string_view to_string(Scenario s) {
    for (const auto &[value, name] : kScenarioNames) {
        if (value == s) return name;
    }
    return "unknown";
}

inline std::optional<Scenario> scenario_from_string(std::string_view name) {
    for (const auto &[value, text] : kScenarioNames) {
        if (text == name) return value;
    }
    return std::nullopt;
}

inline double degrees(double radians) { return radians * 180.0 / kPi; }
inline double radians(double degrees) { return degrees * kPi / 180.0; }

/// 0 to 60 degrees in 10 degree steps, plus 45.
inline std::vector<double> default_rotation_angles() {
    std::vector<double> out;
    for (double deg : {0.0, 10.0, 20.0, 30.0, 40.0, 45.0, 50.0, 60.0}) out.push_back(radians(deg));
    return out;
}

struct ExperimentConfig {
    Scenario scenario = Scenario::StoreTomography;
    SourceParams source{};
    MemoryParams memory{0.26, 7.0, 0.0, 0.0, 0.0};
    QPlateParams qplate{};
    std::uint64_t trials_per_projection = 150000;
    /// Detection-cage rotations, radians.
    std::vector<double> rotation_angles = default_rotation_angles();
    /// Storage times, microseconds.
    std::vector<double> storage_times{1.0};
    std::vector<std::string> input_states{"zero", "one", "radial", "azimuthal", "plus_i", "minus_i"};
    std::uint64_t seed = 1;
    bool encode_with_qplate = true;
    Grid grid{};
    std::vector<double> bounds_nbar{0.1, 0.5, 1.0};
    int bootstrap_resamples = 0;

    bool operator==(const ExperimentConfig &) const = default;
};

// --------------------------------------------------------------------------
// Config (de)serialization

inline json to_json(const ExperimentConfig &c) {
    json j;
    j["scenario"] = std::string(to_string(c.scenario));
    j["seed"] = c.seed;
    j["trials_per_projection"] = c.trials_per_projection;
    j["encode_with_qplate"] = c.encode_with_qplate;
    j["input_states"] = c.input_states;
    j["rotation_angles"] = c.rotation_angles;
    j["storage_times"] = c.storage_times;
    j["bounds_nbar"] = c.bounds_nbar;
    j["bootstrap_resamples"] = c.bootstrap_resamples;
    j["source"] = {{"nbar", c.source.nbar}};
    j["memory"] = {{"eta0", c.memory.eta0},
                   {"tau", c.memory.tau},
                   {"bg_click", c.memory.bg_click},
                   {"rail_imbalance", c.memory.rail_imbalance},
                   {"rail_phase_error", c.memory.rail_phase_error}};
    j["qplate"] = {{"q", c.qplate.q},
                   {"alpha0", c.qplate.alpha0},
                   {"tuning_delta", c.qplate.tuning_delta},
                   {"conversion_efficiency", c.qplate.conversion_efficiency}};
    j["grid"] = {{"nx", c.grid.nx}, {"ny", c.grid.ny}, {"extent", c.grid.extent}};
    return j;
}

namespace detail {

/// Collects every field-level problem before failing, so one run reports
/// all of them.
class ConfigReader {
   public:
    void problem(const std::string &path, const std::string &why) { problems_.push_back(path + ": " + why); }

    template <typename T>
    void read(const json &obj, const std::string &parent, const char *key, T &target) {
        const auto it = obj.find(key);
        if (it == obj.end()) return;
        const std::string path = parent.empty() ? key : parent + "." + key;
        try {
            if constexpr (std::is_same_v<T, double>) {
                if (!it->is_number()) throw std::invalid_argument("expected a number");
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!it->is_boolean()) throw std::invalid_argument("expected true or false");
            } else if constexpr (std::is_integral_v<T>) {
                if (!it->is_number_integer()) throw std::invalid_argument("expected an integer");
                if constexpr (std::is_unsigned_v<T>) {
                    if (it->is_number_integer() && !it->is_number_unsigned() && it->template get<long long>() < 0) {
                        throw std::invalid_argument("expected a non-negative integer");
                    }
                }
            } else if constexpr (std::is_same_v<T, std::vector<double>>) {
                if (!it->is_array()) throw std::invalid_argument("expected an array of numbers");
                for (const auto &v : *it) {
                    if (!v.is_number()) throw std::invalid_argument("expected an array of numbers");
                }
            } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
                if (!it->is_array()) throw std::invalid_argument("expected an array of strings");
                for (const auto &v : *it) {
                    if (!v.is_string()) throw std::invalid_argument("expected an array of strings");
                }
            }
            target = it->template get<T>();
        } catch (const std::exception &e) {
            problem(path, e.what());
        }
    }

    void reject_unknown(const json &obj, const std::string &parent, std::initializer_list<std::string_view> known) {
        for (const auto &item : obj.items()) {
            bool ok = false;
            for (std::string_view k : known) ok = ok || item.key() == k;
            if (!ok) problem(parent.empty() ? item.key() : parent + "." + item.key(), "unknown key");
        }
    }

    const json *section(const json &root, const char *key) {
        const auto it = root.find(key);
        if (it == root.end()) return nullptr;
        if (!it->is_object()) {
            problem(key, "expected an object");
            return nullptr;
        }
        return &*it;
    }

    template <typename F>
    void check(const std::string &path, F &&validate) {
        try {
            validate();
        } catch (const Error &e) {
            problem(path, e.what());
        }
    }

    void finish() const {
        if (problems_.empty()) return;
        std::string msg = "invalid configuration";
        for (const std::string &p : problems_) msg += "\n  " + p;
        throw Error(ErrorKind::ConfigError, msg);
    }

   private:
    std::vector<std::string> problems_;
};

}  // namespace detail

namespace detail {

inline void check_values(const ExperimentConfig &c, ConfigReader &r) {
    r.check("source", [&] { c.source.validate(); });
    r.check("memory", [&] { c.memory.validate(); });
    r.check("qplate", [&] { c.qplate.validate(); });
    r.check("grid", [&] { c.grid.validate(); });
    if (c.trials_per_projection < 1) r.problem("trials_per_projection", "must be >= 1");
    if (c.bootstrap_resamples < 0) r.problem("bootstrap_resamples", "must be >= 0");
    for (const std::string &name : c.input_states) {
        if (!find_named_state(name)) r.problem("input_states", "unknown state '" + name + "'");
    }
    for (double t : c.storage_times) {
        if (!(t >= 0.0) || !std::isfinite(t)) r.problem("storage_times", "times must be finite and >= 0");
    }
    for (double a : c.rotation_angles) {
        if (!std::isfinite(a)) r.problem("rotation_angles", "angles must be finite");
    }
    for (double n : c.bounds_nbar) {
        if (!(n > 0.0) || !std::isfinite(n)) r.problem("bounds_nbar", "values must be > 0");
    }
    const bool needs_states = c.scenario != Scenario::BoundsTable;
    if (needs_states && c.input_states.empty()) r.problem("input_states", "must not be empty");
    const bool needs_times = c.scenario == Scenario::StoreTomography || c.scenario == Scenario::FidelityVsTime ||
                             c.scenario == Scenario::FidelityVsRotation;
    if (needs_times && c.storage_times.empty()) r.problem("storage_times", "must not be empty");
    if (c.scenario == Scenario::FidelityVsRotation && c.rotation_angles.empty()) {
        r.problem("rotation_angles", "must not be empty");
    }
    if (c.scenario == Scenario::BoundsTable && c.bounds_nbar.empty()) r.problem("bounds_nbar", "must not be empty");
}

}  // namespace detail

/// Throws ConfigError listing every offending field.
inline void validate(const ExperimentConfig &c) {
    detail::ConfigReader r;
    detail::check_values(c, r);
    r.finish();
}

/// Missing keys keep their defaults. Throws ConfigError.
inline ExperimentConfig config_from_json(const json &j) {
    if (!j.is_object()) throw Error(ErrorKind::ConfigError, "configuration must be a JSON object");
    ExperimentConfig c;
    detail::ConfigReader r;
    r.reject_unknown(j, "",
                     {"scenario", "seed", "trials_per_projection", "encode_with_qplate", "input_states", "rotation_angles",
                      "storage_times", "bounds_nbar", "bootstrap_resamples", "source", "memory", "qplate", "grid"});
    std::string scenario = std::string(to_string(c.scenario));
    r.read(j, "", "scenario", scenario);
    if (const auto s = scenario_from_string(scenario)) {
        c.scenario = *s;
    } else {
        r.problem("scenario", "unknown scenario '" + scenario + "'");
    }
    r.read(j, "", "seed", c.seed);
    r.read(j, "", "trials_per_projection", c.trials_per_projection);
    r.read(j, "", "encode_with_qplate", c.encode_with_qplate);
    r.read(j, "", "input_states", c.input_states);
    r.read(j, "", "rotation_angles", c.rotation_angles);
    r.read(j, "", "storage_times", c.storage_times);
    r.read(j, "", "bounds_nbar", c.bounds_nbar);
    r.read(j, "", "bootstrap_resamples", c.bootstrap_resamples);
    if (const json *s = r.section(j, "source")) {
        r.reject_unknown(*s, "source", {"nbar"});
        r.read(*s, "source", "nbar", c.source.nbar);
    }
    if (const json *m = r.section(j, "memory")) {
        r.reject_unknown(*m, "memory", {"eta0", "tau", "bg_click", "rail_imbalance", "rail_phase_error"});
        r.read(*m, "memory", "eta0", c.memory.eta0);
        r.read(*m, "memory", "tau", c.memory.tau);
        r.read(*m, "memory", "bg_click", c.memory.bg_click);
        r.read(*m, "memory", "rail_imbalance", c.memory.rail_imbalance);
        r.read(*m, "memory", "rail_phase_error", c.memory.rail_phase_error);
    }
    if (const json *q = r.section(j, "qplate")) {
        r.reject_unknown(*q, "qplate", {"q", "alpha0", "tuning_delta", "conversion_efficiency"});
        r.read(*q, "qplate", "q", c.qplate.q);
        r.read(*q, "qplate", "alpha0", c.qplate.alpha0);
        r.read(*q, "qplate", "tuning_delta", c.qplate.tuning_delta);
        r.read(*q, "qplate", "conversion_efficiency", c.qplate.conversion_efficiency);
    }
    if (const json *g = r.section(j, "grid")) {
        r.reject_unknown(*g, "grid", {"nx", "ny", "extent"});
        r.read(*g, "grid", "nx", c.grid.nx);
        r.read(*g, "grid", "ny", c.grid.ny);
        r.read(*g, "grid", "extent", c.grid.extent);
    }
    detail::check_values(c, r);
    r.finish();
    return c;
}

/// Throws IoError when unreadable, ConfigError on bad syntax or content.
inline ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::ConfigError, path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

// --------------------------------------------------------------------------
// Report

struct ResultRow {
    std::string scenario;
    std::string state;
    std::optional<double> angle_deg;
    std::optional<double> time_us;
    std::optional<double> fidelity_raw;
    std::optional<double> fidelity_corrected;
    std::optional<double> bound_poisson;
    std::optional<double> bound_efficiency;
    std::optional<bool> pass_shor_preskill;
};

struct OutputFile {
    std::string name;
    std::string contents;
};

struct Report {
    Scenario scenario = Scenario::StoreTomography;
    std::vector<ResultRow> rows;
    /// One JSON object per tomography point.
    std::vector<json> densities;
    /// Pixmaps, grids and count tables.
    std::vector<OutputFile> files;
};

inline constexpr std::string_view kResultsHeader =
    "scenario,state,angle_deg,time_us,fidelity_raw,fidelity_corrected,bound_poisson,bound_efficiency,pass_shor_preskill";

inline std::string results_csv(const Report &report) {
    std::ostringstream os;
    os << kResultsHeader << '\n';
    auto cell = [&](const std::optional<double> &v) {
        if (v) os << format_number(*v);
    };
    for (const ResultRow &r : report.rows) {
        os << r.scenario << ',' << r.state << ',';
        cell(r.angle_deg);
        os << ',';
        cell(r.time_us);
        os << ',';
        cell(r.fidelity_raw);
        os << ',';
        cell(r.fidelity_corrected);
        os << ',';
        cell(r.bound_poisson);
        os << ',';
        cell(r.bound_efficiency);
        os << ',';
        if (r.pass_shor_preskill) os << (*r.pass_shor_preskill ? "true" : "false");
        os << '\n';
    }
    return os.str();
}

inline std::string densities_jsonl(const Report &report) {
    std::string out;
    for (const json &j : report.densities) out += j.dump() + '\n';
    return out;
}

namespace detail {

inline json matrix_json(const DensityMatrix &rho) {
    json re = json::array();
    json im = json::array();
    for (int r = 0; r < 2; ++r) {
        re.push_back({rho(r, 0).real(), rho(r, 1).real()});
        im.push_back({rho(r, 0).imag(), rho(r, 1).imag()});
    }
    return json{{"re", re}, {"im", im}};
}

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Bounds {
    double poisson;
    double efficiency;
};

inline Bounds bounds_for(double nbar, double eta) {
    if (!(nbar > 0.0)) return Bounds{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    const double eff = std::max(eta, std::numeric_limits<double>::min());
    return Bounds{classical_bound_poisson(nbar), classical_bound_with_efficiency({nbar, std::min(eff, 1.0)})};
}

inline std::optional<double> present(double v) { return std::isfinite(v) ? std::optional<double>(v) : std::nullopt; }

struct PointSpec {
    std::string name;
    Encoding encoding;
    double time_us;
    double rotation;
};

class Runner {
   public:
    explicit Runner(const ExperimentConfig &c) : cfg_(c) { report_.scenario = c.scenario; }

    /// Runs one tomography point and appends its row and density record.
    /// Returns the row for aggregation.
    ResultRow point(const PointSpec &p) {
        const std::uint64_t job_seed = cfg_.seed ^ job_++;
        ChannelSettings s{cfg_.source, cfg_.memory, cfg_.qplate, p.encoding, p.time_us, p.rotation};
        const HybridState target = logical_state(p.name);
        const Bounds b = bounds_for(cfg_.source.nbar, efficiency_at(cfg_.memory, p.time_us));

        ResultRow row{std::string(to_string(cfg_.scenario)), p.name, degrees(p.rotation), p.time_us,
                      std::nullopt, std::nullopt, present(b.poisson), present(b.efficiency), std::nullopt};
        json rec{{"scenario", row.scenario},
                 {"state", p.name},
                 {"encoding", std::string(to_string(p.encoding))},
                 {"angle_deg", *row.angle_deg},
                 {"time_us", p.time_us},
                 {"seed", job_seed},
                 {"bound_poisson", finite_or_null(b.poisson)},
                 {"bound_efficiency", finite_or_null(b.efficiency)}};
        try {
            const PointResult r = simulate_point(target, s, cfg_.trials_per_projection, job_seed);
            row.fidelity_raw = r.fidelity_raw;
            row.fidelity_corrected = r.fidelity_corrected;
            row.pass_shor_preskill = shor_preskill_pass(r.fidelity_raw);
            rec["rho_raw"] = matrix_json(r.rho_raw);
            rec["rho_corrected"] = matrix_json(r.rho_corrected);
            rec["fidelity_raw"] = r.fidelity_raw;
            rec["fidelity_corrected"] = r.fidelity_corrected;
            rec["pass_shor_preskill"] = *row.pass_shor_preskill;
            rec["survival"] = r.channel.survival;
            rec["snr"] = finite_or_null(r.snr);
            json counts;
            for (const CountRecord &c : r.counts) counts[std::string(to_string(c.projector))] = c.clicks;
            rec["counts"] = counts;
            rec["trials"] = cfg_.trials_per_projection;
            rec["bg_expected"] = r.counts[0].bg_clicks_expected;
            if (cfg_.bootstrap_resamples > 0) {
                const BootstrapSummary raw = bootstrap_fidelity(r.counts, target, {false}, cfg_.bootstrap_resamples,
                                                                job_seed ^ 0x9E3779B97F4A7C15ULL);
                const BootstrapSummary cor = bootstrap_fidelity(r.counts, target, {true}, cfg_.bootstrap_resamples,
                                                                job_seed ^ 0x9E3779B97F4A7C15ULL);
                rec["bootstrap"] = {{"resamples", raw.resamples},
                                    {"raw_stddev", raw.stddev},
                                    {"corrected_stddev", cor.stddev}};
            }
            if (cfg_.scenario == Scenario::StoreTomography) {
                std::ostringstream os;
                write_counts_csv(os, r.counts);
                report_.files.push_back({"counts_" + p.name + ".csv", os.str()});
            }
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::InsufficientCounts) throw;
            rec["error"] = e.what();
        }
        report_.densities.push_back(std::move(rec));
        report_.rows.push_back(row);
        return row;
    }

    /// Mean over the rows with results; the spread across states goes to the
    /// density log.
    void average(const std::string &label, const std::vector<ResultRow> &rows, double angle_deg, double time_us) {
        double raw = 0.0, cor = 0.0, raw_sq = 0.0;
        int n = 0;
        for (const ResultRow &r : rows) {
            if (!r.fidelity_raw) continue;
            raw += *r.fidelity_raw;
            raw_sq += *r.fidelity_raw * *r.fidelity_raw;
            cor += *r.fidelity_corrected;
            ++n;
        }
        const Bounds b = bounds_for(cfg_.source.nbar, efficiency_at(cfg_.memory, time_us));
        ResultRow row{std::string(to_string(cfg_.scenario)), label, angle_deg, time_us, std::nullopt, std::nullopt,
                      present(b.poisson), present(b.efficiency), std::nullopt};
        json rec{{"scenario", row.scenario}, {"state", label}, {"angle_deg", angle_deg}, {"time_us", time_us},
                 {"states_averaged", n}};
        if (n > 0) {
            row.fidelity_raw = raw / n;
            row.fidelity_corrected = cor / n;
            row.pass_shor_preskill = shor_preskill_pass(std::clamp(*row.fidelity_raw, 0.0, 1.0));
            rec["fidelity_raw"] = *row.fidelity_raw;
            rec["fidelity_corrected"] = *row.fidelity_corrected;
            rec["fidelity_raw_spread"] =
                n > 1 ? std::sqrt(std::max(0.0, (raw_sq - n * (*row.fidelity_raw) * (*row.fidelity_raw)) / (n - 1))) : 0.0;
        }
        report_.densities.push_back(std::move(rec));
        report_.rows.push_back(row);
    }

    void tomography_over_times(std::span<const double> times) {
        const Encoding enc = cfg_.encode_with_qplate ? Encoding::Hybrid : Encoding::Polarization;
        for (double t : times) {
            std::vector<ResultRow> rows;
            for (const std::string &name : cfg_.input_states) rows.push_back(point({name, enc, t, 0.0}));
            average("average", rows, 0.0, t);
        }
    }

    void rotation_sweep() {
        const double t = cfg_.storage_times.front();
        for (double theta : cfg_.rotation_angles) {
            std::vector<ResultRow> hybrid;
            for (const std::string &name : cfg_.input_states) hybrid.push_back(point({name, Encoding::Hybrid, t, theta}));
            average("avg_hybrid", hybrid, degrees(theta), t);

            std::vector<ResultRow> linear;
            std::vector<ResultRow> circular;
            for (const std::string &name : cfg_.input_states) {
                const std::string alias(polarization_alias(name));
                const ResultRow row = point({alias, Encoding::Polarization, t, theta});
                (is_linear(alias) ? linear : circular).push_back(row);
            }
            if (!linear.empty()) average("avg_linear", linear, degrees(theta), t);
            if (!circular.empty()) average("avg_circular", circular, degrees(theta), t);
        }
    }

    void field_maps() {
        const Basis basis = cfg_.encode_with_qplate ? Basis::HybridPoincare : Basis::Polarization;
        for (const std::string &name : cfg_.input_states) {
            const VectorFieldMap m = vector_field_map(logical_state(name, basis), cfg_.grid);
            const RealField inten = intensity(m);
            std::ostringstream pgm, ppm, grid;
            write_pgm(pgm, inten);
            write_ppm(ppm, m);
            for (int iy = cfg_.grid.ny - 1; iy >= 0; --iy) {
                for (int ix = 0; ix < cfg_.grid.nx; ++ix) {
                    grid << format_number(inten.at(ix, iy)) << (ix + 1 < cfg_.grid.nx ? ',' : '\n');
                }
            }
            report_.files.push_back({"field_" + name + "_intensity.pgm", pgm.str()});
            report_.files.push_back({"field_" + name + "_polarization.ppm", ppm.str()});
            report_.files.push_back({"field_" + name + "_intensity.csv", grid.str()});
            report_.densities.push_back(json{{"scenario", "field_maps"},
                                             {"state", name},
                                             {"basis", to_string(basis)},
                                             {"nx", cfg_.grid.nx},
                                             {"ny", cfg_.grid.ny},
                                             {"extent", cfg_.grid.extent},
                                             {"total_power", m.total_power()}});
        }
    }

    void bounds_table() {
        for (double nbar : cfg_.bounds_nbar) {
            const Bounds b = bounds_for(nbar, cfg_.memory.eta0);
            report_.rows.push_back(ResultRow{"bounds_table", "nbar=" + format_number(nbar), std::nullopt, std::nullopt,
                                             std::nullopt, std::nullopt, present(b.poisson), present(b.efficiency),
                                             std::nullopt});
        }
    }

    Report take() { return std::move(report_); }

   private:
    const ExperimentConfig &cfg_;
    Report report_;
    std::uint64_t job_ = 0;
};

}  // namespace detail

/// Runs the configured scenario. Throws ConfigError for invalid configs.
inline Report run(const ExperimentConfig &config) {
    validate(config);
    detail::Runner runner(config);
    switch (config.scenario) {
        case Scenario::StoreTomography:
            runner.tomography_over_times(std::span<const double>(config.storage_times).first(1));
            break;
        case Scenario::FidelityVsTime: runner.tomography_over_times(config.storage_times); break;
        case Scenario::FidelityVsRotation: runner.rotation_sweep(); break;
        case Scenario::FieldMaps: runner.field_maps(); break;
        case Scenario::BoundsTable: runner.bounds_table(); break;
    }
    return runner.take();
}

enum class EmitFormat { Csv, JsonLines, Pixmap };

/// Writes the report into `dir` (created if needed) and returns the paths
/// written. Count tables go out with Csv, grids and pixmaps with Pixmap.
/// Throws IoError.
inline std::vector<std::filesystem::path> emit(const Report &report, const std::filesystem::path &dir,
                                               std::initializer_list<EmitFormat> formats = {
                                                   EmitFormat::Csv, EmitFormat::JsonLines, EmitFormat::Pixmap}) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
    auto wants = [&](EmitFormat f) { return std::find(formats.begin(), formats.end(), f) != formats.end(); };
    std::vector<std::filesystem::path> written;
    auto put = [&](const std::string &name, const std::string &contents) {
        write_text_file(dir / name, contents);
        written.push_back(dir / name);
    };
    if (wants(EmitFormat::Csv)) put("results.csv", results_csv(report));
    if (wants(EmitFormat::JsonLines)) put("densities.jsonl", densities_jsonl(report));
    for (const OutputFile &f : report.files) {
        const bool is_counts = f.name.rfind("counts_", 0) == 0;
        if ((is_counts && wants(EmitFormat::Csv)) || (!is_counts && wants(EmitFormat::Pixmap))) put(f.name, f.contents);
    }
    return written;
}

}  // namespace vbmem

#endif  // VBMEM_EXPERIMENT_HPP
