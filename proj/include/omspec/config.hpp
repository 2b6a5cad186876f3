// Run configuration and file formats: flat JSON configs, `delta,value` CSVs and
// JSON sidecars.

#pragma once

#include "omspec/core.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace omspec {

struct RunConfig {
    SystemParams system{1.0, 1.25, 0.25};
    BathParams bath;
    double gamma_filter{0.1};
    int m_max{1};
    int initial_phonons{0};
    bool thermal{false};  // average over the thermal initial phonon distribution
    double delta_min{-3.0};
    double delta_max{3.0};
    std::size_t delta_count{401};
    double t_max{30.0};
    std::size_t t_count{301};
    SpectrumMethod method{SpectrumMethod::closed_form};
    std::string output{"out"};
    std::uint64_t seed{0};
    std::size_t trajectories{10000};

    void validate() const;
    std::vector<double> delta_grid() const;
    std::vector<double> time_grid() const;

    friend bool operator==(const RunConfig&, const RunConfig&);
};

nlohmann::json to_json(const RunConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

// "%.14e": 15 significant digits.
std::string format_number(double x);

void write_text(const std::filesystem::path& path, const std::string& content);
void write_curve_csv(const std::filesystem::path& path, const SpectrumCurve& curve);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

nlohmann::json curve_sidecar(const SpectrumCurve& curve, const RunConfig& config);

// Reads back a `delta,value` file.
std::vector<SpectrumSample> read_curve_csv(const std::filesystem::path& path);

}  // namespace omspec
