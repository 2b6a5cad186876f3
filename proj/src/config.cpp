#include "omspec/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace omspec {

using nlohmann::json;

void RunConfig::validate() const {
    system.validate();
    bath.validate();
    FilterParams{0.0, gamma_filter}.validate();
    if (m_max < 1) throw ValidationError("m_max must be at least 1");
    if (initial_phonons < 0 || initial_phonons > m_max)
        throw ValidationError("initial_phonons must lie in [0, m_max]");
    if (delta_count < 2) throw ValidationError("delta_count must be at least 2");
    if (t_count < 2) throw ValidationError("t_count must be at least 2");
    if (!(delta_max > delta_min)) throw ValidationError("delta_max must exceed delta_min");
    if (!(t_max > 0.0)) throw ValidationError("t_max must be positive");
    if (method == SpectrumMethod::closed_form) {
        if (m_max != 1 && m_max != 2) throw ValidationError("closed-form spectra exist only for m_max 1 or 2");
        if (initial_phonons != 0 || thermal)
            throw ValidationError("closed-form spectra assume an initial phonon vacuum");
    }
    if (trajectories == 0) throw ValidationError("trajectories must be positive");
}

std::vector<double> RunConfig::delta_grid() const { return linspace(delta_min, delta_max, delta_count); }

std::vector<double> RunConfig::time_grid() const {
    auto grid = linspace(0.0, t_max, t_count);
    grid.front() = 0.0;
    return grid;
}

bool operator==(const RunConfig& a, const RunConfig& b) { return to_json(a) == to_json(b); }

json to_json(const RunConfig& c) {
    return json{{"omega_m", c.system.omega_m},
                {"g_m", c.system.g_m},
                {"kappa", c.system.kappa},
                {"gamma_m", c.bath.gamma_m},
                {"m_bar", c.bath.m_bar},
                {"gamma_filter", c.gamma_filter},
                {"m_max", c.m_max},
                {"initial_phonons", c.initial_phonons},
                {"thermal", c.thermal},
                {"delta_min", c.delta_min},
                {"delta_max", c.delta_max},
                {"delta_count", c.delta_count},
                {"t_max", c.t_max},
                {"t_count", c.t_count},
                {"method", to_string(c.method)},
                {"output", c.output},
                {"seed", c.seed},
                {"trajectories", c.trajectories}};
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    static const std::set<std::string> known{"omega_m", "g_m", "kappa", "gamma_m", "m_bar", "gamma_filter",
                                             "m_max", "initial_phonons", "thermal", "delta_min", "delta_max",
                                             "delta_count", "t_max", "t_count", "method", "output", "seed",
                                             "trajectories"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw ValidationError("unknown config key '" + key + "'");
    }
    RunConfig c;
    try {
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
        };
        get("omega_m", c.system.omega_m);
        get("g_m", c.system.g_m);
        get("kappa", c.system.kappa);
        get("gamma_m", c.bath.gamma_m);
        get("m_bar", c.bath.m_bar);
        get("gamma_filter", c.gamma_filter);
        get("m_max", c.m_max);
        get("initial_phonons", c.initial_phonons);
        get("thermal", c.thermal);
        get("delta_min", c.delta_min);
        get("delta_max", c.delta_max);
        get("delta_count", c.delta_count);
        get("t_max", c.t_max);
        get("t_count", c.t_count);
        get("output", c.output);
        get("seed", c.seed);
        get("trajectories", c.trajectories);
        if (j.contains("method")) c.method = parse_method(j.at("method").get<std::string>());
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed config: ") + e.what());
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("cannot parse config file " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.14e", x);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed while writing " + path.string());
}

void write_curve_csv(const std::filesystem::path& path, const SpectrumCurve& curve) {
    std::string text = "delta,value\n";
    for (const auto& s : curve.samples) text += format_number(s.delta) + "," + format_number(s.value) + "\n";
    write_text(path, text);
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json curve_sidecar(const SpectrumCurve& curve, const RunConfig& config) {
    json j;
    j["config"] = to_json(config);
    j["method"] = to_string(curve.method);
    j["t_horizon"] = std::isfinite(curve.t_horizon) ? json(curve.t_horizon) : json("inf");
    j["points"] = curve.samples.size();
    j["warnings"] = curve.warnings;
    return j;
}

std::vector<SpectrumSample> read_curve_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    if (line != "delta,value") throw ValidationError("unexpected CSV header in " + path.string());
    std::vector<SpectrumSample> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ValidationError("malformed CSV row: " + line);
        out.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return out;
}

}  // namespace omspec
