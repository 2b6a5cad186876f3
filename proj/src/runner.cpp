#include "omspec/runner.hpp"

#include "omspec/dressed.hpp"
#include "omspec/hilbert.hpp"
#include "omspec/nojump.hpp"
#include "omspec/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace omspec {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

SpectrumCurve closed_form_curve(const RunConfig& c, std::span<const double> deltas, Execution exec) {
    const auto values = scan(
        [&](double d) {
            const FilterParams f{d, c.gamma_filter};
            return c.m_max == 1 ? closed_form_thermal_1ph(c.system, c.bath, f)
                                : closed_form_thermal_2ph(c.system, c.bath, f);
        },
        deltas, exec);
    SpectrumCurve curve;
    curve.method = SpectrumMethod::closed_form;
    curve.params = c.system;
    curve.bath = c.bath;
    curve.gamma_filter = c.gamma_filter;
    for (std::size_t i = 0; i < deltas.size(); ++i) curve.samples.push_back({deltas[i], values[i]});
    return curve;
}

// Thermal average of the filter route, weighted like thermal_average_spectrum.
SpectrumCurve thermal_filter_curve(const RunConfig& c, std::span<const double> deltas, const LongTimeOptions& opt) {
    const ThermalWeights tw = thermal_weights(c.bath.m_bar, c.m_max);
    SpectrumCurve total;
    for (int m = 0; m <= c.m_max; ++m) {
        const double w = tw.weights[static_cast<std::size_t>(m)];
        if (w == 0.0) continue;
        SpectrumCurve branch = integrated_spectrum_long_time(c.system, c.bath, c.gamma_filter, c.m_max, m, deltas, opt);
        if (total.samples.empty()) {
            total = branch;
            for (auto& s : total.samples) s.value = 0.0;
        }
        total.t_horizon = std::max(total.t_horizon, branch.t_horizon);
        for (std::size_t i = 0; i < deltas.size(); ++i) total.samples[i].value += w * branch.samples[i].value;
    }
    return total;
}

std::string tag(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

std::string grid_csv(const std::vector<double>& times, const std::vector<double>& deltas,
                     const std::vector<std::vector<double>>& values) {
    std::string text = "t,delta,value\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            text += format_number(times[k]) + "," + format_number(deltas[i]) + "," + format_number(values[i][k]) + "\n";
        }
    }
    return text;
}

void prepare_output(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
}

}  // namespace

SpectrumCurve compute_spectrum(const RunConfig& config, Execution exec) {
    config.validate();
    const auto deltas = config.delta_grid();
    LongTimeOptions opt;
    opt.execution = exec;
    switch (config.method) {
        case SpectrumMethod::closed_form: return closed_form_curve(config, deltas, exec);
        case SpectrumMethod::numeric:
            if (config.thermal)
                return thermal_average_spectrum(config.system, config.bath, config.gamma_filter, deltas, config.m_max,
                                                1e-3, opt);
            return stationary_spectrum_numeric(config.system, config.bath, config.gamma_filter, config.m_max,
                                               config.initial_phonons, deltas, opt);
        case SpectrumMethod::filter:
            if (config.thermal) return thermal_filter_curve(config, deltas, opt);
            return integrated_spectrum_long_time(config.system, config.bath, config.gamma_filter, config.m_max,
                                                 config.initial_phonons, deltas, opt);
        case SpectrumMethod::mc:
            throw ValidationError("spectra are not estimated by Monte Carlo; use the trajectories subcommand");
    }
    throw ValidationError("unknown method");
}

std::vector<fs::path> run_scan(const RunConfig& config) {
    const SpectrumCurve curve = compute_spectrum(config);
    curve.check_invariants();
    const fs::path dir(config.output);
    prepare_output(dir);
    write_curve_csv(dir / "spectrum.csv", curve);
    write_json(dir / "spectrum.json", curve_sidecar(curve, config));
    return {dir / "spectrum.csv", dir / "spectrum.json"};
}

std::vector<fs::path> run_tdspectrum(const RunConfig& config) {
    config.validate();
    if (config.thermal) throw ValidationError("tdspectrum runs from a single initial phonon number");
    const auto deltas = config.delta_grid();
    const auto times = config.time_grid();
    const TimeDependentMap map = time_dependent_map(config.system, config.bath, config.gamma_filter, config.m_max,
                                                    config.initial_phonons, deltas, times);
    const fs::path dir(config.output);
    prepare_output(dir);
    write_text(dir / "tdspectrum.csv", grid_csv(map.times, map.deltas, map.rate));
    write_text(dir / "tdspectrum_integrated.csv", grid_csv(map.times, map.deltas, map.integrated));
    json side;
    side["config"] = to_json(config);
    side["method"] = "filter";
    side["files"] = {{"tdspectrum.csv", "counting rate N(t; delta, gamma_filter)"},
                     {"tdspectrum_integrated.csv", "integrated count N_S(t; delta, gamma_filter)"}};
    write_json(dir / "tdspectrum.json", side);
    return {dir / "tdspectrum.csv", dir / "tdspectrum_integrated.csv", dir / "tdspectrum.json"};
}

std::vector<fs::path> run_dressed(const RunConfig& config) {
    config.validate();
    const DressedDecomposition d = dressed_decomposition(config.system, config.m_max);
    auto transitions = transition_frequencies(d);
    const auto weights = transition_weights(d, config.initial_phonons);

    std::vector<std::size_t> order(transitions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return transitions[a].delta < transitions[b].delta; });

    std::string csv = "delta,value\n";
    json jt = json::array();
    for (std::size_t i : order) {
        const auto& t = transitions[i];
        csv += format_number(t.delta) + "," + format_number(weights[i]) + "\n";
        jt.push_back({{"delta", t.delta},
                      {"initial", to_string(t.initial)},
                      {"final", to_string(t.final)},
                      {"name", t.name},
                      {"weight", weights[i]}});
    }
    json side;
    side["config"] = to_json(config);
    json levels = json::array();
    for (std::size_t k = 0; k < d.eigenvalues.size(); ++k)
        levels.push_back({{"energy", d.eigenvalues[k]}, {"label", to_string(d.labels[k])}});
    side["levels"] = levels;
    side["transitions"] = jt;
    side["compact_positions"] = json::array();
    for (int m = 0; m <= config.m_max; ++m) side["compact_positions"].push_back(compact_peak_position(config.system, m));
    if (config.m_max == 1) {
        side["pole_positions"] = resonance_positions_poles(config.system);
        const auto mix = one_phonon_mixing(config.system);
        side["mixing"] = {{"N1", mix.n1}, {"N2", mix.n2}};
    }

    const fs::path dir(config.output);
    prepare_output(dir);
    write_text(dir / "dressed.csv", csv);
    write_json(dir / "dressed.json", side);
    return {dir / "dressed.csv", dir / "dressed.json"};
}

std::vector<fs::path> run_trajectories(const RunConfig& config) {
    config.validate();
    EnsembleSpec spec;
    spec.params = config.system;
    spec.bath = config.bath;
    spec.m_max = config.m_max;
    spec.initial_phonons = config.initial_phonons;
    spec.t_max = config.t_max;
    spec.count = config.trajectories;
    spec.master_seed = config.seed;
    const auto records = run_ensemble_parallel(spec);
    const std::size_t bins = config.t_count - 1;
    const EmissionStatistics stats = emission_statistics(records, config.t_max, bins);

    std::string times_csv = "t,value\n";
    for (std::size_t b = 0; b < bins; ++b) {
        const double centre = 0.5 * (stats.bin_edges[b] + stats.bin_edges[b + 1]);
        times_csv += format_number(centre) + "," + format_number(stats.density[b]) + "\n";
    }
    std::string phonon_csv = "m,value\n";
    for (std::size_t m = 0; m < stats.phonon_probability.size(); ++m)
        phonon_csv += std::to_string(m) + "," + format_number(stats.phonon_probability[m]) + "\n";

    json side;
    side["config"] = to_json(config);
    side["method"] = "mc";
    side["trajectories"] = stats.trajectories;
    side["emitted"] = stats.emitted;
    side["phonon_probability"] = stats.phonon_probability;
    side["phonon_error"] = stats.phonon_error;
    if (config.bath.gamma_m == 0.0 && stats.emitted > 0) {
        // Emission-time CDF of the deterministic no-jump evolution: 1 - ||psi(t)||^2.
        const OperatorMatrix h = build_nonhermitian(config.system, config.bath, config.m_max);
        const TruncatedState initial = TruncatedState::fock(config.m_max, {1, config.initial_phonons});
        const double d = kolmogorov_smirnov(stats.emission_times, [&](double t) {
            return 1.0 - (evolution_operator(h.entries, t) * initial.amplitudes()).squaredNorm();
        });
        side["ks_statistic"] = d;
        side["ks_critical_1pct"] = ks_critical_1pct(stats.emitted);
    }

    const fs::path dir(config.output);
    prepare_output(dir);
    write_text(dir / "emission_times.csv", times_csv);
    write_text(dir / "phonons.csv", phonon_csv);
    write_json(dir / "trajectories.json", side);
    return {dir / "emission_times.csv", dir / "phonons.csv", dir / "trajectories.json"};
}

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig2a", "fig2b", "fig4", "fig5", "fig6", "fig7"};
    return names;
}

std::vector<fs::path> run_figure(const std::string& name, const fs::path& output_dir) {
    if (std::find(figure_names().begin(), figure_names().end(), name) == figure_names().end()) {
        std::string list;
        for (const auto& n : figure_names()) list += (list.empty() ? "" : ", ") + n;
        throw ValidationError("unknown figure '" + name + "' (valid: " + list + ")");
    }
    prepare_output(output_dir);
    std::vector<fs::path> files;
    json manifest;
    manifest["figure"] = name;
    manifest["curves"] = json::array();

    auto emit = [&](const std::string& file, const SpectrumCurve& curve, const RunConfig& config, const std::string& note) {
        const fs::path path = output_dir / file;
        write_curve_csv(path, curve);
        files.push_back(path);
        json entry = curve_sidecar(curve, config);
        entry["file"] = file;
        entry["note"] = note;
        manifest["curves"].push_back(entry);
    };

    RunConfig base;  // kappa 0.25, g 1.25, Gamma 0.1, 401 points over [-3, 3]
    if (name == "fig2a") {
        // Bad-cavity kappa values {2, 1, 0.5} are choices of this tool.
        for (double kappa : {2.0, 1.0, 0.5, 0.1}) {
            RunConfig c = base;
            c.system.kappa = kappa;
            emit("fig2a_kappa_" + tag(kappa) + ".csv", compute_spectrum(c), c,
                 kappa == 0.1 ? "good cavity, resolved sidebands" : "bad-cavity value chosen by this tool");
        }
    } else if (name == "fig2b") {
        // g values besides 1.25 are choices of this tool; weak coupling uses g < kappa.
        for (double g : {0.1, 0.5, 1.0, 1.25}) {
            RunConfig c = base;
            c.system.g_m = g;
            emit("fig2b_g_" + tag(g) + ".csv", compute_spectrum(c), c,
                 g < c.system.kappa ? "weak coupling" : "strong coupling");
        }
    } else if (name == "fig4") {
        for (int m0 : {0, 1}) {
            RunConfig c = base;
            c.initial_phonons = m0;
            c.method = SpectrumMethod::numeric;
            const auto deltas = c.delta_grid();
            SpectrumCurve curve;
            curve.method = SpectrumMethod::numeric;
            curve.params = c.system;
            curve.gamma_filter = c.gamma_filter;
            const auto values = scan_parallel(
                [&](double d) { return stationary_spectrum_laplace(c.system, c.bath, {d, c.gamma_filter}, 1, m0); },
                deltas);
            for (std::size_t i = 0; i < deltas.size(); ++i) curve.samples.push_back({deltas[i], values[i]});
            emit("fig4_initial_" + std::to_string(m0) + ".csv", curve, c, "initial state |1," + std::to_string(m0) + ">");
        }
    } else if (name == "fig5") {
        RunConfig c = base;
        c.delta_count = 201;
        c.t_max = 30.0;
        c.t_count = 301;
        const auto deltas = c.delta_grid();
        const auto times = c.time_grid();
        const TimeDependentMap map = time_dependent_map(c.system, c.bath, c.gamma_filter, 1, 0, deltas, times);
        write_text(output_dir / "fig5_rate.csv", grid_csv(map.times, map.deltas, map.rate));
        write_text(output_dir / "fig5_integrated.csv", grid_csv(map.times, map.deltas, map.integrated));
        files.push_back(output_dir / "fig5_rate.csv");
        files.push_back(output_dir / "fig5_integrated.csv");
        manifest["config"] = to_json(c);
        manifest["grids"] = {{"fig5_rate.csv", "N(t; delta)"}, {"fig5_integrated.csv", "N_S(t; delta)"}};
    } else if (name == "fig6") {
        const std::pair<BathParams, std::string> cases[] = {
            {{0.0, 0.0}, "lossless"}, {{0.1, 0.0}, "decay"}, {{0.1, 0.8}, "thermal"}};
        for (const auto& [bath, label] : cases) {
            RunConfig c = base;
            c.bath = bath;
            emit("fig6_" + label + ".csv", compute_spectrum(c), c, "closed form with 1/(1+M) weight");
        }
        RunConfig c = base;
        c.bath = {0.1, 0.8};
        c.method = SpectrumMethod::numeric;
        c.thermal = true;
        c.m_max = 8;  // thermal weights beyond 8 phonons sum to (M/(1+M))^9 < 1e-3
        const auto deltas = c.delta_grid();
        emit("fig6_thermal_average.csv", thermal_average_laplace(c.system, c.bath, c.gamma_filter, deltas, c.m_max), c,
             "full thermal average over initial phonon numbers");
    } else if (name == "fig7") {
        for (const auto& [bath, label] : {std::pair{BathParams{0.0, 0.0}, std::string("lossless")},
                                          std::pair{BathParams{0.1, 0.8}, std::string("lossy")}}) {
            RunConfig c = base;
            c.m_max = 2;
            c.bath = bath;
            c.delta_min = -5.0;
            c.delta_max = 5.0;
            c.delta_count = 667;
            emit("fig7_" + label + ".csv", compute_spectrum(c), c, "two-phonon closed form");
        }
    }

    write_json(output_dir / "figure.json", manifest);
    files.push_back(output_dir / "figure.json");
    return files;
}

}  // namespace omspec
