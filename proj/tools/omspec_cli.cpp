// omspec: single-photon optomechanical spectra from the command line.

#include "omspec/runner.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

struct Overrides {
    std::string config_path;
    std::optional<std::string> output;
    std::optional<std::uint64_t> seed;
    std::optional<double> omega_m, g_m, kappa, gamma_m, m_bar, gamma_filter;
    std::optional<double> delta_min, delta_max, t_max;
    std::optional<int> m_max, initial_phonons;
    std::optional<std::size_t> delta_count, t_count, trajectories;
    std::optional<std::string> method;
    bool thermal{false};

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file (flat key/value)")->check(CLI::ExistingFile);
        cmd->add_option("--output", output, "output directory");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--omega-m", omega_m, "mechanical frequency");
        cmd->add_option("--g", g_m, "optomechanical coupling g_m");
        cmd->add_option("--kappa", kappa, "cavity decay rate");
        cmd->add_option("--gamma-m", gamma_m, "phonon decay rate");
        cmd->add_option("--m-bar", m_bar, "mean thermal phonon number");
        cmd->add_option("--gamma-filter", gamma_filter, "filter bandwidth");
        cmd->add_option("--m-max", m_max, "phonon truncation");
        cmd->add_option("--initial-phonons", initial_phonons, "initial phonon number");
        cmd->add_flag("--thermal", thermal, "average over the thermal initial phonon distribution");
        cmd->add_option("--delta-min", delta_min, "lowest detuning");
        cmd->add_option("--delta-max", delta_max, "highest detuning");
        cmd->add_option("--delta-count", delta_count, "number of detuning samples");
        cmd->add_option("--t-max", t_max, "time horizon");
        cmd->add_option("--t-count", t_count, "number of time samples");
        cmd->add_option("--method", method, "closed-form | numeric | filter | mc");
        cmd->add_option("--trajectories", trajectories, "number of Monte Carlo trajectories");
    }

    omspec::RunConfig resolve() const {
        omspec::RunConfig c = config_path.empty() ? omspec::RunConfig{} : omspec::load_config(config_path);
        auto set = [](auto& field, const auto& value) {
            if (value) field = *value;
        };
        set(c.output, output);
        set(c.seed, seed);
        set(c.system.omega_m, omega_m);
        set(c.system.g_m, g_m);
        set(c.system.kappa, kappa);
        set(c.bath.gamma_m, gamma_m);
        set(c.bath.m_bar, m_bar);
        set(c.gamma_filter, gamma_filter);
        set(c.m_max, m_max);
        set(c.initial_phonons, initial_phonons);
        set(c.delta_min, delta_min);
        set(c.delta_max, delta_max);
        set(c.delta_count, delta_count);
        set(c.t_max, t_max);
        set(c.t_count, t_count);
        set(c.trajectories, trajectories);
        if (method) c.method = omspec::parse_method(*method);
        if (thermal) c.thermal = true;
        c.validate();
        return c;
    }
};

void report(const std::vector<std::filesystem::path>& files) {
    for (const auto& f : files) std::cout << f.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-photon spectra of an optomechanical cavity"};
    app.require_subcommand(1);

    Overrides spectrum, tdspectrum, dressed, trajectories;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "long-time filtered spectrum over a detuning grid");
    spectrum.attach(spectrum_cmd);
    auto* td_cmd = app.add_subcommand("tdspectrum", "time-dependent spectrum on a (t, delta) grid");
    tdspectrum.attach(td_cmd);
    auto* dressed_cmd = app.add_subcommand("dressed", "dressed states and transition frequencies");
    dressed.attach(dressed_cmd);
    auto* traj_cmd = app.add_subcommand("trajectories", "quantum-jump emission statistics");
    trajectories.attach(traj_cmd);

    std::string figure_name;
    std::string figure_output = "figures";
    std::optional<std::uint64_t> figure_seed;
    auto* figure_cmd = app.add_subcommand("figure", "data for one of fig2a, fig2b, fig4, fig5, fig6, fig7");
    figure_cmd->add_option("name", figure_name, "figure name")->required();
    figure_cmd->add_option("--output", figure_output, "output directory");
    figure_cmd->add_option("--seed", figure_seed, "unused; figures are deterministic");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*spectrum_cmd) report(omspec::run_scan(spectrum.resolve()));
        if (*td_cmd) report(omspec::run_tdspectrum(tdspectrum.resolve()));
        if (*dressed_cmd) report(omspec::run_dressed(dressed.resolve()));
        if (*traj_cmd) report(omspec::run_trajectories(trajectories.resolve()));
        if (*figure_cmd) report(omspec::run_figure(figure_name, figure_output));
    } catch (const omspec::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
