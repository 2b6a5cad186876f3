// Experiment runners behind the command-line subcommands.

#pragma once

#include "omspec/config.hpp"
#include "omspec/scan.hpp"
#include "omspec/spectra.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace omspec {

// Long-time spectrum for the configured method; does not touch the filesystem.
SpectrumCurve compute_spectrum(const RunConfig& config, Execution exec = Execution::parallel);

// Each runner writes its files under config.output and returns their paths.
std::vector<std::filesystem::path> run_scan(const RunConfig& config);
std::vector<std::filesystem::path> run_tdspectrum(const RunConfig& config);
std::vector<std::filesystem::path> run_dressed(const RunConfig& config);
std::vector<std::filesystem::path> run_trajectories(const RunConfig& config);

const std::vector<std::string>& figure_names();
// Every curve of the named figure as its own CSV, plus figure.json.
std::vector<std::filesystem::path> run_figure(const std::string& name, const std::filesystem::path& output_dir);

}  // namespace omspec
