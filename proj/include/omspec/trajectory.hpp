// Quantum-jump unraveling with three channels: photon leakage sqrt(kappa) a,
// phonon decay sqrt(gamma (M+1)) b and phonon heating sqrt(gamma M) b^dag.
// Used to check population dynamics and emission statistics, never to
// estimate spectra.

#pragma once

#include "omspec/core.hpp"
#include "omspec/scan.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace omspec {

enum class JumpChannel { photon_out, phonon_decay, phonon_heat };

std::string to_string(JumpChannel channel);

struct JumpEvent {
    double time;
    JumpChannel channel;
};

struct TrajectoryRecord {
    std::uint64_t seed{0};
    std::vector<JumpEvent> events;
    BasisLabel final_state;
    std::optional<double> emission_time;
    // Phonon number measured in the mirror state left behind by the photon.
    std::optional<int> phonons_at_emission;
    // <a^dag a> of the conditional state at each requested checkpoint.
    std::vector<double> photon_population;
};

struct TrajectoryOptions {
    double dt{0.05};                 // propagation step between jump searches
    std::vector<double> checkpoints;  // sorted, within [0, t_max]
};

// Seed of trajectory `index` in an ensemble: splitmix64 mixing of both inputs.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

TrajectoryRecord run_trajectory(const SystemParams& p, const BathParams& bath, int m_max,
                                const TruncatedState& initial, double t_max, std::uint64_t seed,
                                const TrajectoryOptions& options = {});

struct EnsembleSpec {
    SystemParams params;
    BathParams bath;
    int m_max{1};
    int initial_phonons{0};
    double t_max{100.0};
    std::size_t count{1000};
    std::uint64_t master_seed{0};
    TrajectoryOptions options;
};

std::vector<TrajectoryRecord> run_ensemble_serial(const EnsembleSpec& spec);
std::vector<TrajectoryRecord> run_ensemble_parallel(const EnsembleSpec& spec);
std::vector<TrajectoryRecord> run_ensemble(const EnsembleSpec& spec, Execution exec);

struct EmissionStatistics {
    std::size_t trajectories{0};
    std::size_t emitted{0};
    std::vector<double> bin_edges;
    std::vector<double> density;        // emission-time probability density
    std::vector<double> density_error;  // binomial standard error
    std::vector<double> phonon_probability;
    std::vector<double> phonon_error;
    std::vector<double> emission_times;  // sorted
};

EmissionStatistics emission_statistics(std::span<const TrajectoryRecord> records, double t_max,
                                       std::size_t bins = 100);

// Two-sided Kolmogorov-Smirnov statistic of samples against a continuous CDF.
double kolmogorov_smirnov(std::vector<double> samples, const std::function<double(double)>& cdf);

// Asymptotic 1% critical value 1.6276 / sqrt(n).
double ks_critical_1pct(std::size_t n);

// Deterministic reference: photon population Tr(a^dag a rho(t)) of the Lindblad
// master equation with the same three channels, from rho(0) = |initial><initial|.
std::vector<double> master_equation_photon_population(const SystemParams& p, const BathParams& bath, int m_max,
                                                      const TruncatedState& initial,
                                                      std::span<const double> times);

}  // namespace omspec
