#include "omspec/trajectory.hpp"

#include "omspec/hilbert.hpp"
#include "omspec/nojump.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

namespace omspec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform on (0, 1].
double uniform(std::mt19937_64& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

struct JumpOperators {
    ComplexMatrix ops[3];
};

JumpOperators jump_operators(const SystemParams& p, const BathParams& bath, int m_max) {
    const auto [a, b] = build_annihilators(m_max);
    JumpOperators j;
    j.ops[0] = std::sqrt(p.kappa) * a.entries;
    j.ops[1] = std::sqrt(bath.gamma_m * (bath.m_bar + 1.0)) * b.entries;
    j.ops[2] = std::sqrt(bath.gamma_m * bath.m_bar) * b.entries.adjoint();
    return j;
}

double photon_fraction(const ComplexVector& psi, int m_max) {
    const double total = psi.squaredNorm();
    return total > 0.0 ? psi.head(m_max + 1).squaredNorm() / total : 0.0;
}

}  // namespace

std::string to_string(JumpChannel channel) {
    switch (channel) {
        case JumpChannel::photon_out: return "photon-out";
        case JumpChannel::phonon_decay: return "phonon-decay";
        case JumpChannel::phonon_heat: return "phonon-heat";
    }
    return "unknown";
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

TrajectoryRecord run_trajectory(const SystemParams& p, const BathParams& bath, int m_max,
                                const TruncatedState& initial, double t_max, std::uint64_t seed,
                                const TrajectoryOptions& options) {
    p.validate();
    bath.validate();
    if (!(t_max > 0.0)) throw ValidationError("t_max must be positive");
    if (!(options.dt > 0.0)) throw ValidationError("trajectory step must be positive");
    if (initial.m_max() != m_max) throw ValidationError("state and truncation differ");
    if (std::abs(initial.squared_norm() - 1.0) > 1e-10) throw ValidationError("initial state must be normalized");
    for (std::size_t i = 0; i < options.checkpoints.size(); ++i) {
        const double c = options.checkpoints[i];
        if (c < 0.0 || c > t_max || (i > 0 && c < options.checkpoints[i - 1]))
            throw ValidationError("checkpoints must be sorted and inside [0, t_max]");
    }

    const OperatorMatrix h = build_nonhermitian(p, bath, m_max);
    const JumpOperators jumps = jump_operators(p, bath, m_max);
    const ComplexMatrix step = evolution_operator(h.entries, options.dt);
    const auto block = static_cast<Eigen::Index>(m_max + 1);

    std::mt19937_64 rng(seed);
    TrajectoryRecord record;
    record.seed = seed;

    ComplexVector psi = initial.amplitudes();
    double threshold = uniform(rng);
    double t = 0.0;
    std::size_t next_checkpoint = 0;
    auto record_checkpoints = [&](double now) {
        while (next_checkpoint < options.checkpoints.size() && options.checkpoints[next_checkpoint] <= now) {
            record.photon_population.push_back(photon_fraction(psi, m_max));
            ++next_checkpoint;
        }
    };
    record_checkpoints(0.0);

    while (t < t_max) {
        // With gamma_m = 0 the photon-empty sector has no decay channel left.
        if (bath.gamma_m == 0.0 && record.emission_time) break;

        double t_next = std::min(t + options.dt, t_max);
        if (next_checkpoint < options.checkpoints.size())
            t_next = std::min(t_next, options.checkpoints[next_checkpoint]);
        const double tau = t_next - t;
        const bool full_step = std::abs(tau - options.dt) <= 1e-12 * options.dt;
        const ComplexVector trial = (full_step ? step : evolution_operator(h.entries, tau)) * psi;

        if (trial.squaredNorm() > threshold) {
            psi = trial;
            t = t_next;
            record_checkpoints(t);
            continue;
        }

        // Locate the jump time where the no-jump norm crosses the threshold.
        double lo = 0.0, hi = tau;
        for (int it = 0; it < 60 && hi - lo > 1e-13 * std::max(1.0, t); ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((evolution_operator(h.entries, mid) * psi).squaredNorm() > threshold)
                lo = mid;
            else
                hi = mid;
        }
        psi = evolution_operator(h.entries, hi) * psi;
        t += hi;
        record_checkpoints(t - 1e-15 * std::max(1.0, t));

        double weights[3];
        double total = 0.0;
        for (int k = 0; k < 3; ++k) {
            weights[k] = (jumps.ops[k] * psi).squaredNorm();
            total += weights[k];
        }
        if (!(total > 0.0)) throw NumericalError("norm decayed without an available jump channel");
        double pick = uniform(rng) * total;
        int channel = 0;
        while (channel < 2 && pick > weights[channel]) pick -= weights[channel++];
        while (weights[channel] == 0.0) --channel;

        psi = jumps.ops[channel] * psi;
        psi /= psi.norm();
        record.events.push_back({t, static_cast<JumpChannel>(channel)});

        if (channel == 0) {
            record.emission_time = t;
            // Sample the mirror's phonon number and collapse onto it.
            const ComplexVector mirror = psi.tail(block);
            double u = uniform(rng);
            int m = 0;
            while (m < m_max && u > std::norm(mirror(m))) u -= std::norm(mirror(m++));
            while (std::norm(mirror(m)) == 0.0 && m > 0) --m;
            record.phonons_at_emission = m;
            psi.setZero();
            psi(block + m) = 1.0;
        }
        threshold = uniform(rng);
        record_checkpoints(t);
    }

    while (next_checkpoint < options.checkpoints.size()) {
        record.photon_population.push_back(photon_fraction(psi, m_max));
        ++next_checkpoint;
    }
    Eigen::Index dominant = 0;
    psi.cwiseAbs().maxCoeff(&dominant);
    record.final_state = basis_label(m_max, static_cast<std::size_t>(dominant));
    return record;
}

std::vector<TrajectoryRecord> run_ensemble_serial(const EnsembleSpec& spec) {
    const TruncatedState initial = TruncatedState::fock(spec.m_max, {1, spec.initial_phonons});
    std::vector<TrajectoryRecord> out;
    out.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        out.push_back(run_trajectory(spec.params, spec.bath, spec.m_max, initial, spec.t_max,
                                     trajectory_seed(spec.master_seed, i), spec.options));
    }
    return out;
}

std::vector<TrajectoryRecord> run_ensemble_parallel(const EnsembleSpec& spec) {
    const TruncatedState initial = TruncatedState::fock(spec.m_max, {1, spec.initial_phonons});
    std::vector<TrajectoryRecord> out(spec.count);
    const auto n = static_cast<long>(spec.count);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] =
                run_trajectory(spec.params, spec.bath, spec.m_max, initial, spec.t_max,
                               trajectory_seed(spec.master_seed, static_cast<std::uint64_t>(i)), spec.options);
        } catch (...) {
#pragma omp critical(omspec_ensemble_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::vector<TrajectoryRecord> run_ensemble(const EnsembleSpec& spec, Execution exec) {
    return exec == Execution::parallel ? run_ensemble_parallel(spec) : run_ensemble_serial(spec);
}

EmissionStatistics emission_statistics(std::span<const TrajectoryRecord> records, double t_max, std::size_t bins) {
    if (records.empty()) throw ValidationError("emission statistics need at least one trajectory");
    if (!(t_max > 0.0) || bins == 0) throw ValidationError("histogram range and bin count must be positive");

    EmissionStatistics stats;
    stats.trajectories = records.size();
    const double width = t_max / static_cast<double>(bins);
    for (std::size_t b = 0; b <= bins; ++b) stats.bin_edges.push_back(width * static_cast<double>(b));
    std::vector<std::size_t> counts(bins, 0);
    std::vector<std::size_t> phonons;

    for (const auto& r : records) {
        if (!r.emission_time) continue;
        ++stats.emitted;
        stats.emission_times.push_back(*r.emission_time);
        const auto bin = std::min(bins - 1, static_cast<std::size_t>(*r.emission_time / width));
        ++counts[bin];
        const auto m = static_cast<std::size_t>(r.phonons_at_emission.value_or(0));
        if (phonons.size() <= m) phonons.resize(m + 1, 0);
        ++phonons[m];
    }
    std::sort(stats.emission_times.begin(), stats.emission_times.end());

    const auto n = static_cast<double>(records.size());
    for (std::size_t b = 0; b < bins; ++b) {
        const double prob = static_cast<double>(counts[b]) / n;
        stats.density.push_back(prob / width);
        stats.density_error.push_back(std::sqrt(prob * (1.0 - prob) / n) / width);
    }
    const auto emitted = static_cast<double>(stats.emitted);
    for (std::size_t c : phonons) {
        const double prob = static_cast<double>(c) / emitted;
        stats.phonon_probability.push_back(prob);
        stats.phonon_error.push_back(std::sqrt(prob * (1.0 - prob) / emitted));
    }
    return stats;
}

double kolmogorov_smirnov(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw ValidationError("KS statistic needs samples");
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

std::vector<double> master_equation_photon_population(const SystemParams& p, const BathParams& bath, int m_max,
                                                      const TruncatedState& initial,
                                                      std::span<const double> times) {
    const OperatorMatrix h = build_hamiltonian(p, m_max);
    const JumpOperators jumps = jump_operators(p, bath, m_max);
    const auto d = static_cast<Eigen::Index>(basis_dim(m_max));
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);

    // Column-major vectorization: vec(A X B) = (B^T kron A) vec(X).
    ComplexMatrix liouvillian = Complex(0.0, -1.0) * (Eigen::kroneckerProduct(id, h.entries).eval()
                                                      - Eigen::kroneckerProduct(h.entries.transpose(), id).eval());
    for (const auto& l : jumps.ops) {
        const ComplexMatrix ldl = l.adjoint() * l;
        liouvillian += Eigen::kroneckerProduct(l.conjugate(), l).eval();
        liouvillian -= 0.5 * Eigen::kroneckerProduct(id, ldl).eval();
        liouvillian -= 0.5 * Eigen::kroneckerProduct(ldl.transpose(), id).eval();
    }

    const ComplexMatrix rho0 = initial.amplitudes() * initial.amplitudes().adjoint();
    const ComplexVector vec0 = Eigen::Map<const ComplexVector>(rho0.data(), d * d);
    const auto [a, b] = build_annihilators(m_max);
    const ComplexMatrix number = a.entries.adjoint() * a.entries;

    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        const ComplexMatrix prop = (liouvillian * t).exp();
        const ComplexVector vec = prop * vec0;
        const ComplexMatrix rho = Eigen::Map<const ComplexMatrix>(vec.data(), d, d);
        out.push_back((number * rho).trace().real());
    }
    return out;
}

}  // namespace omspec
