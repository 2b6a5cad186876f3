#include "omspec/nojump.hpp"
#include "omspec/trajectory.hpp"

#include <doctest.h>

#include <cmath>

using namespace omspec;

namespace {

const SystemParams kStandard{1.0, 1.25, 0.25};

}  // namespace

TEST_CASE("decoupled emission times are exponential with rate kappa") {
    EnsembleSpec spec;
    spec.params = {1.0, 0.0, 0.25};
    spec.t_max = 80.0;
    spec.count = 3000;
    spec.master_seed = 11;
    const auto records = run_ensemble(spec, Execution::serial);
    const auto stats = emission_statistics(records, spec.t_max, 40);
    // P(no emission before 80) = e^{-20}.
    CHECK(stats.emitted == spec.count);
    const double d = kolmogorov_smirnov(stats.emission_times, [](double t) { return 1.0 - std::exp(-0.25 * t); });
    CHECK(d < ks_critical_1pct(stats.emitted));
    // The same samples are far from a wrong rate.
    const double wrong =
        kolmogorov_smirnov(stats.emission_times, [](double t) { return 1.0 - std::exp(-0.3 * t); });
    CHECK(wrong > ks_critical_1pct(stats.emitted));
}

TEST_CASE("trajectories are reproducible from their seed") {
    const auto start = TruncatedState::fock(2, {1, 0});
    const BathParams bath{0.2, 0.5};
    const auto a = run_trajectory(kStandard, bath, 2, start, 30.0, 42);
    const auto b = run_trajectory(kStandard, bath, 2, start, 30.0, 42);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].time == b.events[i].time);
        CHECK(a.events[i].channel == b.events[i].channel);
    }
    CHECK(trajectory_seed(1, 0) != trajectory_seed(1, 1));
    CHECK(trajectory_seed(1, 0) != trajectory_seed(2, 0));
    const auto c = run_trajectory(kStandard, bath, 2, start, 30.0, 43);
    CHECK((c.events.size() != a.events.size() || c.events[0].time != a.events[0].time));
}

TEST_CASE("ensemble photon population follows the master equation") {
    EnsembleSpec spec;
    spec.params = kStandard;
    spec.bath = {0.1, 0.8};
    spec.m_max = 3;
    spec.t_max = 20.0;
    spec.count = 4000;
    spec.master_seed = 2024;
    for (int k = 1; k <= 10; ++k) spec.options.checkpoints.push_back(2.0 * k);
    const auto records = run_ensemble(spec, Execution::parallel);
    const auto reference = master_equation_photon_population(spec.params, spec.bath, spec.m_max,
                                                             TruncatedState::fock(3, {1, 0}),
                                                             spec.options.checkpoints);
    const auto n = static_cast<double>(spec.count);
    for (std::size_t k = 0; k < reference.size(); ++k) {
        double mean = 0.0;
        for (const auto& r : records) mean += r.photon_population[k];
        mean /= n;
        const double se = std::sqrt(reference[k] * (1.0 - reference[k]) / n);
        CAPTURE(k);
        CHECK(std::abs(mean - reference[k]) < 3.0 * se);
    }
}

TEST_CASE("lossless master equation gives exp(-kappa t)") {
    const std::vector<double> times{0.0, 1.0, 4.0, 9.0};
    const auto pop = master_equation_photon_population(kStandard, {}, 2, TruncatedState::fock(2, {1, 0}), times);
    for (std::size_t k = 0; k < times.size(); ++k) CHECK(pop[k] == doctest::Approx(std::exp(-0.25 * times[k])));
}

TEST_CASE("phonon number left at emission") {
    SUBCASE("weak coupling leaves the mirror in its ground state") {
        EnsembleSpec spec;
        spec.params = {1.0, 0.01, 0.25};
        spec.t_max = 100.0;
        spec.count = 2000;
        const auto stats = emission_statistics(run_ensemble(spec, Execution::serial), spec.t_max);
        CHECK(stats.phonon_probability[0] > 0.999);
    }
    SUBCASE("single-phonon fraction equals the emitted flux from |1,1>") {
        EnsembleSpec spec;
        spec.params = kStandard;
        spec.t_max = 100.0;
        spec.count = 4000;
        spec.master_seed = 5;
        const auto stats = emission_statistics(run_ensemble(spec, Execution::parallel), spec.t_max);
        REQUIRE(stats.phonon_probability.size() == 2);

        const auto grid = uniform_time_grid(spec.t_max, 20001);
        const auto traj = propagate(build_nonhermitian(kStandard, {}, 1), TruncatedState::fock(1, {1, 0}), grid);
        double flux = 0.0;
        for (std::size_t k = 1; k < grid.size(); ++k) {
            const double a = std::norm(traj.photon_amplitude(k - 1, 1));
            const double b = std::norm(traj.photon_amplitude(k, 1));
            flux += 0.5 * (a + b) * (grid[k] - grid[k - 1]) * 0.25;
        }
        const double se = std::sqrt(flux * (1.0 - flux) / static_cast<double>(stats.emitted));
        CHECK(std::abs(stats.phonon_probability[1] - flux) < 3.0 * se);
    }
}

TEST_CASE("statistics and KS helpers") {
    std::vector<TrajectoryRecord> none;
    CHECK_THROWS_AS(emission_statistics(none, 10.0), ValidationError);
    CHECK_THROWS_AS(kolmogorov_smirnov({}, [](double x) { return x; }), ValidationError);
    CHECK(kolmogorov_smirnov({0.5}, [](double x) { return x; }) == doctest::Approx(0.5));
    CHECK(kolmogorov_smirnov({0.125, 0.375, 0.625, 0.875}, [](double x) { return x; }) ==
          doctest::Approx(0.125));
    CHECK(ks_critical_1pct(10000) == doctest::Approx(0.016276));

    TrajectoryRecord r;
    r.emission_time = 2.5;
    r.phonons_at_emission = 1;
    std::vector<TrajectoryRecord> one{r, TrajectoryRecord{}};
    const auto s = emission_statistics(one, 10.0, 4);
    CHECK(s.emitted == 1);
    CHECK(s.density[1] == doctest::Approx(0.5 / 2.5));
    CHECK(s.phonon_probability == std::vector<double>{0.0, 1.0});
}

TEST_CASE("trajectory argument validation") {
    const auto start = TruncatedState::fock(1, {1, 0});
    CHECK_THROWS_AS(run_trajectory(kStandard, {}, 1, start, -1.0, 0), ValidationError);
    CHECK_THROWS_AS(run_trajectory(kStandard, {}, 2, start, 1.0, 0), ValidationError);
    TrajectoryOptions bad;
    bad.checkpoints = {2.0, 1.0};
    CHECK_THROWS_AS(run_trajectory(kStandard, {}, 1, start, 5.0, 0, bad), ValidationError);
    CHECK(to_string(JumpChannel::phonon_heat) == "phonon-heat");
}
