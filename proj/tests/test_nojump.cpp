#include "omspec/nojump.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace omspec;

namespace {

const SystemParams kStandard{oracle::omega, oracle::g, oracle::kappa};

}  // namespace

TEST_CASE("decoupled photon decays as exp(-kappa t / 2)") {
    const SystemParams p{1.0, 0.0, 0.4};
    const auto h = build_nonhermitian(p, {}, 2);
    const auto grid = uniform_time_grid(10.0, 101);
    const auto traj = propagate(h, TruncatedState::fock(2, {1, 0}), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(traj.photon_amplitude(k, 0) - std::exp(-0.2 * grid[k])) < 1e-13);
        CHECK(std::abs(traj.photon_amplitude(k, 1)) < 1e-15);
    }
}

TEST_CASE("amplitudes at t = 1 match the inverse Laplace transform") {
    const auto h = build_nonhermitian(kStandard, {}, 1);
    const std::vector<double> grid{0.0, 0.5, 1.0};
    const auto traj = propagate(h, TruncatedState::fock(1, {1, 0}), grid);
    // The phase convention of the transfer functions puts omega on |1,1>, matching H.
    CHECK(std::abs(traj.photon_amplitude(2, 0) - oracle::c1_at_1) < 1e-12);
    CHECK(std::abs(traj.photon_amplitude(2, 1) - oracle::c2_at_1) < 1e-12);
    CHECK(traj.states[2].squared_norm() == doctest::Approx(oracle::norm_at_1).epsilon(1e-13));
}

TEST_CASE("lossless norm decays exactly as exp(-kappa t)") {
    for (int m_max : {1, 2, 4}) {
        const auto h = build_nonhermitian(kStandard, {}, m_max);
        const auto grid = uniform_time_grid(50.0, 501);
        const auto traj = propagate(h, TruncatedState::fock(m_max, {1, 0}), grid);
        for (std::size_t k = 0; k < grid.size(); ++k)
            CHECK(std::abs(traj.states[k].squared_norm() * std::exp(oracle::kappa * grid[k]) - 1.0) < 1e-10);
    }
}

TEST_CASE("flux balance: d|psi|^2/dt = -sum of channel rates") {
    const BathParams bath{0.1, 0.8};
    const int m_max = 3;
    const auto h = build_nonhermitian(kStandard, bath, m_max);
    const double dt = 1e-4;
    const std::vector<double> grid{0.0, 2.0 - dt, 2.0, 2.0 + dt};
    const auto traj = propagate(h, TruncatedState::fock(m_max, {1, 1}), grid);
    const double slope = (traj.states[3].squared_norm() - traj.states[1].squared_norm()) / (2 * dt);
    double rate = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        const double pop = std::norm(traj.photon_amplitude(2, m));
        const double heat = m < m_max ? bath.gamma_m * bath.m_bar * (m + 1) : 0.0;
        rate += pop * (oracle::kappa + bath.gamma_m * (bath.m_bar + 1) * m + heat);
    }
    CHECK(slope == doctest::Approx(-rate).epsilon(1e-6));
}

TEST_CASE("step grid does not change exact propagation") {
    const auto h = build_nonhermitian(kStandard, {0.05, 0.3}, 2);
    const auto start = TruncatedState::fock(2, {1, 0});
    const auto coarse = propagate(h, start, std::vector<double>{0.0, 7.0});
    std::vector<double> fine{0.0};
    for (double t = 0.013; t < 7.0; t += 0.013 + 0.01 * std::sin(t)) fine.push_back(t);
    fine.push_back(7.0);
    const auto dense = propagate(h, start, fine);
    CHECK((coarse.states.back().amplitudes() - dense.states.back().amplitudes()).norm() < 1e-12);
}

TEST_CASE("time grid validation") {
    CHECK_THROWS_AS(validate_time_grid({0.1, 0.2}), ValidationError);
    CHECK_THROWS_AS(validate_time_grid({0.0, 0.2, 0.2}), ValidationError);
    CHECK_THROWS_AS(uniform_time_grid(-1.0, 10), ValidationError);
    const auto h = build_nonhermitian(kStandard, {}, 1);
    CHECK_THROWS_AS(propagate(h, TruncatedState::fock(2, {1, 0}), std::vector<double>{0.0, 1.0}), ValidationError);
}

TEST_CASE("Laplace amplitudes match the transfer functions") {
    const auto h = build_nonhermitian(kStandard, {}, 1);
    const auto start = TruncatedState::fock(1, {1, 0});
    const auto at0 = laplace_amplitudes(h, start, 0.0);
    CHECK(std::abs(at0.values(0) - oracle::C1_at_0) < 1e-14);
    // (0.125 + i) / (0.125 (0.125 + i) + 1.5625)
    const Complex by_hand = Complex(0.125, 1.0) / (0.125 * Complex(0.125, 1.0) + 1.5625);
    CHECK(std::abs(at0.values(0) - by_hand) < 1e-14);
    for (double d : {-2.3, -0.85, 0.0, 0.4, 1.9}) {
        const Complex s{0.0, -d};
        const auto c = laplace_amplitudes(h, start, s);
        CHECK(std::abs(c.values(0) - oracle::C1(s)) < 1e-12);
        CHECK(std::abs(c.values(1) - oracle::C2(s)) < 1e-12);
    }

    const auto free = laplace_amplitudes(build_nonhermitian({1.0, 0.0, 0.25}, {}, 1), start, 0.0);
    CHECK(std::abs(free.values(0) - 2.0 / 0.25) < 1e-12);
}

TEST_CASE("Laplace amplitudes equal the time integral of e^{-st} c(t)") {
    const auto h = build_nonhermitian(kStandard, {0.1, 0.5}, 2);
    const auto start = TruncatedState::fock(2, {1, 0});
    const double t_max = 160.0;
    const std::size_t n = 32001;  // odd: composite Simpson
    const auto grid = uniform_time_grid(t_max, n);
    const auto traj = propagate(h, start, grid);
    const Complex s{0.02, 0.7};
    const double dt = grid[1];
    ComplexVector integral = ComplexVector::Zero(3);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = (k == 0 || k == n - 1) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        integral += w * std::exp(-s * grid[k]) * traj.states[k].photon_excited();
    }
    integral *= dt / 3.0;
    const auto c = laplace_amplitudes(h, start, s);
    CHECK((integral - c.values).norm() < 1e-6);
}

TEST_CASE("Laplace pole is reported") {
    const SystemParams p{1.0, 0.0, 0.5};
    const auto h = build_nonhermitian(p, {}, 1);
    try {
        laplace_amplitudes(h, TruncatedState::fock(1, {1, 0}), Complex(-0.25, 0.0));
        FAIL("expected PoleError");
    } catch (const PoleError& e) {
        CHECK(std::abs(e.pole() - Complex(-0.25, 0.0)) < 1e-12);
    }
}

TEST_CASE("default horizon") {
    CHECK(default_horizon({1.0, 1.0, 0.25}, {0.0, 0.1}) == doctest::Approx(200.0));
    CHECK(default_horizon({1.0, 1.0, 0.01}, {0.0, 0.1}) == doctest::Approx(2000.0));
}
