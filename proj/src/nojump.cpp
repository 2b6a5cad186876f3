#include "omspec/nojump.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

namespace omspec {

ComplexMatrix evolution_operator(const ComplexMatrix& h, double t) {
    const ComplexMatrix generator = Complex(0.0, -t) * h;
    ComplexMatrix u = generator.exp();
    if (!u.allFinite()) throw NumericalError("matrix exponential produced non-finite entries");
    return u;
}

std::vector<double> validate_time_grid(std::vector<double> times) {
    if (times.empty() || times.front() != 0.0) throw ValidationError("time grid must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1]) || !std::isfinite(times[k]))
            throw ValidationError("time grid must be strictly increasing");
    }
    return times;
}

std::vector<double> uniform_time_grid(double t_max, std::size_t count) {
    if (!(t_max > 0.0)) throw ValidationError("t_max must be positive");
    auto grid = linspace(0.0, t_max, count);
    grid.front() = 0.0;
    return grid;
}

AmplitudeTrajectory propagate(const OperatorMatrix& h_nh, const TruncatedState& initial,
                              std::span<const double> grid) {
    if (initial.m_max() != h_nh.m_max) throw ValidationError("state and operator truncations differ");
    auto times = validate_time_grid(std::vector<double>(grid.begin(), grid.end()));

    AmplitudeTrajectory traj{h_nh, initial, std::move(times), {}};
    traj.states.reserve(traj.times.size());
    traj.states.push_back(initial);

    double cached_dt = -1.0;
    ComplexMatrix step;
    ComplexVector psi = initial.amplitudes();
    for (std::size_t k = 1; k < traj.times.size(); ++k) {
        const double dt = traj.times[k] - traj.times[k - 1];
        // Uniform grids reuse one exponential; floating-point jitter in dt is below 1e-12.
        if (std::abs(dt - cached_dt) > 1e-12 * std::max(1.0, dt)) {
            step = evolution_operator(h_nh.entries, dt);
            cached_dt = dt;
        }
        psi = step * psi;
        if (!psi.allFinite())
            throw NumericalError("non-finite amplitude at step " + std::to_string(k) + " (t = " +
                                 std::to_string(traj.times[k]) + ")");
        traj.states.emplace_back(initial.m_max(), psi);
    }
    return traj;
}

LaplaceAmplitudes laplace_amplitudes(const OperatorMatrix& h_nh, const TruncatedState& initial, Complex s) {
    if (initial.m_max() != h_nh.m_max) throw ValidationError("state and operator truncations differ");
    const ComplexMatrix a = Complex(0.0, -1.0) * h_nh.photon_excited_block();
    const Eigen::Index n = a.rows();

    Eigen::ComplexEigenSolver<ComplexMatrix> eig(a, false);
    if (eig.info() != Eigen::Success) throw NumericalError("eigenvalue computation failed");
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex lambda = eig.eigenvalues()(i);
        if (std::abs(s - lambda) <= 1e-12 * std::max(1.0, std::abs(lambda))) {
            throw PoleError("Laplace argument coincides with generator eigenvalue (" +
                                std::to_string(lambda.real()) + ", " + std::to_string(lambda.imag()) + ")",
                            lambda);
        }
    }

    const ComplexMatrix system = s * ComplexMatrix::Identity(n, n) - a;
    ComplexVector values = system.partialPivLu().solve(initial.photon_excited());
    if (!values.allFinite()) throw NumericalError("Laplace solve produced non-finite values");
    return LaplaceAmplitudes{s, std::move(values)};
}

double default_horizon(const SystemParams& p, const FilterParams& filter) {
    p.validate();
    filter.validate();
    return std::max({20.0 / p.kappa, 20.0 / filter.gamma_filter, 20.0 / p.omega_m});
}

}  // namespace omspec
