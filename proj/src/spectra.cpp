#include "omspec/spectra.hpp"

#include "omspec/hilbert.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace omspec {

namespace {

constexpr Complex kI{0.0, 1.0};

// Diagonal of the zero-photon block of H_NH: m omega_m - i eta_m / 2.
ComplexVector emitted_branch_energies(const OperatorMatrix& h_nh) {
    const ComplexMatrix h00 = h_nh.photon_empty_block();
    const ComplexMatrix off = h00 - ComplexMatrix(h00.diagonal().asDiagonal());
    if (off.cwiseAbs().maxCoeff() > 1e-14)
        throw NumericalError("zero-photon block of H_NH is expected to be diagonal");
    return h00.diagonal();
}

// Generator of (c, F): c' = A c, F' = Gamma c - (Gamma + i Delta) F - i H_00 F.
ComplexMatrix filter_generator(const OperatorMatrix& h_nh, const FilterParams& filter) {
    const Eigen::Index n = h_nh.m_max + 1;
    ComplexMatrix m = ComplexMatrix::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = -kI * h_nh.photon_excited_block();
    m.bottomLeftCorner(n, n) = filter.gamma_filter * ComplexMatrix::Identity(n, n);
    m.bottomRightCorner(n, n) = -(filter.gamma_filter + kI * filter.delta) * ComplexMatrix::Identity(n, n)
                                - kI * h_nh.photon_empty_block();
    return m;
}

struct FilterStep {
    ComplexMatrix propagator;  // exp(M dt)
    ComplexMatrix weight;      // int_0^dt exp(M^dag s) Q exp(M s) ds
};

// Van Loan block exponential for the quadratic-form integral. The -M^dag block
// grows like exp(Gamma dt), so the block is only exponentiated over a substep
// with ||M|| h <= 1 and the result doubled up:
//   W(2h) = W(h) + P(h)^dag W(h) P(h),  P(2h) = P(h)^2.
FilterStep make_filter_step(const ComplexMatrix& generator, double kappa, double dt) {
    const Eigen::Index d = generator.rows();
    const Eigen::Index n = d / 2;
    ComplexMatrix q = ComplexMatrix::Zero(d, d);
    q.bottomRightCorner(n, n) = kappa * ComplexMatrix::Identity(n, n);

    const double norm = generator.cwiseAbs().colwise().sum().maxCoeff();
    const int doublings = norm * dt > 1.0 ? static_cast<int>(std::ceil(std::log2(norm * dt))) : 0;
    const double h = std::ldexp(dt, -doublings);

    ComplexMatrix block = ComplexMatrix::Zero(2 * d, 2 * d);
    block.topLeftCorner(d, d) = -generator.adjoint() * h;
    block.topRightCorner(d, d) = q * h;
    block.bottomRightCorner(d, d) = generator * h;
    const ComplexMatrix phi = block.exp();
    if (!phi.allFinite()) throw NumericalError("filter propagator is not finite");

    FilterStep step;
    step.propagator = phi.bottomRightCorner(d, d);
    step.weight = step.propagator.adjoint() * phi.topRightCorner(d, d);
    for (int i = 0; i < doublings; ++i) {
        step.weight += step.propagator.adjoint() * step.weight * step.propagator;
        step.propagator = step.propagator * step.propagator;
    }
    step.weight = 0.5 * (step.weight + step.weight.adjoint()).eval();
    return step;
}

double quad_weight_simpson(std::size_t k, std::size_t intervals) {
    if (k == 0 || k == intervals) return 1.0 / 3.0;
    return (k % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
}

// Composite Simpson weights (times dt) over points 0..intervals; an odd
// interval count closes with the 3/8 rule over the last three intervals.
std::vector<double> simpson_weights(std::size_t intervals, double dt) {
    std::vector<double> w(intervals + 1, 0.0);
    if (intervals == 1) {
        w[0] = w[1] = 0.5 * dt;
        return w;
    }
    std::size_t even = intervals % 2 == 0 ? intervals : intervals - 3;
    if (even > 0) {
        for (std::size_t k = 0; k <= even; ++k) w[k] += quad_weight_simpson(k, even) * dt;
    }
    if (even != intervals) {
        const double c[4] = {3.0 / 8.0, 9.0 / 8.0, 9.0 / 8.0, 3.0 / 8.0};
        for (std::size_t k = 0; k < 4; ++k) w[even + k] += c[k] * dt;
    }
    return w;
}

double uniform_step(const std::vector<double>& times) {
    if (times.size() < 2) throw ValidationError("quadrature needs at least two grid points");
    const double dt = times[1] - times[0];
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (std::abs((times[k] - times[k - 1]) - dt) > 1e-9 * std::max(1.0, dt) + 1e-12)
            throw ValidationError("quadrature requires a uniform time grid");
    }
    return dt;
}

// Stationary value from the first `count` grid points of a trajectory.
double quadrature_value(const AmplitudeTrajectory& traj, const SystemParams& p, const FilterParams& filter,
                        std::size_t count, const std::vector<double>& weights) {
    const ComplexVector branch = emitted_branch_energies(traj.h_nh);
    const double dt = traj.times[1] - traj.times[0];
    double total = 0.0;
    for (int m = 0; m <= traj.m_max(); ++m) {
        const Complex e = branch(m);
        const double eta = -2.0 * e.imag();
        const double freq = filter.delta + e.real();
        const Complex rotation = std::polar(1.0, freq * dt);
        Complex phase{1.0, 0.0};
        Complex integral{0.0, 0.0};
        for (std::size_t k = 0; k < count; ++k) {
            if (k % 512 == 0) phase = std::polar(1.0, freq * traj.times[k]);
            integral += weights[k] * traj.photon_amplitude(k, m) * phase;
            phase *= rotation;
        }
        const double gamma = filter.gamma_filter;
        total += p.kappa * gamma * gamma / (gamma + eta) * std::norm(integral);
    }
    return total;
}

double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double max_value(const std::vector<double>& a) {
    double v = 0.0;
    for (double x : a) v = std::max(v, std::abs(x));
    return v;
}

void check_branch(int m_max, int initial_phonons) {
    if (m_max < 1) throw ValidationError("m_max must be at least 1");
    if (initial_phonons < 0 || initial_phonons > m_max)
        throw ValidationError("initial phonon number outside truncation");
}

SpectrumCurve make_curve(std::span<const double> deltas, const std::vector<double>& values, SpectrumMethod method,
                         double horizon, const SystemParams& p, const BathParams& bath, double gamma_filter) {
    SpectrumCurve curve;
    curve.method = method;
    curve.t_horizon = horizon;
    curve.params = p;
    curve.bath = bath;
    curve.gamma_filter = gamma_filter;
    curve.samples.reserve(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) curve.samples.push_back({deltas[i], values[i]});
    return curve;
}

}  // namespace

ComplexMatrix correlation_kernel(const AmplitudeTrajectory& traj, const SystemParams& p, double t_detect) {
    const ComplexVector branch = emitted_branch_energies(traj.h_nh);
    const auto n = static_cast<Eigen::Index>(traj.times.size());
    // e(k, m) = c_m(t_k) exp(-i h_mm (t_detect - t_k)), the emitted amplitude carried to t_detect.
    ComplexMatrix carried = ComplexMatrix::Zero(n, traj.m_max() + 1);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double t = traj.times[static_cast<std::size_t>(k)];
        if (t > t_detect) continue;
        for (int m = 0; m <= traj.m_max(); ++m) {
            carried(k, m) = traj.photon_amplitude(static_cast<std::size_t>(k), m)
                            * std::exp(-kI * branch(m) * (t_detect - t));
        }
    }
    return p.kappa * carried.conjugate() * carried.transpose();
}

FilterResponse filter_response(const AmplitudeTrajectory& traj, const SystemParams& p, const FilterParams& filter) {
    p.validate();
    filter.validate();
    const ComplexMatrix generator = filter_generator(traj.h_nh, filter);
    const Eigen::Index n = traj.m_max() + 1;

    ComplexVector x = ComplexVector::Zero(2 * n);
    x.head(n) = traj.initial.photon_excited();

    FilterResponse out;
    out.times = traj.times;
    out.rate.assign(traj.times.size(), 0.0);
    out.integrated.assign(traj.times.size(), 0.0);

    double cached_dt = -1.0;
    FilterStep step;
    double count = 0.0;
    for (std::size_t k = 1; k < traj.times.size(); ++k) {
        const double dt = traj.times[k] - traj.times[k - 1];
        if (std::abs(dt - cached_dt) > 1e-12 * std::max(1.0, dt)) {
            step = make_filter_step(generator, p.kappa, dt);
            cached_dt = dt;
        }
        // The exact increment is a PSD quadratic form; clamp rounding below zero.
        count += std::max(0.0, x.dot(step.weight * x).real());
        x = step.propagator * x;
        if (!x.allFinite()) throw NumericalError("filter amplitudes became non-finite at step " + std::to_string(k));
        out.rate[k] = p.kappa * x.tail(n).squaredNorm();
        out.integrated[k] = count;
    }
    return out;
}

std::vector<double> time_dependent_spectrum(const AmplitudeTrajectory& traj, const SystemParams& p,
                                            const FilterParams& filter) {
    return filter_response(traj, p, filter).rate;
}

std::vector<double> integrated_spectrum(const AmplitudeTrajectory& traj, const SystemParams& p,
                                        const FilterParams& filter) {
    return filter_response(traj, p, filter).integrated;
}

SpectrumTerms closed_form_lossless_terms(const SystemParams& p, const FilterParams& filter) {
    return closed_form_thermal_1ph_terms(p, BathParams{}, filter);
}

double closed_form_lossless(const SystemParams& p, const FilterParams& filter) {
    return closed_form_lossless_terms(p, filter).total();
}

SpectrumTerms closed_form_thermal_1ph_terms(const SystemParams& p, const BathParams& bath,
                                            const FilterParams& filter) {
    p.validate();
    bath.validate();
    filter.validate();
    const double w = p.omega_m;
    const double d = filter.delta;
    const double k2 = 0.5 * p.kappa;
    const double g2 = p.g_m * p.g_m;
    const double gm = bath.gamma_m;
    const double mb = bath.m_bar;
    const double gf = filter.gamma_filter;

    const Complex upper = kI * (w - d) + k2 + (mb + 1.0) * gm / 2.0;
    const Complex lower = k2 - kI * d + mb * gm / 2.0;
    const Complex shifted = k2 - kI * (w + d) + (mb + 1.0) * gm / 2.0;

    const double weight = 1.0 / (1.0 + mb);
    SpectrumTerms t;
    t.first = weight * p.kappa * gf * gf / (gf + mb * gm) * std::norm(upper / (upper * lower + g2));
    t.second = weight * p.kappa * gf * gf / (gf + (mb + 1.0) * gm) * std::norm(kI * p.g_m / (shifted * lower + g2));
    return t;
}

double closed_form_thermal_1ph(const SystemParams& p, const BathParams& bath, const FilterParams& filter) {
    return closed_form_thermal_1ph_terms(p, bath, filter).total();
}

SpectrumTerms closed_form_thermal_2ph_terms(const SystemParams& p, const BathParams& bath,
                                            const FilterParams& filter, ThirdBranchRate rate) {
    filter.validate();
    const OperatorMatrix h = build_nonhermitian(p, bath, 2);
    const TruncatedState initial = TruncatedState::fock(2, {1, 0});
    const double w = p.omega_m;
    const double d = filter.delta;
    const double gm = bath.gamma_m;
    const double mb = bath.m_bar;
    const double gf = filter.gamma_filter;

    const Complex d1 = laplace_amplitudes(h, initial, -kI * d).values(0);
    const Complex d2 = laplace_amplitudes(h, initial, -kI * (d + w)).values(1);
    const Complex d3 = laplace_amplitudes(h, initial, -kI * (d + 2.0 * w)).values(2);
    const double third_rate = rate == ThirdBranchRate::reduced ? (mb + 1.0) * gm : 2.0 * (mb + 1.0) * gm;

    const double weight = 1.0 / (1.0 + mb);
    const double kg = p.kappa * gf * gf;
    SpectrumTerms t;
    t.first = weight * kg / (gf + mb * gm) * std::norm(d1);
    t.second = weight * kg / (gf + (3.0 * mb + 1.0) * gm) * std::norm(d2);
    t.third = weight * kg / (gf + third_rate) * std::norm(d3);
    return t;
}

double closed_form_thermal_2ph(const SystemParams& p, const BathParams& bath, const FilterParams& filter,
                               ThirdBranchRate rate) {
    return closed_form_thermal_2ph_terms(p, bath, filter, rate).total();
}

double stationary_spectrum_laplace(const SystemParams& p, const BathParams& bath, const FilterParams& filter,
                                   int m_max, int initial_phonons) {
    check_branch(m_max, initial_phonons);
    filter.validate();
    const OperatorMatrix h = build_nonhermitian(p, bath, m_max);
    const TruncatedState initial = TruncatedState::fock(m_max, {1, initial_phonons});
    const ComplexVector branch = emitted_branch_energies(h);
    const double gf = filter.gamma_filter;
    double total = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        const double eta = -2.0 * branch(m).imag();
        const Complex s = -kI * (filter.delta + branch(m).real());
        const Complex c = laplace_amplitudes(h, initial, s).values(m);
        total += p.kappa * gf * gf / (gf + eta) * std::norm(c);
    }
    return total;
}

double stationary_spectrum_quadrature(const AmplitudeTrajectory& traj, const SystemParams& p,
                                      const FilterParams& filter) {
    p.validate();
    filter.validate();
    const double dt = uniform_step(traj.times);
    const auto weights = simpson_weights(traj.times.size() - 1, dt);
    return quadrature_value(traj, p, filter, traj.times.size(), weights);
}

SpectrumCurve stationary_spectrum_numeric(const SystemParams& p, const BathParams& bath, double gamma_filter,
                                          int m_max, int initial_phonons, std::span<const double> deltas,
                                          const LongTimeOptions& options) {
    check_branch(m_max, initial_phonons);
    if (deltas.empty()) throw ValidationError("detuning grid is empty");
    const FilterParams base{0.0, gamma_filter};
    base.validate();

    const OperatorMatrix h = build_nonhermitian(p, bath, m_max);
    const TruncatedState initial = TruncatedState::fock(m_max, {1, initial_phonons});

    double max_delta = 0.0;
    for (double d : deltas) max_delta = std::max(max_delta, std::abs(d));
    const double spectral_bound = h.entries.cwiseAbs().rowwise().sum().maxCoeff();
    const double dt_target = options.phase_resolution / (max_delta + spectral_bound + m_max * p.omega_m);

    double horizon = default_horizon(p, base);
    std::vector<double> previous;
    for (int round = 0; round <= options.max_doublings; ++round) {
        // Intervals to 2T are a multiple of 4 so that both T and 2T close Simpson panels.
        auto half = static_cast<std::size_t>(std::ceil(horizon / dt_target));
        half += half % 2;
        const std::size_t intervals = 2 * half;
        const auto grid = uniform_time_grid(2.0 * horizon, intervals + 1);
        const AmplitudeTrajectory traj = propagate(h, initial, grid);
        const double dt = grid[1] - grid[0];
        const auto w_half = simpson_weights(half, dt);
        const auto w_full = simpson_weights(intervals, dt);

        std::vector<double> at_half;
        if (previous.empty()) {
            at_half = scan([&](double d) { return quadrature_value(traj, p, {d, gamma_filter}, half + 1, w_half); },
                           deltas, options.execution);
        }
        const auto at_full = scan(
            [&](double d) { return quadrature_value(traj, p, {d, gamma_filter}, intervals + 1, w_full); }, deltas,
            options.execution);
        const auto& reference = previous.empty() ? at_half : previous;
        const bool converged = max_abs_difference(at_full, reference) <= options.tolerance * max_value(at_full);
        if (converged || round == options.max_doublings) {
            auto curve = make_curve(deltas, at_full, SpectrumMethod::numeric, 2.0 * horizon, p, bath, gamma_filter);
            if (!converged) curve.warnings.push_back("long-time horizon did not converge");
            return curve;
        }
        previous = at_full;
        horizon *= 2.0;
    }
    throw NumericalError("unreachable");
}

SpectrumCurve integrated_spectrum_long_time(const SystemParams& p, const BathParams& bath, double gamma_filter,
                                            int m_max, int initial_phonons, std::span<const double> deltas,
                                            const LongTimeOptions& options) {
    check_branch(m_max, initial_phonons);
    if (deltas.empty()) throw ValidationError("detuning grid is empty");
    const FilterParams base{0.0, gamma_filter};
    base.validate();

    const OperatorMatrix h = build_nonhermitian(p, bath, m_max);
    const TruncatedState initial = TruncatedState::fock(m_max, {1, initial_phonons});

    double horizon = default_horizon(p, base);
    std::vector<double> previous;
    for (int round = 0; round <= options.max_doublings; ++round) {
        // Exact stepping: the grid only fixes where N_S is sampled.
        const std::size_t intervals = 512;
        const auto grid = uniform_time_grid(2.0 * horizon, intervals + 1);
        const AmplitudeTrajectory traj = propagate(h, initial, grid);

        std::vector<double> at_half(deltas.size());
        std::vector<double> index(deltas.size());
        for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i);
        const auto at_full = scan(
            [&](double x) {
                const auto i = static_cast<std::size_t>(x);
                const auto counts = filter_response(traj, p, {deltas[i], gamma_filter}).integrated;
                at_half[i] = counts[intervals / 2];
                return counts.back();
            },
            index, options.execution);
        const auto& reference = previous.empty() ? at_half : previous;
        const bool converged = max_abs_difference(at_full, reference) <= options.tolerance * max_value(at_full);
        if (converged || round == options.max_doublings) {
            auto curve = make_curve(deltas, at_full, SpectrumMethod::filter, 2.0 * horizon, p, bath, gamma_filter);
            if (!converged) curve.warnings.push_back("long-time horizon did not converge");
            return curve;
        }
        previous = at_full;
        horizon *= 2.0;
    }
    throw NumericalError("unreachable");
}

TimeDependentMap time_dependent_map(const SystemParams& p, const BathParams& bath, double gamma_filter,
                                    int m_max, int initial_phonons, std::span<const double> deltas,
                                    std::span<const double> times, Execution exec) {
    check_branch(m_max, initial_phonons);
    const OperatorMatrix h = build_nonhermitian(p, bath, m_max);
    const TruncatedState initial = TruncatedState::fock(m_max, {1, initial_phonons});
    const AmplitudeTrajectory traj = propagate(h, initial, times);

    TimeDependentMap map;
    map.times = traj.times;
    map.deltas.assign(deltas.begin(), deltas.end());
    map.rate.resize(deltas.size());
    map.integrated.resize(deltas.size());

    // Index scan so each worker fills its own row.
    std::vector<double> index(deltas.size());
    for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i);
    scan(
        [&](double x) {
            const auto i = static_cast<std::size_t>(x);
            auto response = filter_response(traj, p, {deltas[i], gamma_filter});
            map.rate[i] = std::move(response.rate);
            map.integrated[i] = std::move(response.integrated);
            return 0.0;
        },
        index, exec);
    return map;
}

double ThermalWeights::deficit() const {
    double sum = 0.0;
    for (double w : weights) sum += w;
    return 1.0 - sum;
}

ThermalWeights thermal_weights(double m_bar, int m_max) {
    if (!(m_bar >= 0.0) || !std::isfinite(m_bar)) throw ValidationError("m_bar must be non-negative");
    if (m_max < 0) throw ValidationError("m_max must be non-negative");
    ThermalWeights tw;
    tw.m_bar = m_bar;
    const double ratio = m_bar / (1.0 + m_bar);
    double p = 1.0 / (1.0 + m_bar);
    for (int m = 0; m <= m_max; ++m) {
        tw.weights.push_back(p);
        p *= ratio;
    }
    return tw;
}

void warn_truncated(SpectrumCurve& curve, const ThermalWeights& tw, int m_max, double epsilon) {
    if (tw.deficit() <= epsilon) return;
    std::ostringstream msg;
    msg << "thermal weights truncated at m_max = " << m_max << " miss " << tw.deficit() << " of the distribution";
    curve.warnings.push_back(msg.str());
}

SpectrumCurve thermal_average_spectrum(const SystemParams& p, const BathParams& bath, double gamma_filter,
                                       std::span<const double> deltas, int m_max, double epsilon,
                                       const LongTimeOptions& options) {
    const ThermalWeights tw = thermal_weights(bath.m_bar, m_max);
    std::vector<double> total(deltas.size(), 0.0);
    double horizon = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        if (tw.weights[static_cast<std::size_t>(m)] == 0.0) continue;
        const SpectrumCurve branch = stationary_spectrum_numeric(p, bath, gamma_filter, m_max, m, deltas, options);
        horizon = std::max(horizon, branch.t_horizon);
        for (std::size_t i = 0; i < deltas.size(); ++i)
            total[i] += tw.weights[static_cast<std::size_t>(m)] * branch.samples[i].value;
    }
    SpectrumCurve curve = make_curve(deltas, total, SpectrumMethod::numeric, horizon, p, bath, gamma_filter);
    warn_truncated(curve, tw, m_max, epsilon);
    return curve;
}

SpectrumCurve thermal_average_laplace(const SystemParams& p, const BathParams& bath, double gamma_filter,
                                      std::span<const double> deltas, int m_max, double epsilon, Execution exec) {
    const ThermalWeights tw = thermal_weights(bath.m_bar, m_max);
    const auto total = scan(
        [&](double d) {
            double sum = 0.0;
            for (int m = 0; m <= m_max; ++m) {
                const double w = tw.weights[static_cast<std::size_t>(m)];
                if (w > 0.0) sum += w * stationary_spectrum_laplace(p, bath, {d, gamma_filter}, m_max, m);
            }
            return sum;
        },
        deltas, exec);
    SpectrumCurve curve = make_curve(deltas, total, SpectrumMethod::numeric, kInfinity, p, bath, gamma_filter);
    warn_truncated(curve, tw, m_max, epsilon);
    return curve;
}

}  // namespace omspec
