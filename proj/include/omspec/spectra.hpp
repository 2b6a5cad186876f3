// Filtered single-photon spectra: the time-dependent counting rate N(t), its
// time integral N_S(t), closed-form long-time spectra and the general
// numerical long-time spectrum for any phonon truncation.

#pragma once

#include "omspec/core.hpp"
#include "omspec/nojump.hpp"
#include "omspec/scan.hpp"

#include <span>
#include <vector>

namespace omspec {

// Two-time field correlation kappa <a^dag(t') a(t'')> on the trajectory grid,
// for detection at t_detect (grid points with t > t_detect are zero). The
// photon-empty mirror state left behind by emission keeps evolving under the
// zero-photon block of H_NH until t_detect; in the lossless case the result
// does not depend on t_detect.
ComplexMatrix correlation_kernel(const AmplitudeTrajectory& traj, const SystemParams& p, double t_detect);

struct FilterResponse {
    std::vector<double> times;
    std::vector<double> rate;        // N(t; Delta, Gamma)
    std::vector<double> integrated;  // N_S(t; Delta, Gamma)
};

// Drives one Lorentzian filter amplitude per phonon branch,
//   dF/dt = -(Gamma + i Delta) F - i H_00 F + Gamma c(t),  F(0) = 0,
// with H_00 the zero-photon block of H_NH, so that N = kappa |F|^2. The count
// N_S is accumulated with exact per-step quadratic-form integrals.
FilterResponse filter_response(const AmplitudeTrajectory& traj, const SystemParams& p, const FilterParams& filter);

std::vector<double> time_dependent_spectrum(const AmplitudeTrajectory& traj, const SystemParams& p,
                                            const FilterParams& filter);
std::vector<double> integrated_spectrum(const AmplitudeTrajectory& traj, const SystemParams& p,
                                        const FilterParams& filter);

// ---------------------------------------------------------------- closed forms

struct SpectrumTerms {
    double first;   // final mirror state |0,0>
    double second;  // final mirror state |0,1>
    double third{0.0};
    double total() const noexcept { return first + second + third; }
};

// Lossless one-phonon long-time spectrum
//   kappa Gamma (|C_1(-i Delta)|^2 + |C_2(-i Delta - i omega_m)|^2).
SpectrumTerms closed_form_lossless_terms(const SystemParams& p, const FilterParams& filter);
double closed_form_lossless(const SystemParams& p, const FilterParams& filter);

// One-phonon spectrum with mechanical damping and thermal occupation
// in its standard closed form: overall weight 1/(1+M) and prefactors
// kappa Gamma^2 / (Gamma + rate). The second term attaches (M+1) gamma_m / 2 to the
// shifted factor; a Laplace solve of build_nonhermitian attaches it to the other one.
SpectrumTerms closed_form_thermal_1ph_terms(const SystemParams& p, const BathParams& bath,
                                            const FilterParams& filter);
double closed_form_thermal_1ph(const SystemParams& p, const BathParams& bath, const FilterParams& filter);

// Decay rate used in the prefactor of the |0,2> branch of the two-phonon form.
enum class ThirdBranchRate {
    reduced,      // (M + 1) gamma_m, the one-phonon rate carried over
    hamiltonian,  // 2 (M + 1) gamma_m, the |0,2> damping of the truncated H_NH
};

// Two-phonon spectrum with D_1, D_2, D_3 from laplace_amplitudes (m_max = 2,
// initial |1,0>) at s = -i Delta, -i Delta - i omega_m, -i Delta - 2 i omega_m.
SpectrumTerms closed_form_thermal_2ph_terms(const SystemParams& p, const BathParams& bath,
                                            const FilterParams& filter,
                                            ThirdBranchRate rate = ThirdBranchRate::reduced);
double closed_form_thermal_2ph(const SystemParams& p, const BathParams& bath, const FilterParams& filter,
                               ThirdBranchRate rate = ThirdBranchRate::reduced);

// ------------------------------------------------------ general long-time spectra

// sum_m kappa Gamma^2/(Gamma + eta_m) |C_m(-i Delta - i m omega_m)|^2 for initial
// state |1, initial_phonons>, with eta_m the decay rate of |0,m> in H_NH.
// Reduces to the closed forms at m_max = 1 and (with the hamiltonian third
// rate) m_max = 2, without the 1/(1+M) weight.
double stationary_spectrum_laplace(const SystemParams& p, const BathParams& bath, const FilterParams& filter,
                                   int m_max, int initial_phonons);

// Same quantity from a propagated trajectory by Simpson quadrature of
// int_0^T c_m(t) exp(i (Delta + m omega_m) t) dt. Requires a uniform grid.
double stationary_spectrum_quadrature(const AmplitudeTrajectory& traj, const SystemParams& p,
                                      const FilterParams& filter);

struct LongTimeOptions {
    double tolerance{1e-6};      // relative change that stops horizon doubling
    int max_doublings{6};
    double phase_resolution{0.02};  // max phase advance per time step
    Execution execution{Execution::parallel};
};

// Numerical long-time spectrum over a detuning grid: propagates |1, initial_phonons>
// to the default horizon and doubles it until the curve changes by less than
// tolerance relative to its maximum.
SpectrumCurve stationary_spectrum_numeric(const SystemParams& p, const BathParams& bath, double gamma_filter,
                                          int m_max, int initial_phonons, std::span<const double> deltas,
                                          const LongTimeOptions& options = {});

// N_S(T; Delta, Gamma) at the convergence horizon of the filter route.
SpectrumCurve integrated_spectrum_long_time(const SystemParams& p, const BathParams& bath, double gamma_filter,
                                            int m_max, int initial_phonons, std::span<const double> deltas,
                                            const LongTimeOptions& options = {});

// N_S on a (t, Delta) grid for the time-dependent picture. rate[i][k], integrated[i][k]
// for deltas[i] and times[k].
struct TimeDependentMap {
    std::vector<double> times;
    std::vector<double> deltas;
    std::vector<std::vector<double>> rate;
    std::vector<std::vector<double>> integrated;
};

TimeDependentMap time_dependent_map(const SystemParams& p, const BathParams& bath, double gamma_filter,
                                    int m_max, int initial_phonons, std::span<const double> deltas,
                                    std::span<const double> times, Execution exec = Execution::parallel);

// ------------------------------------------------------------------- thermal

struct ThermalWeights {
    double m_bar{0.0};
    std::vector<double> weights;  // p_m = M^m / (1+M)^(m+1), m = 0..m_max
    double deficit() const;       // 1 - sum of the truncated weights
};

ThermalWeights thermal_weights(double m_bar, int m_max);

// Sum over initial phonon numbers m = 0..m_max of p_m times the numerical
// long-time spectrum from |1, m>. Adds a warning when the truncated weights
// miss more than epsilon of the distribution.
SpectrumCurve thermal_average_spectrum(const SystemParams& p, const BathParams& bath, double gamma_filter,
                                       std::span<const double> deltas, int m_max, double epsilon = 1e-3,
                                       const LongTimeOptions& options = {});

// Same average with every branch from stationary_spectrum_laplace; cheap enough
// for the large truncations a warm bath needs.
SpectrumCurve thermal_average_laplace(const SystemParams& p, const BathParams& bath, double gamma_filter,
                                      std::span<const double> deltas, int m_max, double epsilon = 1e-3,
                                      Execution exec = Execution::parallel);

}  // namespace omspec
