// No-jump evolution under the non-Hermitian Hamiltonian and its Laplace-domain
// amplitudes.

#pragma once

#include "omspec/core.hpp"
#include "omspec/hilbert.hpp"

#include <span>
#include <vector>

namespace omspec {

// exp(-i H t) for a time-independent (possibly non-Hermitian) H.
ComplexMatrix evolution_operator(const ComplexMatrix& h, double t);

// Grid starting at 0 with strictly increasing times.
std::vector<double> validate_time_grid(std::vector<double> times);
std::vector<double> uniform_time_grid(double t_max, std::size_t count);

struct AmplitudeTrajectory {
    OperatorMatrix h_nh;
    TruncatedState initial;
    std::vector<double> times;
    std::vector<TruncatedState> states;

    int m_max() const noexcept { return initial.m_max(); }
    // c_m(t_k): amplitude of |1, m> at grid point k.
    Complex photon_amplitude(std::size_t k, int m) const { return states[k].amplitude({1, m}); }
};

// Exact stepping with the matrix exponential; one exponential per distinct step.
// Throws NumericalError naming the step when a non-finite amplitude appears.
AmplitudeTrajectory propagate(const OperatorMatrix& h_nh, const TruncatedState& initial,
                              std::span<const double> grid);

class PoleError : public NumericalError {
public:
    PoleError(const std::string& message, Complex pole) : NumericalError(message), pole_(pole) {}
    Complex pole() const noexcept { return pole_; }

private:
    Complex pole_;
};

struct LaplaceAmplitudes {
    Complex s;
    ComplexVector values;  // over |1, 0..m_max>
};

// Solves (s I - A) C = c(0) on the photon-excited block, A = -i H_NH.
// Throws PoleError when s coincides with an eigenvalue of A.
LaplaceAmplitudes laplace_amplitudes(const OperatorMatrix& h_nh, const TruncatedState& initial, Complex s);

// Starting horizon for long-time quantities: max(20/kappa, 20/Gamma, 20/omega_m).
double default_horizon(const SystemParams& p, const FilterParams& filter);

}  // namespace omspec
