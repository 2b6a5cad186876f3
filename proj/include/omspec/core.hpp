// Shared domain types for the single-photon optomechanical spectrum simulator.
//
// Frequencies are measured in the frame rotating at the cavity resonance, so
// every optical frequency is a detuning Delta = omega - omega_c. The canonical
// unit is the mechanical frequency (omega_m == 1 after normalize_params).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace omspec {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Invalid parameters, grids or configuration.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Non-finite values or failed decompositions during a computation.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SystemParams {
    double omega_m{1.0};  // mechanical frequency, > 0
    double g_m{0.0};      // optomechanical coupling, >= 0
    double kappa{1.0};    // cavity field decay rate, > 0

    void validate() const;
};

struct BathParams {
    double gamma_m{0.0};  // phonon decay rate
    double m_bar{0.0};    // mean thermal phonon number

    void validate() const;
    bool lossless() const noexcept { return gamma_m == 0.0 && m_bar == 0.0; }
};

struct FilterParams {
    double delta{0.0};         // filter detuning omega - omega_c
    double gamma_filter{0.1};  // filter bandwidth, > 0

    void validate() const;
};

// Rescales all rates so that omega_m == 1. Idempotent.
SystemParams normalize_params(const SystemParams& p);
BathParams normalize_bath(const BathParams& bath, double omega_m);
FilterParams normalize_filter(const FilterParams& filter, double omega_m);

// Basis label |n, m>: n photons (0 or 1), m phonons.
struct BasisLabel {
    int photons{0};
    int phonons{0};

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

std::string to_string(const BasisLabel& label);

// Fixed basis ordering: |1,0>, |1,1>, ..., |1,m_max>, then |0,0>, ..., |0,m_max>.
inline std::size_t basis_dim(int m_max) noexcept {
    return 2 * static_cast<std::size_t>(m_max + 1);
}
std::size_t basis_index(int m_max, BasisLabel label);
BasisLabel basis_label(int m_max, std::size_t index);

class TruncatedState {
public:
    TruncatedState() = default;
    TruncatedState(int m_max, ComplexVector amplitudes);

    // |n, m> with unit amplitude.
    static TruncatedState fock(int m_max, BasisLabel label);

    int m_max() const noexcept { return m_max_; }
    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    Complex amplitude(BasisLabel label) const { return amplitudes_(basis_index(m_max_, label)); }

    // Amplitudes of |1, 0..m_max>.
    ComplexVector photon_excited() const { return amplitudes_.head(m_max_ + 1); }
    ComplexVector photon_empty() const { return amplitudes_.tail(m_max_ + 1); }

    double squared_norm() const { return amplitudes_.squaredNorm(); }
    double photon_population() const { return photon_excited().squaredNorm(); }

private:
    int m_max_{1};
    ComplexVector amplitudes_;
};

enum class SpectrumMethod { closed_form, numeric, filter, mc };

std::string to_string(SpectrumMethod method);
SpectrumMethod parse_method(const std::string& name);

struct SpectrumSample {
    double delta;
    double value;
};

struct SpectrumCurve {
    std::vector<SpectrumSample> samples;
    SpectrumMethod method{SpectrumMethod::closed_form};
    double t_horizon{kInfinity};
    SystemParams params;
    BathParams bath;
    double gamma_filter{0.0};
    std::vector<std::string> warnings;

    // Throws ValidationError unless values are >= 0 and deltas strictly increase.
    void check_invariants() const;

    std::vector<double> deltas() const;
    std::vector<double> values() const;
};

// Uniformly spaced grid including both end points; count >= 2.
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace omspec
