// Dressed states of the optomechanical Hamiltonian, resonance formulas and
// peak detection on sampled spectra.

#pragma once

#include "omspec/core.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace omspec {

struct DressedDecomposition {
    int m_max{1};
    // Photon-excited eigenstates first (ascending energy), then the photon-empty
    // ones, mirroring the basis ordering.
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;  // columns, orthonormal
    // Bare state each eigenstate continues to as g_m -> 0.
    std::vector<BasisLabel> labels;

    std::size_t excited_count() const noexcept { return static_cast<std::size_t>(m_max + 1); }
};

// Eigenvalues within each photon sector are simple for g_m > 0 (irreducible
// tridiagonal block), so ascending order is preserved along g_m -> 0 and the
// k-th excited eigenstate maps to |1, k>.
DressedDecomposition dressed_decomposition(const SystemParams& p, int m_max);

struct Transition {
    double delta;          // E(excited) - E(photon-empty), relative to omega_c
    BasisLabel initial;    // label of the photon-excited dressed state
    BasisLabel final;      // photon-empty state
    std::string name;      // I..IV for m_max = 1, empty otherwise
};

// All excited -> photon-empty differences, ordered by excited state then final state.
std::vector<Transition> transition_frequencies(const DressedDecomposition& d);

// |<1, m_final | lambda> <lambda | 1, m_initial>|^2 for each transition; the area
// of the corresponding well-resolved peak scales with this weight.
std::vector<double> transition_weights(const DressedDecomposition& d, int initial_phonons);

// Real parts of the poles of the lossless one-phonon spectrum,
// +-omega/2 +- sqrt((omega^2 + kappa^2)/4 + g^2), sorted ascending.
std::vector<double> resonance_positions_poles(const SystemParams& p);

// g^2/omega - m omega.
double compact_peak_position(const SystemParams& p, int m);

struct MixingCoefficients {
    double n1;
    double n2;
};

// Bare-state weights of the one-phonon dressed states: the lower one is
// N2|1,0> + N1|1,1>, the upper one -N1|1,0> + N2|1,1>.
MixingCoefficients one_phonon_mixing(const SystemParams& p);

struct Peak {
    double delta;
    double height;
    std::optional<double> fwhm;
    std::string label;
};

struct PeakSet {
    std::vector<Peak> peaks;
    std::size_t size() const noexcept { return peaks.size(); }
};

inline constexpr double kDefaultProminence = 0.02;

// Local maxima above prominence * global maximum, located by parabolic
// interpolation and measured at half maximum by linear interpolation.
PeakSet find_peaks(const SpectrumCurve& curve, double prominence = kDefaultProminence);

// Attaches the name (or bare labels) of the nearest transition within tolerance.
void label_peaks(PeakSet& peaks, const std::vector<Transition>& transitions, double tolerance);

// Golden-section maximization of a unimodal f on [lo, hi].
double refine_maximum(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-10);

}  // namespace omspec
