// Independent reference values for the one-phonon lossless model at
// kappa = 0.25, g = 1.25, omega = 1. Frozen from 30-digit partial-fraction
// inversion and adaptive quadrature outside this code base.

#pragma once

#include <complex>

namespace oracle {

inline constexpr double kappa = 0.25;
inline constexpr double g = 1.25;
inline constexpr double omega = 1.0;

// c_1(1), c_2(1) from |1,0>.
inline const std::complex<double> c1_at_1{0.325603127491564932, 0.186220148372147675};
inline const std::complex<double> c2_at_1{0.382972323189722792, 0.701026135354480490};
inline constexpr double norm_at_1 = 0.778800783071404868;  // exp(-kappa)

// C_1(s = 0).
inline const std::complex<double> C1_at_0{0.128592303945445689, 0.623477837311251827};

// Long-time spectrum kappa Gamma (|C1(-i D)|^2 + |C2(-i D - i w)|^2), Gamma = 0.1, D = 0.
inline constexpr double closed_form_at_0 = 0.0257184607890891378;

// Filter count N_S(infinity) at Gamma = 0.1: Lorentzian convolution of the spectrum.
inline constexpr double filter_count_at_0 = 0.0221635151927630636;
inline constexpr double filter_count_at_m085 = 0.218748100364354951;

// Closed-form transfer functions.
inline std::complex<double> C1(std::complex<double> s) {
    const std::complex<double> i{0.0, 1.0};
    return (s + kappa / 2 + i * omega) / ((s + kappa / 2) * (s + kappa / 2 + i * omega) + g * g);
}
inline std::complex<double> C2(std::complex<double> s) {
    const std::complex<double> i{0.0, 1.0};
    return i * g / ((s + kappa / 2) * (s + kappa / 2 + i * omega) + g * g);
}

}  // namespace oracle
