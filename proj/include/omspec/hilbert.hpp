// Operator matrices over the truncated single-excitation Fock space.

#pragma once

#include "omspec/core.hpp"

#include <utility>

namespace omspec {

struct OperatorMatrix {
    int m_max{1};
    ComplexMatrix entries;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(entries.rows()); }
    bool is_hermitian(double tol = 1e-14) const;

    // Block acting on |1, 0..m_max> (photon present).
    ComplexMatrix photon_excited_block() const;
    // Block acting on |0, 0..m_max> (photon emitted).
    ComplexMatrix photon_empty_block() const;
};

struct Annihilators {
    OperatorMatrix a;  // photon: |1,m> -> |0,m>
    OperatorMatrix b;  // phonon: sqrt(m) |n,m-1><n,m|, with b^dag |m_max> = 0
};

Annihilators build_annihilators(int m_max);

// omega_m b^dag b - g_m a^dag a (b + b^dag), in the frame rotating at omega_c.
OperatorMatrix build_hamiltonian(const SystemParams& p, int m_max);

// H_sys - i kappa/2 a^dag a - i gamma_m/2 (M+1) b^dag b - i gamma_m/2 M b b^dag.
// With bath = {0, 0} this is the lossless no-jump Hamiltonian.
OperatorMatrix build_nonhermitian(const SystemParams& p, const BathParams& bath, int m_max);

// Probability decay rate of the bare state |n, m> under the anti-Hermitian part
// of build_nonhermitian, i.e. -2 Im <n,m|H_NH|n,m>.
double bare_decay_rate(const SystemParams& p, const BathParams& bath, int m_max, BasisLabel label);

}  // namespace omspec
