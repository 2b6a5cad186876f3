#include "omspec/hilbert.hpp"

#include <cmath>

namespace omspec {

bool OperatorMatrix::is_hermitian(double tol) const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix OperatorMatrix::photon_excited_block() const {
    const Eigen::Index n = m_max + 1;
    return entries.topLeftCorner(n, n);
}

ComplexMatrix OperatorMatrix::photon_empty_block() const {
    const Eigen::Index n = m_max + 1;
    return entries.bottomRightCorner(n, n);
}

Annihilators build_annihilators(int m_max) {
    if (m_max < 1) throw ValidationError("m_max must be at least 1");
    const auto dim = static_cast<Eigen::Index>(basis_dim(m_max));
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix b = ComplexMatrix::Zero(dim, dim);
    for (int m = 0; m <= m_max; ++m) {
        const auto from = static_cast<Eigen::Index>(basis_index(m_max, {1, m}));
        const auto to = static_cast<Eigen::Index>(basis_index(m_max, {0, m}));
        a(to, from) = 1.0;
    }
    for (int n = 0; n <= 1; ++n) {
        for (int m = 1; m <= m_max; ++m) {
            const auto from = static_cast<Eigen::Index>(basis_index(m_max, {n, m}));
            const auto to = static_cast<Eigen::Index>(basis_index(m_max, {n, m - 1}));
            b(to, from) = std::sqrt(static_cast<double>(m));
        }
    }
    return {OperatorMatrix{m_max, std::move(a)}, OperatorMatrix{m_max, std::move(b)}};
}

OperatorMatrix build_hamiltonian(const SystemParams& p, int m_max) {
    p.validate();
    const auto [a, b] = build_annihilators(m_max);
    const ComplexMatrix n_photon = a.entries.adjoint() * a.entries;
    const ComplexMatrix n_phonon = b.entries.adjoint() * b.entries;
    const ComplexMatrix x = b.entries + b.entries.adjoint();
    ComplexMatrix h = p.omega_m * n_phonon - p.g_m * (n_photon * x);
    return OperatorMatrix{m_max, std::move(h)};
}

OperatorMatrix build_nonhermitian(const SystemParams& p, const BathParams& bath, int m_max) {
    bath.validate();
    OperatorMatrix h = build_hamiltonian(p, m_max);
    const auto [a, b] = build_annihilators(m_max);
    const ComplexMatrix& bm = b.entries;
    // b b^dag uses the truncated b^dag, so its |m_max> diagonal entry vanishes.
    const ComplexMatrix damping = 0.5 * p.kappa * (a.entries.adjoint() * a.entries)
                                  + 0.5 * bath.gamma_m * (bath.m_bar + 1.0) * (bm.adjoint() * bm)
                                  + 0.5 * bath.gamma_m * bath.m_bar * (bm * bm.adjoint());
    h.entries -= Complex(0.0, 1.0) * damping;
    return h;
}

double bare_decay_rate(const SystemParams& p, const BathParams& bath, int m_max, BasisLabel label) {
    const OperatorMatrix h = build_nonhermitian(p, bath, m_max);
    const auto i = static_cast<Eigen::Index>(basis_index(m_max, label));
    return -2.0 * h.entries(i, i).imag();
}

}  // namespace omspec
