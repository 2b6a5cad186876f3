#include "omspec/dressed.hpp"

#include "omspec/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace omspec {

DressedDecomposition dressed_decomposition(const SystemParams& p, int m_max) {
    const OperatorMatrix h = build_hamiltonian(p, m_max);
    const Eigen::Index n = m_max + 1;
    DressedDecomposition d;
    d.m_max = m_max;
    d.eigenvectors = ComplexMatrix::Zero(2 * n, 2 * n);

    // The photon number is conserved by H_sys, so each sector is diagonalized separately.
    for (int photons : {1, 0}) {
        const ComplexMatrix block = photons == 1 ? h.photon_excited_block() : h.photon_empty_block();
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(block);
        if (solver.info() != Eigen::Success) throw NumericalError("dressed-state eigensolver failed");
        const Eigen::Index offset = photons == 1 ? 0 : n;
        for (Eigen::Index k = 0; k < n; ++k) {
            d.eigenvalues.push_back(solver.eigenvalues()(k));
            ComplexVector v = solver.eigenvectors().col(k);
            // Fix the global phase: largest component real and positive.
            Eigen::Index pivot = 0;
            v.cwiseAbs().maxCoeff(&pivot);
            v *= std::conj(v(pivot)) / std::abs(v(pivot));
            d.eigenvectors.block(offset, offset + k, n, 1) = v;
            d.labels.push_back(BasisLabel{photons, static_cast<int>(k)});
        }
    }
    return d;
}

std::vector<Transition> transition_frequencies(const DressedDecomposition& d) {
    const std::size_t n = d.excited_count();
    std::vector<Transition> out;
    for (std::size_t e = 0; e < n; ++e) {
        for (std::size_t g = 0; g < n; ++g) {
            Transition t{d.eigenvalues[e] - d.eigenvalues[n + g], d.labels[e], d.labels[n + g], {}};
            if (d.m_max == 1) {
                const bool upper = e == 1;
                const bool to_vacuum = g == 0;
                t.name = upper ? (to_vacuum ? "I" : "II") : (to_vacuum ? "III" : "IV");
            }
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::vector<double> transition_weights(const DressedDecomposition& d, int initial_phonons) {
    const auto n = static_cast<Eigen::Index>(d.excited_count());
    if (initial_phonons < 0 || initial_phonons >= n) throw ValidationError("initial phonon number outside truncation");
    std::vector<double> out;
    for (Eigen::Index e = 0; e < n; ++e) {
        for (Eigen::Index g = 0; g < n; ++g) {
            // Final mirror state |0,g> comes from the |1,g> component of the dressed state.
            const Complex amp = d.eigenvectors(g, e) * std::conj(d.eigenvectors(initial_phonons, e));
            out.push_back(std::norm(amp));
        }
    }
    return out;
}

std::vector<double> resonance_positions_poles(const SystemParams& p) {
    p.validate();
    const double w = p.omega_m;
    const double root = std::sqrt((w * w + p.kappa * p.kappa) / 4.0 + p.g_m * p.g_m);
    std::vector<double> out{w / 2 + root, w / 2 - root, -w / 2 + root, -w / 2 - root};
    std::sort(out.begin(), out.end());
    return out;
}

double compact_peak_position(const SystemParams& p, int m) {
    p.validate();
    if (m < 0) throw ValidationError("phonon number must be non-negative");
    return p.g_m * p.g_m / p.omega_m - m * p.omega_m;
}

MixingCoefficients one_phonon_mixing(const SystemParams& p) {
    p.validate();
    const double w = p.omega_m;
    const double g = p.g_m;
    const double root = std::sqrt(4 * g * g + w * w);
    const double norm = std::sqrt(4 * g * g + (w + root) * (w + root));
    return {2 * g / norm, (w + root) / norm};
}

PeakSet find_peaks(const SpectrumCurve& curve, double prominence) {
    const auto& s = curve.samples;
    if (s.empty()) throw ValidationError("cannot search peaks on an empty curve");
    double global = 0.0;
    for (const auto& x : s) global = std::max(global, x.value);

    PeakSet out;
    if (s.size() < 3 || global <= 0.0) return out;
    const double threshold = prominence * global;

    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double y = s[i].value;
        if (!(y > s[i - 1].value && y >= s[i + 1].value) || y <= threshold) continue;

        // Vertex of the parabola through the three samples.
        const double x0 = s[i - 1].delta, x1 = s[i].delta, x2 = s[i + 1].delta;
        const double y0 = s[i - 1].value, y2 = s[i + 1].value;
        const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
        const double a = (x2 * (y - y0) + x1 * (y0 - y2) + x0 * (y2 - y)) / denom;
        const double b = (x2 * x2 * (y0 - y) + x1 * x1 * (y2 - y0) + x0 * x0 * (y - y2)) / denom;
        const double c = (x1 * x2 * (x1 - x2) * y0 + x2 * x0 * (x2 - x0) * y + x0 * x1 * (x0 - x1) * y2) / denom;
        Peak peak{x1, y, std::nullopt, {}};
        if (a < 0.0) {
            const double xv = -b / (2 * a);
            if (xv >= x0 && xv <= x2) {
                peak.delta = xv;
                peak.height = c - b * b / (4 * a);
            }
        }

        const double half = 0.5 * peak.height;
        std::optional<double> left, right;
        for (std::size_t j = i; j > 0; --j) {
            if (s[j - 1].value < half) {
                const double t = (half - s[j - 1].value) / (s[j].value - s[j - 1].value);
                left = s[j - 1].delta + t * (s[j].delta - s[j - 1].delta);
                break;
            }
        }
        for (std::size_t j = i; j + 1 < s.size(); ++j) {
            if (s[j + 1].value < half) {
                const double t = (s[j].value - half) / (s[j].value - s[j + 1].value);
                right = s[j].delta + t * (s[j + 1].delta - s[j].delta);
                break;
            }
        }
        if (left && right) peak.fwhm = *right - *left;
        out.peaks.push_back(std::move(peak));
    }
    return out;
}

void label_peaks(PeakSet& peaks, const std::vector<Transition>& transitions, double tolerance) {
    for (auto& peak : peaks.peaks) {
        const Transition* best = nullptr;
        for (const auto& t : transitions) {
            if (std::abs(t.delta - peak.delta) > tolerance) continue;
            if (!best || std::abs(t.delta - peak.delta) < std::abs(best->delta - peak.delta)) best = &t;
        }
        if (!best) continue;
        peak.label = best->name.empty() ? to_string(best->initial) + "->" + to_string(best->final) : best->name;
    }
}

double refine_maximum(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(hi > lo)) throw ValidationError("refine_maximum needs lo < hi");
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace omspec
