#include "omspec/core.hpp"

#include <cmath>
#include <sstream>

namespace omspec {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

}  // namespace

void SystemParams::validate() const {
    require(std::isfinite(omega_m) && omega_m > 0.0, "omega_m must be positive");
    require(std::isfinite(kappa) && kappa > 0.0, "kappa must be positive");
    require(std::isfinite(g_m) && g_m >= 0.0, "g_m must be non-negative");
}

void BathParams::validate() const {
    require(std::isfinite(gamma_m) && gamma_m >= 0.0, "gamma_m must be non-negative");
    require(std::isfinite(m_bar) && m_bar >= 0.0, "m_bar must be non-negative");
}

void FilterParams::validate() const {
    require(std::isfinite(delta), "filter detuning must be finite");
    require(std::isfinite(gamma_filter) && gamma_filter > 0.0, "filter bandwidth must be positive");
}

SystemParams normalize_params(const SystemParams& p) {
    p.validate();
    const double w = p.omega_m;
    return SystemParams{1.0, p.g_m / w, p.kappa / w};
}

BathParams normalize_bath(const BathParams& bath, double omega_m) {
    bath.validate();
    require(omega_m > 0.0, "omega_m must be positive");
    return BathParams{bath.gamma_m / omega_m, bath.m_bar};
}

FilterParams normalize_filter(const FilterParams& filter, double omega_m) {
    filter.validate();
    require(omega_m > 0.0, "omega_m must be positive");
    return FilterParams{filter.delta / omega_m, filter.gamma_filter / omega_m};
}

std::string to_string(const BasisLabel& label) {
    std::ostringstream out;
    out << '|' << label.photons << ',' << label.phonons << '>';
    return out.str();
}

std::size_t basis_index(int m_max, BasisLabel label) {
    require(m_max >= 0, "m_max must be non-negative");
    require(label.photons == 0 || label.photons == 1, "photon number must be 0 or 1");
    require(label.phonons >= 0 && label.phonons <= m_max, "phonon number outside truncation");
    const auto m = static_cast<std::size_t>(label.phonons);
    return label.photons == 1 ? m : static_cast<std::size_t>(m_max + 1) + m;
}

BasisLabel basis_label(int m_max, std::size_t index) {
    const auto block = static_cast<std::size_t>(m_max + 1);
    require(index < 2 * block, "basis index out of range");
    if (index < block) return BasisLabel{1, static_cast<int>(index)};
    return BasisLabel{0, static_cast<int>(index - block)};
}

TruncatedState::TruncatedState(int m_max, ComplexVector amplitudes)
    : m_max_(m_max), amplitudes_(std::move(amplitudes)) {
    require(m_max >= 1, "m_max must be at least 1");
    require(static_cast<std::size_t>(amplitudes_.size()) == basis_dim(m_max),
            "amplitude vector does not match the basis dimension");
}

TruncatedState TruncatedState::fock(int m_max, BasisLabel label) {
    require(m_max >= 1, "m_max must be at least 1");
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(basis_dim(m_max)));
    v(static_cast<Eigen::Index>(basis_index(m_max, label))) = 1.0;
    return TruncatedState(m_max, std::move(v));
}

std::string to_string(SpectrumMethod method) {
    switch (method) {
        case SpectrumMethod::closed_form: return "closed-form";
        case SpectrumMethod::numeric: return "numeric";
        case SpectrumMethod::filter: return "filter";
        case SpectrumMethod::mc: return "mc";
    }
    return "unknown";
}

SpectrumMethod parse_method(const std::string& name) {
    if (name == "closed-form" || name == "closed_form") return SpectrumMethod::closed_form;
    if (name == "numeric") return SpectrumMethod::numeric;
    if (name == "filter") return SpectrumMethod::filter;
    if (name == "mc") return SpectrumMethod::mc;
    throw ValidationError("unknown method '" + name + "' (expected closed-form, numeric, filter or mc)");
}

void SpectrumCurve::check_invariants() const {
    for (std::size_t i = 0; i < samples.size(); ++i) {
        require(samples[i].value >= 0.0, "spectrum value is negative");
        if (i > 0) require(samples[i].delta > samples[i - 1].delta, "deltas must be strictly increasing");
    }
}

std::vector<double> SpectrumCurve::deltas() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.delta);
    return out;
}

std::vector<double> SpectrumCurve::values() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.value);
    return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    require(count >= 2, "grid needs at least two points");
    require(std::isfinite(lo) && std::isfinite(hi) && hi > lo, "grid bounds must satisfy lo < hi");
    std::vector<double> out(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

}  // namespace omspec
