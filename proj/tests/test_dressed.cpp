#include "omspec/dressed.hpp"
#include "omspec/hilbert.hpp"
#include "omspec/spectra.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace omspec;

namespace {

const SystemParams kStandard{1.0, 1.25, 0.25};

SpectrumCurve closed_form_curve(const SystemParams& p, const std::vector<double>& deltas) {
    SpectrumCurve c;
    for (double d : deltas) c.samples.push_back({d, closed_form_lossless(p, {d, 0.1})});
    return c;
}

}  // namespace

TEST_CASE("one-phonon dressed energies and mixing") {
    const auto d = dressed_decomposition(kStandard, 1);
    // (omega -+ sqrt(omega^2 + 4 g^2)) / 2
    CHECK(d.eigenvalues[0] == doctest::Approx(-0.846291201783626).epsilon(1e-12));
    CHECK(d.eigenvalues[1] == doctest::Approx(1.846291201783626).epsilon(1e-12));
    CHECK(d.eigenvalues[2] == 0.0);
    CHECK(d.eigenvalues[3] == 1.0);
    CHECK((d.eigenvectors.adjoint() * d.eigenvectors - ComplexMatrix::Identity(4, 4)).norm() < 1e-13);

    const auto mix = one_phonon_mixing(kStandard);
    CHECK(mix.n1 == doctest::Approx(0.56063).epsilon(1e-4));
    CHECK(mix.n2 == doctest::Approx(0.82807).epsilon(1e-4));
    CHECK(mix.n1 * mix.n1 + mix.n2 * mix.n2 == doctest::Approx(1.0).epsilon(1e-14));
    // Lower state N2|1,0> + N1|1,1>, upper state -N1|1,0> + N2|1,1> up to phase.
    CHECK(std::abs(std::abs(d.eigenvectors(0, 0)) - mix.n2) < 1e-12);
    CHECK(std::abs(std::abs(d.eigenvectors(1, 0)) - mix.n1) < 1e-12);
    CHECK(std::abs(std::abs(d.eigenvectors(0, 1)) - mix.n1) < 1e-12);
    CHECK((d.eigenvectors(0, 1) * std::conj(d.eigenvectors(1, 1))).real() < 0.0);
}

TEST_CASE("dressed states diagonalize H") {
    for (int m_max : {1, 2, 4}) {
        const auto d = dressed_decomposition(kStandard, m_max);
        const ComplexMatrix h = build_hamiltonian(kStandard, m_max).entries;
        const Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(d.eigenvalues.data(), d.eigenvalues.size());
        CHECK((h * d.eigenvectors - d.eigenvectors * e.asDiagonal()).norm() < 1e-12);
        for (std::size_t k = 0; k < d.excited_count(); ++k) CHECK(d.labels[k] == BasisLabel{1, int(k)});
    }
}

TEST_CASE("named one-phonon transitions") {
    const auto t = transition_frequencies(dressed_decomposition(kStandard, 1));
    REQUIRE(t.size() == 4);
    auto find = [&](const std::string& name) {
        return *std::find_if(t.begin(), t.end(), [&](const Transition& x) { return x.name == name; });
    };
    CHECK(find("I").delta == doctest::Approx(1.846291201783626));
    CHECK(find("II").delta == doctest::Approx(0.846291201783626));
    CHECK(find("III").delta == doctest::Approx(-0.846291201783626));
    CHECK(find("IV").delta == doctest::Approx(-1.846291201783626));
    CHECK(find("II").final == BasisLabel{0, 1});
    CHECK(find("III").final == BasisLabel{0, 0});

    const auto w = transition_weights(dressed_decomposition(kStandard, 1), 0);
    const auto mix = one_phonon_mixing(kStandard);
    // Lower -> |0,0>: N2^2 N2^2; upper -> |0,1>: N1^2 N2^2.
    CHECK(w[0] == doctest::Approx(std::pow(mix.n2, 4)));
    CHECK(w[3] == doctest::Approx(std::pow(mix.n1 * mix.n2, 2)));
    CHECK_THROWS_AS(transition_weights(dressed_decomposition(kStandard, 1), 2), ValidationError);
}

TEST_CASE("poles coincide with transitions as kappa -> 0") {
    const SystemParams p{1.0, 1.25, 1e-9};
    auto poles = resonance_positions_poles(p);
    std::vector<double> trans;
    for (const auto& t : transition_frequencies(dressed_decomposition(p, 1))) trans.push_back(t.delta);
    std::sort(trans.begin(), trans.end());
    for (std::size_t i = 0; i < 4; ++i) CHECK(poles[i] == doctest::Approx(trans[i]).epsilon(1e-9));
    const auto standard = resonance_positions_poles(kStandard);
    CHECK(std::is_sorted(standard.begin(), standard.end()));
}

TEST_CASE("two-phonon transitions") {
    const auto d = dressed_decomposition(kStandard, 2);
    CHECK(transition_frequencies(d).size() == 9);
    CHECK(transition_frequencies(d)[0].name.empty());
    CHECK(d.eigenvalues[0] == doctest::Approx(-1.2334).epsilon(1e-3));
    CHECK(d.eigenvalues[1] == doctest::Approx(0.7215).epsilon(1e-3));
    CHECK(d.eigenvalues[2] == doctest::Approx(3.5119).epsilon(1e-3));
}

TEST_CASE("compact peak positions") {
    CHECK(compact_peak_position(kStandard, 0) == doctest::Approx(1.5625));
    CHECK(compact_peak_position(kStandard, 1) == doctest::Approx(0.5625));
    CHECK_THROWS_AS(compact_peak_position(kStandard, -1), ValidationError);
}

TEST_CASE("find_peaks on a sampled Lorentzian") {
    SpectrumCurve c;
    for (double x : linspace(-3.0, 3.0, 301)) c.samples.push_back({x, 1.0 / (1.0 + std::pow((x - 0.317) / 0.2, 2))});
    const auto peaks = find_peaks(c);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks.peaks[0].delta == doctest::Approx(0.317).epsilon(2e-3));
    CHECK(peaks.peaks[0].height == doctest::Approx(1.0).epsilon(2e-3));
    REQUIRE(peaks.peaks[0].fwhm);
    CHECK(*peaks.peaks[0].fwhm == doctest::Approx(0.4).epsilon(2e-3));

    SpectrumCurve empty;
    CHECK_THROWS_AS(find_peaks(empty), ValidationError);
}

TEST_CASE("peak count across the cavity decay rate") {
    const auto deltas = linspace(-3.0, 3.0, 401);
    const auto resolved = find_peaks(closed_form_curve({1.0, 1.25, 0.1}, deltas));
    CHECK(resolved.size() == 4);
    const auto bad = find_peaks(closed_form_curve({1.0, 1.25, 2.0}, deltas));
    CHECK(bad.size() <= 2);
}

TEST_CASE("peak labels and refinement") {
    const auto deltas = linspace(-3.0, 3.0, 401);
    auto peaks = find_peaks(closed_form_curve(kStandard, deltas));
    label_peaks(peaks, transition_frequencies(dressed_decomposition(kStandard, 1)), 0.05);
    std::vector<std::string> names;
    for (const auto& p : peaks.peaks) names.push_back(p.label);
    CHECK(names == std::vector<std::string>{"IV", "III", "II", "I"});

    const double x = refine_maximum([](double t) { return -std::pow(t - 0.123, 2); }, -1.0, 1.0);
    CHECK(x == doctest::Approx(0.123).epsilon(1e-8));
    CHECK_THROWS_AS(refine_maximum([](double) { return 0.0; }, 1.0, 1.0), ValidationError);
}
