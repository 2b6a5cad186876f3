#include "omspec/core.hpp"

#include <doctest.h>

using namespace omspec;

TEST_CASE("normalize_params rescales to omega_m = 1") {
    const SystemParams p{2.0, 2.5, 0.5};
    const auto n = normalize_params(p);
    CHECK(n.omega_m == 1.0);
    CHECK(n.g_m == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(n.kappa == doctest::Approx(0.25).epsilon(1e-15));

    const auto b = normalize_bath({0.2, 0.8}, 2.0);
    CHECK(b.gamma_m == doctest::Approx(0.1));
    CHECK(b.m_bar == 0.8);
    CHECK(normalize_filter({-1.0, 0.2}, 2.0).gamma_filter == doctest::Approx(0.1));
    CHECK(normalize_filter({-1.0, 0.2}, 2.0).delta == doctest::Approx(-0.5));
}

TEST_CASE("normalize_params is idempotent and scale invariant") {
    const SystemParams p{0.7, 0.3, 1.9};
    const auto once = normalize_params(p);
    const auto twice = normalize_params(once);
    CHECK(twice.g_m == once.g_m);
    CHECK(twice.kappa == once.kappa);
    for (double scale : {1e-3, 0.5, 7.0, 1e4}) {
        const auto s = normalize_params({p.omega_m * scale, p.g_m * scale, p.kappa * scale});
        CHECK(std::abs(s.g_m - once.g_m) < 1e-12 * once.g_m);
        CHECK(std::abs(s.kappa - once.kappa) < 1e-12 * once.kappa);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SystemParams({0.0, 1.0, 1.0}).validate(), ValidationError);
    CHECK_THROWS_AS(SystemParams({1.0, -0.1, 1.0}).validate(), ValidationError);
    CHECK_THROWS_AS(SystemParams({1.0, 1.0, 0.0}).validate(), ValidationError);
    CHECK_THROWS_AS(SystemParams({1.0, std::nan(""), 1.0}).validate(), ValidationError);
    CHECK_THROWS_AS(BathParams({-1.0, 0.0}).validate(), ValidationError);
    CHECK_THROWS_AS(BathParams({0.1, -0.5}).validate(), ValidationError);
    CHECK_THROWS_AS(FilterParams({0.0, 0.0}).validate(), ValidationError);
    CHECK_NOTHROW(SystemParams({1.0, 0.0, 0.25}).validate());
    CHECK(BathParams{}.lossless());
}

TEST_CASE("basis ordering") {
    CHECK(basis_dim(2) == 6);
    CHECK(basis_index(2, {1, 0}) == 0);
    CHECK(basis_index(2, {1, 2}) == 2);
    CHECK(basis_index(2, {0, 0}) == 3);
    CHECK(basis_index(2, {0, 2}) == 5);
    for (std::size_t i = 0; i < basis_dim(3); ++i) CHECK(basis_index(3, basis_label(3, i)) == i);
    CHECK_THROWS_AS(basis_index(1, {1, 2}), ValidationError);
    CHECK_THROWS_AS(basis_index(1, {2, 0}), ValidationError);
    CHECK(to_string(BasisLabel{0, 1}) == "|0,1>");
}

TEST_CASE("truncated state accessors") {
    auto s = TruncatedState::fock(1, {1, 1});
    CHECK(s.amplitude({1, 1}) == Complex(1.0, 0.0));
    CHECK(s.photon_population() == 1.0);
    CHECK(s.photon_empty().squaredNorm() == 0.0);
    CHECK_THROWS_AS(TruncatedState(1, ComplexVector::Zero(3)), ValidationError);
}

TEST_CASE("method names round trip") {
    for (auto m : {SpectrumMethod::closed_form, SpectrumMethod::numeric, SpectrumMethod::filter, SpectrumMethod::mc})
        CHECK(parse_method(to_string(m)) == m);
    CHECK_THROWS_AS(parse_method("fourier"), ValidationError);
}

TEST_CASE("curve invariants") {
    SpectrumCurve c;
    c.samples = {{-1.0, 0.1}, {0.0, 0.2}, {1.0, 0.0}};
    CHECK_NOTHROW(c.check_invariants());
    c.samples[2].value = -1e-3;
    CHECK_THROWS_AS(c.check_invariants(), ValidationError);
    c.samples[2] = {0.0, 0.1};
    CHECK_THROWS_AS(c.check_invariants(), ValidationError);
}

TEST_CASE("linspace") {
    const auto x = linspace(-1.0, 1.0, 5);
    REQUIRE(x.size() == 5);
    CHECK(x.front() == -1.0);
    CHECK(x.back() == 1.0);
    CHECK(x[2] == doctest::Approx(0.0));
    CHECK_THROWS_AS(linspace(0.0, 1.0, 1), ValidationError);
}
