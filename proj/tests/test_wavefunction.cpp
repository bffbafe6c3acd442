#include <gtest/gtest.h>

#include <cmath>

#include "kpgm/errors.hpp"
#include "kpgm/oracles.hpp"
#include "kpgm/validation.hpp"
#include "kpgm/wavefunction.hpp"
#include "test_common.hpp"

using namespace kpgm;
using kpgm::test::null_spec;
using kpgm::test::reference_spec;

TEST(NormalizationConstant, SmallIntegerGammas) {
    EXPECT_NEAR(normalization_constant(0, 0.5, 0.5, 0.5), 0.5, 1e-15);
}

TEST(NormalizationConstant, LogSpaceMatchesDirect) {
    const double direct = std::sqrt(2.0 * 0.3 * std::tgamma(4.0) * std::tgamma(2.4 + 4.8 + 3.0) *
                                    std::tgamma(2.4 + 4.8 + 6.0) /
                                    (std::pow(2.0, 2.4 + 4.8) * std::tgamma(2.4 + 3.0) * std::tgamma(4.8 + 4.0)));
    EXPECT_LE(kpgm::test::rel_diff(normalization_constant(3, 1.2, 2.4, 0.3), direct), 1e-12);
}

TEST(NormalizationConstant, OverflowAndDomain) {
    EXPECT_THROW(normalization_constant(2, 400.0, 300.0, 1.0), OverflowError);
    EXPECT_NO_THROW(log_normalization_constant(2, 400.0, 300.0, 1.0));
    EXPECT_THROW(normalization_constant(-1, 1.0, 1.0, 1.0), DomainError);
    EXPECT_THROW(normalization_constant(0, 1.0, 1.0, 0.0), DomainError);
}

TEST(NormalizationConstant, ReferenceFirstExcitedVsQuadrature) {
    // finding: the closed constant is far from the quadrature constant
    const RadialState s({1, 0}, reference_spec());
    EXPECT_NEAR(s.gamma(), 10.940623613631624, 1e-11);
    EXPECT_NEAR(norm_constant_ratio(s) / 2.4873509409631219e21, 1.0, 1e-9);
}

TEST(Wavefunction, BoundaryBehaviour) {
    for (int n = 0; n <= 3; ++n) {
        const RadialState s({n, 0}, reference_spec());
        EXPECT_LT(std::abs(s(60.0 / s.alpha())), 1e-8);
        EXPECT_LT(std::abs(s(1e-6 / s.alpha())), 1e-6);
    }
}

TEST(Wavefunction, ReferenceGroundAtUnitRadius) {
    const RadialState s({0, 0}, reference_spec());
    EXPECT_NEAR(s(1.0), 0.21620650671349032, 1e-10);
    EXPECT_NEAR(RadialState({1, 0}, reference_spec())(1.0), -0.46361683510693455, 1e-10);
}

TEST(Wavefunction, RejectsNonPositiveRadius) {
    const RadialState s({0, 0}, reference_spec());
    EXPECT_THROW(s(0.0), DomainError);
}

TEST(Wavefunction, NuEnergySourceRequiresBoundLevel) {
    EXPECT_NO_THROW(RadialState({1, 0}, reference_spec(), NormMode::Quadrature, EnergySource::NuCondition));
    EXPECT_THROW(RadialState({2, 0}, reference_spec(), NormMode::Quadrature, EnergySource::NuCondition), DomainError);
}

TEST(Density, NonNegativeOnFineGrid) {
    const RadialState s({2, 0}, reference_spec());
    for (int i = 1; i <= 1000; ++i) EXPECT_GE(s.density(i * 0.04), 0.0);
}

TEST(Density, NodeCountsEqualN) {
    for (int n = 0; n <= 4; ++n) {
        EXPECT_EQ(count_nodes(RadialState({n, 0}, null_spec())), n);
        EXPECT_EQ(count_nodes(RadialState({n, 0}, reference_spec())), n);
    }
}

TEST(Density, IntegratesToOne) {
    const RadialState s({0, 0}, reference_spec());
    const double total = quad_adaptive([&](double r) { return r > 0.0 ? s.density(r) : 0.0; }, 0.0, INFINITY, 1e-12);
    EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(NumericNorm, NormConstantRatiosForNullCoupling) {
    const double expected[] = {0.40824829046386302, 2.2360679774997897, 26.457513110645906, 539.49976830393542};
    for (int n = 0; n <= 3; ++n) {
        EXPECT_LE(kpgm::test::rel_diff(norm_constant_ratio(RadialState({n, 0}, null_spec())), expected[n]), 1e-9);
    }
}

TEST(NumericNorm, LinearInShapeScale) {
    const RadialState s({1, 0}, reference_spec());
    const double q = quad_adaptive(
        [&](double r) {
            if (r <= 0.0) return 0.0;
            const double v = 7.0 * s.shape(r);
            return v * v;
        },
        0.0, INFINITY, 1e-12);
    EXPECT_LE(kpgm::test::rel_diff(std::sqrt(q), 7.0 * s.quadrature_norm()), 1e-9);
    EXPECT_LE(kpgm::test::rel_diff(numeric_norm({1, 0}, reference_spec()), s.quadrature_norm()), 1e-15);
}

TEST(NumericNorm, StiffStateStaysFinite) {
    MoleculeSpec s;
    s.mu = 1605.6;
    s.De = 0.0924;
    s.re = 3.015;
    s.D = 0.01;
    s.b = 0.5;
    s.alpha = 0.5;
    const RadialState st({1, 0}, s);
    EXPECT_TRUE(std::isfinite(st.log_norm()));
    auto rho = [&](double r) { return r > 0.0 ? st.density(r) : 0.0; };
    const double knee = st.peak() + 10.0 / st.alpha();
    const double total = quad_adaptive(rho, 0.0, st.peak(), 1e-9) + quad_adaptive(rho, st.peak(), knee, 1e-9) +
                         quad_adaptive(rho, knee, INFINITY, 1e-9);
    EXPECT_NEAR(total, 1.0, 1e-8);
}

TEST(SampleStates, Cardinality) {
    std::vector<double> grid;
    for (int i = 1; i <= 500; ++i) grid.push_back(0.05 * i);
    EXPECT_TRUE(sample_states(grid, {}, reference_spec()).empty());
    std::vector<QuantumNumbers> states{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    const auto rows = sample_states(grid, states, reference_spec());
    ASSERT_EQ(rows.size(), 2000u);
    EXPECT_EQ(rows[500].n, 1);
    EXPECT_EQ(rows[500].r, grid[0]);
}

TEST(SampleStates, ThreadCountDoesNotChangeOutput) {
    const auto grid = default_figure_grid(0.4);
    std::vector<QuantumNumbers> states{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    const auto a = sample_states(grid, states, reference_spec(), NormMode::Quadrature, EnergySource::Printed, 1);
    const auto b = sample_states(grid, states, reference_spec(), NormMode::Quadrature, EnergySource::Printed, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].psi, b[i].psi);
}

TEST(SampleStates, RejectsUnsortedGrid) {
    EXPECT_THROW(sample_states({1.0, 0.5}, {{0, 0}}, reference_spec()), DomainError);
}

TEST(FigureGrid, Shape) {
    const auto g = default_figure_grid(0.5);
    ASSERT_EQ(g.size(), 600u);
    EXPECT_NEAR(g.front(), 0.02, 1e-15);
    EXPECT_NEAR(g[99], 2.0, 1e-15);
    EXPECT_NEAR(g.back(), 30.0, 1e-13);
}
