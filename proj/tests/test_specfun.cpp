#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kpgm/errors.hpp"
#include "kpgm/oracles.hpp"
#include "kpgm/specfun.hpp"
#include "test_common.hpp"

using namespace kpgm;

TEST(LnGamma, SmallIntegers) {
    EXPECT_EQ(ln_gamma(1.0), 0.0);
    EXPECT_NEAR(ln_gamma(5.0), std::log(24.0), 1e-15);
}

TEST(LnGamma, NonIntegerValue) {
    EXPECT_NEAR(ln_gamma(3.7), 1.4280723266653879, 2e-15);
    EXPECT_NEAR(ln_gamma(3.7), ln_gamma_oracle(3.7), 2e-15);
}

TEST(LnGamma, RecursionIdentity) {
    auto gen = kpgm::test::rng(3);
    std::uniform_real_distribution<double> u(-3.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double x = std::pow(10.0, u(gen));
        const double lhs = ln_gamma(x + 1.0) - ln_gamma(x) - std::log(x);
        EXPECT_LE(std::abs(lhs), 1e-13 * std::max(1.0, std::abs(ln_gamma(x + 1.0))));
    }
}

TEST(LnGamma, RejectsNonPositive) {
    EXPECT_THROW(ln_gamma(0.0), DomainError);
    EXPECT_THROW(ln_gamma(-2.5), DomainError);
}

TEST(Jacobi, DegreeZeroIsOne) {
    for (double x : {-1.0, 0.2, 3.0}) EXPECT_EQ(jacobi(0, 0.4, 2.0, x), 1.0);
}

TEST(Jacobi, DegreeOneUnitParameters) { EXPECT_DOUBLE_EQ(jacobi(1, 1.0, 1.0, 0.5), 1.0); }

TEST(Jacobi, FrozenValue) {
    EXPECT_NEAR(jacobi(4, 0.3, 1.7, -0.2), -0.3636625, 1e-15);
    EXPECT_NEAR(jacobi(4, 0.3, 1.7, -0.2), jacobi_sum_oracle(4, 0.3, 1.7, -0.2), 1e-14);
}

TEST(Jacobi, RandomDrawsAgainstSumOracle) {
    auto gen = kpgm::test::rng(5);
    std::uniform_real_distribution<double> par(-0.9, 6.0);
    std::uniform_real_distribution<double> xs(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const int n = static_cast<int>(gen() % 13);
        const double a = par(gen), b = par(gen), x = xs(gen);
        double scale = 0.0;
        for (int k = 0; k <= 40; ++k) scale = std::max(scale, std::abs(jacobi_sum_oracle(n, a, b, -1.0 + k / 20.0)));
        EXPECT_LE(std::abs(jacobi(n, a, b, x) - jacobi_sum_oracle(n, a, b, x)), 1e-12 * scale);
    }
}

TEST(Jacobi, RejectsBadParameters) {
    EXPECT_THROW(jacobi(-1, 0.0, 0.0, 0.0), DomainError);
    EXPECT_THROW(jacobi(2, -1.0, 0.0, 0.0), DomainError);
}

TEST(Erf, RealTrivialValues) {
    EXPECT_EQ(erf_real(0.0), 0.0);
    EXPECT_EQ(erfc_real(0.0), 1.0);
    EXPECT_NEAR(erf_real(1.0), 0.84270079294971487, 1e-16);
}

TEST(Erf, QuadratureCrossCheck) {
    const double q = quad_adaptive([](double t) { return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-t * t); },
                                   0.0, 1.0, 1e-12);
    EXPECT_NEAR(q, erf_real(1.0), 1e-14);
}

TEST(Faddeeva, AtZero) {
    const Complex w = faddeeva({0.0, 0.0});
    EXPECT_EQ(w.real(), 1.0);
    EXPECT_EQ(w.imag(), 0.0);
}

TEST(Faddeeva, SeriesOracleOnRandomDisk) {
    auto gen = kpgm::test::rng(17);
    std::uniform_real_distribution<double> radius(0.0, 3.0), phase(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < 200; ++i) {
        const Complex z = std::polar(radius(gen), phase(gen));
        const Complex ref = faddeeva_series_oracle(z);
        EXPECT_LE(std::abs(faddeeva(z) - ref), 1e-10 * std::abs(ref)) << z;
    }
}

TEST(Faddeeva, ContinuedFractionRegionMatchesAsymptotics) {
    // w(z) ~ i / (sqrt(pi) z) (1 + 1/(2 z^2)) for large |z| in the upper half plane
    const Complex z{30.0, 40.0};
    const Complex approx = Complex(0.0, 1.0) / (std::sqrt(std::numbers::pi) * z) *
                           (1.0 + 1.0 / (2.0 * z * z) + 3.0 / (4.0 * z * z * z * z));
    EXPECT_LE(std::abs(faddeeva(z) - approx), 1e-9 * std::abs(approx));
}

TEST(Faddeeva, LowerHalfPlaneOverflowThrows) { EXPECT_THROW(faddeeva({0.0, -40.0}), OverflowError); }

TEST(ErfComplex, MatchesRealAxis) {
    for (double x : {0.5, 1.0, 2.0}) {
        const Complex e = erf_complex({x, 0.0});
        EXPECT_LE(std::abs(e.real() - erf_real(x)), 1e-13);
        EXPECT_EQ(e.imag(), 0.0);
    }
}

TEST(ErfComplex, ImaginaryUnit) {
    const Complex e = erf_complex({0.0, 1.0});
    EXPECT_NEAR(e.real(), 0.0, 1e-15);
    EXPECT_NEAR(e.imag(), 1.6504257587975429, 1e-15);
    EXPECT_LE(std::abs(e - erf_series_oracle({0.0, 1.0})), 1e-15);
}

TEST(ErfComplex, OddSymmetryAndComplement) {
    auto gen = kpgm::test::rng(23);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const Complex z{u(gen), u(gen)};
        EXPECT_LE(std::abs(erf_complex(-z) + erf_complex(z)), 1e-15 * std::max(1.0, std::abs(erf_complex(z))));
        EXPECT_LE(std::abs(erfc_complex(z) - (1.0 - erf_complex(z))), 1e-13 * std::max(1.0, std::abs(erf_complex(z))));
    }
}

TEST(ExpScaledErfc, MatchesDirectProduct) {
    const Complex c{-3.0, 0.5}, z{0.7, -0.4};
    EXPECT_LE(std::abs(exp_scaled_erfc(c, z) - std::exp(c) * erfc_complex(z)), 1e-14);
    EXPECT_LE(std::abs(exp_scaled_erfc(c, -z) - std::exp(c) * erfc_complex(-z)), 1e-14);
}

TEST(ExpScaledErfc, HugeCancellingExponent) {
    // e^{z^2} erfc(z) for z = 30 is about 1/(sqrt(pi) 30)
    const Complex z{30.0, 0.0};
    const Complex v = exp_scaled_erfc(z * z, z);
    EXPECT_NEAR(v.real(), faddeeva({0.0, 30.0}).real(), 1e-16);
}
