#include "test_support.hpp"

using namespace numrad;
using namespace numrad::testing;

namespace {

UnitVector half_half() { return UnitVector({1.0, 1.0}); }

TEST(UnitVector, NormalizesOnConstruction) {
    Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Complex> v(random_dim(rng, 1, 8));
        for (auto& z : v) z = 1e3 * rng.complex_normal();
        const UnitVector x(v);
        EXPECT_NEAR(vector_norm(x.entries()), 1.0, 1e-12);
    }
    EXPECT_THROW(UnitVector(std::vector<Complex>(3)), Error);
}

TEST(Kato, IdentityIsTight) {
    const auto x = UnitVector::basis(3, 1);
    const auto c = kato(ComplexMatrix::identity(3), x, x, 0.3);
    EXPECT_NEAR(c.lhs, 1.0, 1e-14);
    EXPECT_NEAR(c.rhs, 1.0, 1e-14);
    EXPECT_NEAR(c.margin(), 0.0, 1e-14);
}

TEST(Kato, HalfWeightDiagonalForm) {
    Rng rng(62);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = random_dim(rng, 2, 6);
        const ComplexMatrix a = ginibre(n, rng);
        const auto x = UnitVector::random(rng, n);
        const PolarFactors f(a);
        const double expected = quadratic_form(f.abs(), x).real() * quadratic_form(f.abs_adjoint(), x).real();
        EXPECT_NEAR(kato(a, x, x, 0.5).rhs, expected, 1e-12 * std::max(1.0, expected));
    }
}

TEST(Kato, OrthogonalRangeGivesZero) {
    // A maps everything onto e₀; y = e₁ is orthogonal to the range.
    const ComplexMatrix a{{1, 2}, {0, 0}};
    const auto c = kato(a, UnitVector({1.0, 1.0}), UnitVector::basis(2, 1), 0.4);
    EXPECT_EQ(c.lhs, 0.0);
    EXPECT_GE(c.margin(), 0.0);
}

TEST(Kato, WeightOutOfWindow) {
    const auto x = UnitVector::basis(2, 0);
    EXPECT_THROW(kato(jordan2(), x, x, 0.0), Error);
}

TEST(McCarthy, UnitExponentIsTight) {
    EXPECT_NEAR(mccarthy(ComplexMatrix::diagonal({1, 4}), half_half(), 1.0).margin(), 0.0, 1e-14);
}

TEST(McCarthy, SquareExponent) {
    const auto c = mccarthy(ComplexMatrix::diagonal({1, 4}), half_half(), 2.0);
    EXPECT_NEAR(c.lhs, 6.25, 1e-13);
    EXPECT_NEAR(c.rhs, 8.5, 1e-13);
}

TEST(McCarthy, SquareRootExponentSwapsSides) {
    const auto c = mccarthy(ComplexMatrix::diagonal({1, 4}), half_half(), 0.5);
    EXPECT_NEAR(c.lhs, 1.5, 1e-13);
    EXPECT_NEAR(c.rhs, std::sqrt(2.5), 1e-13);
}

TEST(McCarthy, ZeroExponentRejected) {
    EXPECT_THROW(mccarthy(ComplexMatrix::diagonal({1, 4}), half_half(), 0.0), Error);
}

TEST(SchwarzCovariance, IdentityBothSidesVanish) {
    const auto c = schwarz_covariance(ComplexMatrix::identity(2), ComplexMatrix::identity(2), half_half());
    EXPECT_NEAR(c.general.lhs, 0.0, 1e-14);
    EXPECT_NEAR(c.general.rhs, 0.0, 1e-14);
}

TEST(SchwarzCovariance, NilpotentFirstBasisVector) {
    const auto c = schwarz_covariance(jordan2(), adjoint(jordan2()), UnitVector::basis(2, 0));
    EXPECT_EQ(c.general.lhs, 0.0);
    EXPECT_EQ(c.general.rhs, 0.0);
}

TEST(SchwarzCovariance, SelfProductMatchesDirectFormula) {
    Rng rng(63);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = random_dim(rng, 2, 6);
        const ComplexMatrix a = ginibre(n, rng);
        const auto x = UnitVector::random(rng, n);
        const Complex ax = quadratic_form(a, x);
        const Complex a2x = quadratic_form(a * a, x);
        const double lhs = std::norm(ax) + std::abs(a2x - ax * ax);
        const double rhs = std::sqrt(quadratic_form(adjoint(a) * a, x).real() *
                                     quadratic_form(a * adjoint(a), x).real());
        const auto c = schwarz_covariance(a, ginibre(n, rng), x);
        EXPECT_NEAR(c.self_product.lhs, lhs, 1e-10);
        EXPECT_NEAR(c.self_product.rhs, rhs, 1e-10);
        // general form with B* = A is the same inequality written differently
        const auto g = schwarz_covariance(a, adjoint(a), x).general;
        EXPECT_TRUE(g.holds(1e-9));
    }
}

TEST(CsRefinement, IdentityIsTight) {
    const auto c = cs_refinement(ComplexMatrix::identity(3), ComplexMatrix::identity(3), UnitVector::basis(3, 2));
    EXPECT_NEAR(c.lhs, 1.0, 1e-14);
    EXPECT_NEAR(c.rhs, 1.0, 1e-14);
}

TEST(CsRefinement, IdentitySecondOperand) {
    Rng rng(64);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = random_dim(rng, 2, 6);
        const ComplexMatrix a = ginibre(n, rng);
        const auto x = UnitVector::random(rng, n);
        const auto c = cs_refinement(a, ComplexMatrix::identity(n), x);
        const double q = std::abs(quadratic_form(a, x));
        EXPECT_NEAR(c.lhs, q, 1e-12);
        EXPECT_NEAR(c.rhs, 0.5 * (vector_norm(a * x.entries()) + q), 1e-12);
    }
}

TEST(CsRefinement, VanishingQuadraticForm) {
    const auto c = cs_refinement(jordan2(), ComplexMatrix::identity(2), UnitVector::basis(2, 0));
    EXPECT_EQ(c.lhs, 0.0);
    EXPECT_GE(c.margin(), 0.0);
}

TEST(Amer, IdentityQuadruple) {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const auto c = amer_bound(i2, i2, i2, i2);
    EXPECT_NEAR(c.lhs, 2.0, 1e-10);
    EXPECT_NEAR(c.rhs, 2.0, 1e-10);
}

TEST(Amer, VanishingSecondPair) {
    Rng rng(65);
    const ComplexMatrix a = ginibre(3, rng);
    const ComplexMatrix b = ginibre(3, rng);
    const ComplexMatrix z = ComplexMatrix::zero(3);
    const auto c = amer_bound(a, b, z, z);
    EXPECT_NEAR(c.rhs, numerical_radius(b * a), 1e-12);
    EXPECT_TRUE(c.holds(1e-5));
}

TEST(LogConvexity, PowerAtOneIsTight) {
    Rng rng(66);
    const auto p = PsdSpectrum::from_psd(random_psd(4, rng));
    const auto q = PsdSpectrum::from_psd(random_psd(4, rng));
    EXPECT_NEAR(log_convexity_power(p, q, 1.0).margin(), 0.0, 1e-10);
    EXPECT_THROW(log_convexity_power(p, q, 0.0), Error);
}

TEST(Properties, RandomSamplesHold) {
    Rng rng(67);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = random_dim(rng, 2, 6);
        const ComplexMatrix a = ginibre(n, rng);
        const ComplexMatrix b = ginibre(n, rng);
        const auto x = UnitVector::random(rng, n);
        const auto y = UnitVector::random(rng, n);
        const double t = rng.uniform(1e-3, 1.0 - 1e-3);
        EXPECT_TRUE(kato(a, x, y, t).holds(1e-9));
        const double r = rng.uniform(0.05, 4.0);
        EXPECT_TRUE(mccarthy(adjoint(a) * a, x, r).holds(1e-9)) << "r=" << r;
        const auto cov = schwarz_covariance(a, b, x);
        EXPECT_TRUE(cov.general.holds(1e-9));
        EXPECT_TRUE(cov.self_product.holds(1e-9));
        EXPECT_TRUE(cs_refinement(a, b, x).holds(1e-9));
        if (trial % 4 == 0) {
            EXPECT_TRUE(amer_bound(a, b, ginibre(n, rng), ginibre(n, rng)).holds(1e-5));
        }
        const auto p = PsdSpectrum::from_psd(random_psd(n, rng));
        const auto q = PsdSpectrum::from_psd(random_psd(n, rng));
        EXPECT_TRUE(log_convexity_power(p, q, t).holds(1e-9));
        const double s = rng.uniform(1e-3, 1.0), u = rng.uniform(1e-3, 1.0);
        EXPECT_TRUE(log_convexity_midpoint(p, q, std::min(s, u), std::max(s, u)).holds(1e-9));
    }
}

}  // namespace
