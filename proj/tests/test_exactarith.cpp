#include <gtest/gtest.h>

#include <random>

#include "fundcoef/exact/complex_approx.hpp"
#include "fundcoef/exact/cyclotomic.hpp"
#include "fundcoef/exact/rational.hpp"
#include "oracles.hpp"

using namespace fundcoef;

namespace {

CycNumber random_cyc(std::mt19937& rng, unsigned m) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::vector<Rational> powers(m);
    for (auto& c : powers) c = make_rational(coef(rng), 1 + std::abs(coef(rng)));
    return CycNumber::from_powers(m, powers);
}

}  // namespace

TEST(Rational, ParseAndFormat) {
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-4"), Rational(-4));
    EXPECT_EQ(to_fraction_string(Rational(3)), "3/1");
    EXPECT_EQ(to_fraction_string(make_rational(-2, 6)), "-1/3");
    EXPECT_THROW(parse_rational("1/0"), std::exception);
    EXPECT_THROW(parse_rational("x"), std::exception);
}

TEST(RootOfUnity, SpecExamples) {
    EXPECT_EQ(root_of_unity(0, 1), CycNumber(1));
    EXPECT_EQ(root_of_unity(1, 2), CycNumber(-1));
    CycNumber z3 = root_of_unity(1, 3);
    EXPECT_EQ(z3.order(), 3u);
    EXPECT_TRUE((CycNumber(1) + z3 + z3 * z3).is_zero());
}

TEST(RootOfUnity, OrderDividesDenominator) {
    EXPECT_EQ(root_of_unity(2, 6).order(), 3u);
    EXPECT_EQ(root_of_unity(-1, 4), root_of_unity(3, 4));
    EXPECT_EQ(root_of_unity(5, 4), root_of_unity(1, 4));
}

TEST(CycArithmetic, SpecExamples) {
    CycNumber i = root_of_unity(1, 4);
    EXPECT_EQ(i * i, CycNumber(-1));
    std::mt19937 rng(7);
    for (unsigned m : {3u, 5u, 12u, 15u}) {
        CycNumber x = random_cyc(rng, m);
        EXPECT_TRUE((x + (-x)).is_zero());
    }
    CycNumber a = CycNumber(1) + root_of_unity(1, 5);
    EXPECT_EQ(a.inv() * a, CycNumber(1));
}

TEST(CycArithmetic, InverseOfZeroThrows) { EXPECT_THROW(CycNumber(0).inv(), std::exception); }

TEST(CycArithmetic, MixedOrdersLiftToLcm) {
    CycNumber x = root_of_unity(1, 4) * root_of_unity(1, 3);
    EXPECT_EQ(x, root_of_unity(7, 12));
    EXPECT_EQ(x.order(), 12u);
}

TEST(CycArithmetic, RationalsAreStoredAtOrderOne) {
    CycNumber x = root_of_unity(1, 8) * root_of_unity(7, 8);
    EXPECT_TRUE(x.is_rational());
    EXPECT_EQ(x.order(), 1u);
    EXPECT_EQ(x, CycNumber(1));
}

TEST(CycArithmetic, CoefficientCountIsPhi) {
    for (unsigned m = 2; m <= 60; ++m) {
        CycNumber z = root_of_unity(1, m);
        EXPECT_EQ(z.coeffs().size(), static_cast<std::size_t>(numth::euler_phi(m))) << m;
    }
}

TEST(CycProperties, DistributivityAndStableCanonicalForm) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<unsigned> order(1, 60);
    for (int trial = 0; trial < 200; ++trial) {
        unsigned m1 = order(rng), m2 = order(rng), m3 = order(rng);
        if (numth::lcm(numth::lcm(m1, m2), m3) > 420) {
            --trial;
            continue;
        }
        CycNumber x = random_cyc(rng, m1), y = random_cyc(rng, m2), z = random_cyc(rng, m3);
        EXPECT_EQ((x + y) * z, x * z + y * z);
        // re-reduction of the canonical form is the identity
        std::vector<Rational> powers(x.coeffs().begin(), x.coeffs().end());
        EXPECT_EQ(CycNumber::from_powers(x.order(), powers), x);
    }
}

TEST(CycProperties, VanishingSumsOfRootsOfUnity) {
    for (long long c = 2; c <= 60; ++c) {
        CycNumber s = 0;
        for (long long t = 0; t < c; ++t) s += root_of_unity(t, c);
        EXPECT_TRUE(s.is_zero()) << c;
    }
}

TEST(CycProperties, FieldInverse) {
    std::mt19937 rng(3);
    for (unsigned m : {5u, 7u, 9u, 20u, 21u, 60u}) {
        CycNumber x = random_cyc(rng, m);
        if (x.is_zero()) continue;
        EXPECT_EQ(x * x.inv(), CycNumber(1)) << m;
    }
}

TEST(CycFormatting, ToString) {
    EXPECT_EQ((CycNumber(1) + CycNumber(2) * root_of_unity(1, 3)).to_string(), "1 + 2*z3");
    EXPECT_EQ((CycNumber(1) - root_of_unity(1, 4)).to_string(), "1 - z4");
    EXPECT_EQ(CycNumber(0).to_string(), "0");
}

TEST(Embed, SpecExamples) {
    ComplexApprox m1 = embed(CycNumber(-1));
    EXPECT_DOUBLE_EQ(m1.re, -1.0);
    EXPECT_DOUBLE_EQ(m1.im, 0.0);
    EXPECT_LT(m1.err_bound, 1e-15);

    ComplexApprox z3 = embed(root_of_unity(1, 3));
    const double two_pi = 2 * std::acos(-1.0);
    EXPECT_LE(std::abs(z3.value() - std::polar(1.0, two_pi / 3)), z3.err_bound + 1e-16);

    ComplexApprox g = embed(CycNumber(1) + CycNumber(2) * root_of_unity(1, 3));
    EXPECT_LE(std::abs(g.value() - oracle::gauss_sum(1, 0, 3)), g.err_bound + 4e-16);
    EXPECT_NEAR(g.im, std::sqrt(3.0), 1e-15);
}

TEST(Embed, RespectsMultiplication) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<unsigned> order(1, 40);
    for (int trial = 0; trial < 1000; ++trial) {
        CycNumber x = random_cyc(rng, order(rng)), y = random_cyc(rng, order(rng));
        ComplexApprox ex = embed(x), ey = embed(y), exy = embed(x * y);
        ComplexApprox prod = ex * ey;
        EXPECT_LE(std::abs(exy.value() - prod.value()), exy.err_bound + prod.err_bound);
    }
}

TEST(Embed, ErrorBoundHoldsAgainstDirectSummation) {
    std::mt19937 rng(9);
    const double two_pi = 2 * std::acos(-1.0);
    for (unsigned m : {7u, 24u, 35u, 60u}) {
        std::vector<Rational> powers(m);
        std::uniform_int_distribution<int> coef(-9, 9);
        for (auto& c : powers) c = coef(rng);
        CycNumber x = CycNumber::from_powers(m, powers);
        std::complex<long double> direct = 0;
        for (unsigned k = 0; k < m; ++k)
            direct += static_cast<long double>(powers[k].get_d()) *
                      std::polar(1.0L, static_cast<long double>(two_pi) * k / m);
        ComplexApprox e = embed(x);
        std::complex<double> d(static_cast<double>(direct.real()), static_cast<double>(direct.imag()));
        EXPECT_LE(std::abs(e.value() - d), e.err_bound + 1e-13) << m;
    }
}

TEST(PrincipalSqrt, SpecExamples) {
    ComplexApprox two = principal_sqrt(ComplexApprox::exact(4.0));
    EXPECT_DOUBLE_EQ(two.re, 2.0);
    EXPECT_THROW(principal_sqrt(ComplexApprox::exact(std::complex<double>(-1, 0))), branch_cut_error);
    ComplexApprox h = principal_sqrt(ComplexApprox::exact(std::complex<double>(0, 1)));
    const double s = std::sqrt(2.0) / 2;
    EXPECT_LE(std::abs(h.value() - std::complex<double>(s, s)), h.err_bound + 1e-16);
}

TEST(PrincipalSqrt, NearBranchCutWithinErrorThrows) {
    EXPECT_THROW(principal_sqrt(ComplexApprox::from({-1, 1e-12}, 1e-11)), branch_cut_error);
    EXPECT_NO_THROW(principal_sqrt(ComplexApprox::from({-1, 1e-6}, 1e-11)));
}

TEST(PrincipalSqrt, SquaresBackAndHasNonnegativeRealPart) {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 500; ++i) {
        std::complex<double> z(u(rng), u(rng));
        if (z.real() < 0 && std::abs(z.imag()) < 1e-3) continue;
        ComplexApprox w = principal_sqrt(ComplexApprox::exact(z));
        EXPECT_GE(w.re, 0.0);
        ComplexApprox sq = w * w;
        EXPECT_LE(std::abs(sq.value() - z), sq.err_bound + 1e-15);
    }
}
