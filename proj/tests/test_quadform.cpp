#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fundcoef/quadform/half_integral.hpp"
#include "fundcoef/quadform/local_normalize.hpp"
#include "oracles.hpp"

using namespace fundcoef;

namespace {

std::vector<std::vector<long long>> rows_of(const IntMatrix& m) {
    std::vector<std::vector<long long>> out(m.rows(), std::vector<long long>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    return out;
}

// Random positive definite gram matrices of size n with small entries.
HalfIntegralMatrix random_pd(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<long long> off(-2, 2), diag(1, 4);
    while (true) {
        IntMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            g(i, i) = 2 * diag(rng);
            for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
        }
        auto t = HalfIntegralMatrix::from_gram(g);
        if (t.is_positive_definite()) return t;
    }
}

// U^t G U mod p^f is diag(units, p * unit), computed directly with big integers.
bool congruence_holds(const IntMatrix& gram, const IntMatrix& u, long long p, int f) {
    BigInt pf = 1;
    for (int i = 0; i < f; ++i) pf *= static_cast<long>(p);
    const std::size_t n = gram.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            BigInt s = 0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    s += BigInt(static_cast<long>(u(a, i))) * static_cast<long>(gram(a, b)) * static_cast<long>(u(b, j));
            BigInt r = s % pf;
            if (r < 0) r += pf;
            const BigInt bp = static_cast<long>(p);
            if (i != j && r != 0) return false;
            if (i == j && i + 1 < n && r % bp == 0) return false;
            if (i == j && i + 1 == n && (r % bp != 0 || (r / bp) % bp == 0)) return false;
        }
    return true;
}

}  // namespace

TEST(HalfIntegral, Validation) {
    EXPECT_THROW(HalfIntegralMatrix::from_gram({{1, 0}, {0, 2}}), precondition_error);
    EXPECT_THROW(HalfIntegralMatrix::from_gram({{2, 1}, {0, 2}}), precondition_error);
    EXPECT_NO_THROW(HalfIntegralMatrix::from_gram({{2, 1}, {1, 2}}));
}

TEST(Content, SpecExamples) {
    EXPECT_EQ(content(HalfIntegralMatrix::from_gram({{2, 0}, {0, 2}})), 1);
    EXPECT_EQ(content(HalfIntegralMatrix::from_gram({{4, 0}, {0, 4}})), 2);
    EXPECT_EQ(content(HalfIntegralMatrix::from_gram({{2, 1}, {1, 2}})), 1);
    EXPECT_THROW(content(HalfIntegralMatrix::from_gram({{0, 0}, {0, 0}})), precondition_error);
}

TEST(Content, ScalesLinearly) {
    std::mt19937 rng(1);
    for (int i = 0; i < 50; ++i) {
        auto t = random_pd(rng, 1 + i % 3);
        for (long long c : {1, 2, 3}) EXPECT_EQ(content(t.scaled(c)), c * content(t));
    }
}

TEST(Discriminant, SpecExamples) {
    EXPECT_EQ(discriminant(HalfIntegralMatrix::from_gram({{2, 0}, {0, 2}})), 4);
    EXPECT_EQ(discriminant(HalfIntegralMatrix::from_gram({{2, 1}, {1, 2}})), 3);
    EXPECT_EQ(discriminant(HalfIntegralMatrix::from_gram({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}})), 4);
}

TEST(Discriminant, InvariantUnderUnimodularChange) {
    std::mt19937 rng(4);
    std::uniform_int_distribution<long long> e(-3, 3);
    for (int i = 0; i < 100; ++i) {
        auto t = random_pd(rng, 2 + i % 2);
        const std::size_t n = t.n();
        IntMatrix u = IntMatrix::identity(n);
        // product of random transvections
        for (int k = 0; k < 4; ++k) {
            std::size_t a = rng() % n, b = rng() % n;
            if (a == b) continue;
            IntMatrix step = IntMatrix::identity(n);
            step(a, b) = e(rng);
            u = u * step;
        }
        EXPECT_EQ(discriminant(transform(t, UnimodularMatrix(u))), discriminant(t));
    }
}

TEST(Fundamental, SpecExamples) {
    EXPECT_TRUE(is_fundamental(HalfIntegralMatrix::from_gram({{2, 1}, {1, 2}})));
    EXPECT_FALSE(is_fundamental(HalfIntegralMatrix::from_gram({{2, 0}, {0, 2}})));
    EXPECT_TRUE(is_fundamental(HalfIntegralMatrix::from_gram({{2, 1}, {1, 8}})));
}

TEST(Fundamental, ImpliesPrimitiveForSizeAtLeastTwo) {
    std::mt19937 rng(8);
    int seen = 0;
    for (int i = 0; i < 600; ++i) {
        auto t = random_pd(rng, 2 + i % 2);
        if (is_fundamental(t)) {
            ++seen;
            EXPECT_EQ(content(t), 1) << t.to_string();
        }
    }
    EXPECT_GT(seen, 0);
}

TEST(Fundamental, ScalarIndexNeedNotBePrimitive) {
    // d_T = t for 1x1, so every odd square-free t is fundamental
    auto t = HalfIntegralMatrix::scalar(3);
    EXPECT_TRUE(is_fundamental(t));
    EXPECT_EQ(content(t), 3);
    EXPECT_EQ(content(HalfIntegralMatrix::scalar(1)), 1);
}

TEST(Evaluate, SpecExamples) {
    EXPECT_EQ(evaluate(HalfIntegralMatrix::from_gram({{2, 0}, {0, 2}}), {1, 0}), Rational(1));
    EXPECT_EQ(evaluate(HalfIntegralMatrix::from_gram({{2, 1}, {1, 2}}), {1, 1}), Rational(3));
    EXPECT_EQ(evaluate(HalfIntegralMatrix::from_gram({{2, 1}, {1, 8}}), {0, 0}), Rational(0));
    EXPECT_THROW(evaluate(HalfIntegralMatrix::scalar(1), {1, 2}), precondition_error);
}

TEST(BlockSplit, SpecExamples) {
    auto b = block_split(HalfIntegralMatrix::from_gram({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
    EXPECT_EQ(b.t, 1);
    EXPECT_EQ(b.r, (IntVector{0, 0}));
    EXPECT_EQ(b.sub, HalfIntegralMatrix::from_gram({{2, 0}, {0, 2}}));
    auto c = block_split(HalfIntegralMatrix::from_gram({{2, 1}, {1, 2}}));
    EXPECT_EQ(c.t, 1);
    EXPECT_EQ(c.r, (IntVector{1}));
    EXPECT_EQ(c.sub, HalfIntegralMatrix::scalar(1));
    EXPECT_THROW(block_split(HalfIntegralMatrix::scalar(2)), precondition_error);
}

TEST(BlockSplit, RoundTrip) {
    std::mt19937 rng(6);
    for (int i = 0; i < 100; ++i) {
        auto t = random_pd(rng, 2 + i % 3);
        EXPECT_EQ(assemble(block_split(t)), t);
    }
}

TEST(Cosets, SpecExamples) {
    EXPECT_EQ(cosets(HalfIntegralMatrix::scalar(1)), (std::vector<IntVector>{{0}, {1}}));
    auto c5 = cosets(HalfIntegralMatrix::scalar(5));
    ASSERT_EQ(c5.size(), 10u);
    for (long long i = 0; i < 10; ++i) EXPECT_EQ(c5[i], IntVector{i});
    EXPECT_EQ(cosets(HalfIntegralMatrix::from_gram({{2, 1}, {1, 2}})).size(), 3u);
    EXPECT_THROW(cosets(HalfIntegralMatrix::from_gram({{2, 2}, {2, 2}})), precondition_error);
}

TEST(Cosets, CountAndInequivalenceAgainstSmithForm) {
    std::mt19937 rng(12);
    for (int i = 0; i < 60; ++i) {
        auto t = random_pd(rng, 1 + i % 3);
        auto reps = cosets(t);
        auto d = oracle::smith_diagonal(rows_of(t.gram()));
        long long order = 1;
        for (long long x : d) order *= x;
        ASSERT_EQ(static_cast<long long>(reps.size()), order) << t.to_string();
        for (std::size_t a = 0; a < reps.size(); ++a)
            for (std::size_t b = a + 1; b < reps.size(); ++b)
                ASSERT_FALSE(oracle::same_coset(rows_of(t.gram()), reps[a], reps[b])) << t.to_string();
    }
}

TEST(Cosets, ReductionLandsOnARepresentative) {
    std::mt19937 rng(13);
    std::uniform_int_distribution<long long> x(-40, 40);
    for (int i = 0; i < 30; ++i) {
        auto t = random_pd(rng, 1 + i % 3);
        auto reps = cosets(t);
        std::set<IntVector> rs(reps.begin(), reps.end());
        for (int k = 0; k < 20; ++k) {
            IntVector v(t.n());
            for (auto& e : v) e = x(rng);
            IntVector red = reduce_mod_2T(t, v);
            EXPECT_TRUE(rs.count(red));
            EXPECT_TRUE(oracle::same_coset(rows_of(t.gram()), red, v));
        }
    }
}

TEST(LocalNormalize, SpecExamples) {
    auto t1 = HalfIntegralMatrix::from_gram({{2, 1}, {1, 2}});
    auto u1 = local_normalize_odd(t1, 3, 3);
    EXPECT_EQ(u1.det(), 1);
    EXPECT_TRUE(congruence_holds(t1.gram(), u1.entries(), 3, 3));

    auto t2 = HalfIntegralMatrix::from_gram({{2, 0}, {0, 6}});
    EXPECT_EQ(local_normalize_odd(t2, 3, 2).entries(), IntMatrix::identity(2));

    auto t3 = HalfIntegralMatrix::from_gram({{2, 1}, {1, 8}});
    auto u3 = local_normalize_odd(t3, 5, 2);
    EXPECT_TRUE(congruence_holds(t3.gram(), u3.entries(), 5, 2));
}

TEST(LocalNormalize, Errors) {
    auto t = HalfIntegralMatrix::from_gram({{2, 1}, {1, 2}});
    EXPECT_THROW(local_normalize_odd(t, 2, 2), precondition_error);
    EXPECT_THROW(local_normalize_odd(HalfIntegralMatrix::from_gram({{2, 0}, {0, 18}}), 3, 2), precondition_error);
    EXPECT_THROW(local_normalize_odd(t, 5, 2), precondition_error);
}

TEST(LocalNormalize, RandomForms) {
    std::mt19937 rng(17);
    int checked = 0;
    while (checked < 80) {
        auto t = random_pd(rng, 2 + checked % 3);
        const long long det = to_ll(det_gram(t));
        bool any = false;
        for (long long p : numth::prime_divisors(det)) {
            if (p == 2 || det % (p * p) == 0) continue;
            any = true;
            for (int f : {2, 3}) {
                auto u = local_normalize_odd(t, p, f);
                EXPECT_EQ(u.det(), 1);
                EXPECT_TRUE(congruence_holds(t.gram(), u.entries(), p, f)) << t.to_string() << " p=" << p;
            }
        }
        if (any) ++checked;
    }
}

TEST(LocalNormalize, AllOddPrimesSimultaneously) {
    std::mt19937 rng(19);
    int checked = 0;
    while (checked < 40) {
        auto t = random_pd(rng, 2 + checked % 2);
        const long long det = to_ll(det_gram(t));
        std::vector<long long> odd;
        bool ok = true;
        for (long long p : numth::prime_divisors(det)) {
            if (p == 2) continue;
            if (det % (p * p) == 0) ok = false;
            odd.push_back(p);
        }
        if (!ok || odd.size() < 2) continue;
        auto u = normalize_odd_primes(t, 2);
        EXPECT_EQ(u.det(), 1);
        for (long long p : odd) EXPECT_TRUE(congruence_holds(t.gram(), u.entries(), p, 2)) << t.to_string() << " p=" << p;
        ++checked;
    }
}

TEST(MuDenominator, SpecExamples) {
    for (long long p : {3, 5, 7}) {
        auto t = HalfIntegralMatrix::scalar(p);
        EXPECT_EQ(mu_denominator(t, {1}), 4 * p);
        EXPECT_TRUE(is_primitive_mu(t, {1}));
        EXPECT_EQ(mu_denominator(t, {0}), 1);
        EXPECT_FALSE(is_primitive_mu(t, {0}));
    }
    auto t = HalfIntegralMatrix::from_gram({{2, 1}, {1, 2}});
    long long best = 0;
    for (const auto& mu : cosets(t)) best = std::max(best, mu_denominator(t, mu));
    EXPECT_EQ(best, 3);
}

TEST(MuDenominator, MaximumAttainedForFundamentalForms) {
    // every fundamental T of size <= 3 with d_T <= 100 among small grams
    std::set<HalfIntegralMatrix> seen;
    auto check = [&](const HalfIntegralMatrix& t) {
        if (!t.is_positive_definite() || !seen.insert(t).second) return;
        long long d = discriminant(t);
        if (d > 100 || !is_fundamental(t)) return;
        long long best = 0;
        for (const auto& mu : cosets(t)) best = std::max(best, mu_denominator(t, mu));
        EXPECT_EQ(best, max_mu_denominator(t)) << t.to_string();
    };
    for (long long a = 1; a <= 50; ++a) check(HalfIntegralMatrix::scalar(a));
    for (long long a = 1; a <= 6; ++a)
        for (long long b = -a; b <= a; ++b)
            for (long long c = a; c <= 30; ++c) check(HalfIntegralMatrix::from_gram({{2 * a, b}, {b, 2 * c}}));
    for (long long a = 1; a <= 2; ++a)
        for (long long c = a; c <= 3; ++c)
            for (long long f = c; f <= 5; ++f)
                for (long long b = -1; b <= 1; ++b)
                    for (long long e = -1; e <= 1; ++e)
                        for (long long g = -1; g <= 1; ++g)
                            check(HalfIntegralMatrix::from_gram({{2 * a, b, e}, {b, 2 * c, g}, {e, g, 2 * f}}));
}
