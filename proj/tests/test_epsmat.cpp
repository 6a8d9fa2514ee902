#include <gtest/gtest.h>

#include "fundcoef/charsums/gauss_sum.hpp"
#include "fundcoef/exact/complex_approx.hpp"
#include "fundcoef/epsmat/cyc_rank.hpp"
#include "fundcoef/epsmat/epsilon_matrix.hpp"
#include "oracles.hpp"

using namespace fundcoef;

namespace {

std::vector<std::vector<oracle::cd>> to_complex(const Matrix<CycNumber>& m) {
    std::vector<std::vector<oracle::cd>> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& x : m[i]) out[i].push_back(embed(x).value());
    return out;
}

Matrix<CycNumber> identity(std::size_t k) {
    Matrix<CycNumber> m(k, std::vector<CycNumber>(k, CycNumber(0)));
    for (std::size_t i = 0; i < k; ++i) m[i][i] = CycNumber(1);
    return m;
}

long long phi_product(long long n) {
    long long r = 1;
    for (long long p : numth::prime_divisors(n)) r *= p - 1;
    return r;
}

}  // namespace

TEST(EntryOdd, SpecExamples) {
    EXPECT_EQ(epsilon_entry_odd(1, 1, 1, 0, 0), CycNumber(1) - root_of_unity(1, 4));
    EXPECT_EQ(epsilon_entry_odd(3, 1, 5, 2, 7), epsilon_entry_odd(3, 1, 5, 0, 5));
    EXPECT_THROW(epsilon_entry_odd(2, 1, 3, 0, 0), precondition_error);
    EXPECT_THROW(epsilon_entry_odd(1, 3, 3, 0, 0), precondition_error);
}

TEST(EntryOdd, MatchesClosedForm) {
    std::mt19937 rng(31);
    std::uniform_int_distribution<long long> pick(-30, 30);
    int done = 0;
    while (done < 100) {
        long long d = std::vector<long long>{1, 3, 5, 7, 15, 21}[rng() % 6], m = pick(rng), n = pick(rng);
        if (numth::gcd(m, 4 * d) != 1 || numth::gcd(n, 4 * d) != 1) continue;
        long long s = pick(rng), r = pick(rng);
        EXPECT_EQ(epsilon_entry_odd(m, n, d, s, r), complete_square_rhs(m, n, d, s, r));
        ++done;
    }
}

TEST(EntryEven, SpecExamples) {
    EXPECT_EQ(epsilon_entry_even(1, 1, 1, 4, 9), CycNumber(1));
    EXPECT_EQ(epsilon_entry_even(1, 1, 3, 1, 1), gauss_sum(-1, 0, 3));
    // gcd(N, d) = gcd(5, 15) = 5
    EXPECT_THROW(epsilon_entry_even(2, 5, 15, 4, 2), precondition_error);
    ComplexApprox e = embed(epsilon_entry_even(2, 7, 15, 4, 2));
    EXPECT_NEAR(std::abs(e.value()), std::sqrt(15.0), 1e-10);
}

TEST(BuildE, SpecExamples) {
    auto e1 = build_E(1, 1, 0);
    ASSERT_EQ(e1.entries.size(), 1u);
    EXPECT_EQ(e1.entries[0][0], CycNumber(1));

    auto e5 = build_E(1, 5, 0);
    EXPECT_EQ(e5.rows, (std::vector<long long>{1, 2, 3, 4}));
    EXPECT_EQ(e5.cols, (std::vector<long long>{0}));
    for (const auto& row : e5.entries) EXPECT_FALSE(row[0].is_zero());

    auto e51 = build_E(1, 5, 1);
    EXPECT_EQ(e51.rows.size(), 4u);
    EXPECT_EQ(e51.cols, (std::vector<long long>{1, 4}));
    EXPECT_EQ(e51.entries[1][0], root_of_unity(1, 5));  // r = 2, s = 1

    EXPECT_THROW(build_E(3, 15, 0), precondition_error);
    EXPECT_THROW(build_E(1, 9, 0), precondition_error);
    EXPECT_THROW(build_E(1, 6, 0), precondition_error);
}

TEST(RankExact, SpecExamples) {
    Matrix<CycNumber> zero(3, std::vector<CycNumber>(2, CycNumber(0)));
    EXPECT_EQ(rank_exact(zero), 0u);
    for (std::size_t k : {1u, 2u, 5u}) EXPECT_EQ(rank_exact(identity(k)), k);
    // 2x2 minor with r != r' mod 7
    Matrix<CycNumber> minor = {{root_of_unity(1, 7), root_of_unity(1 * 9 % 7, 7)},
                               {root_of_unity(4, 7), root_of_unity(4 * 9 % 7, 7)}};
    EXPECT_EQ(rank_exact(minor), 2u);
}

TEST(RankExact, DependentRows) {
    CycNumber z = root_of_unity(1, 5);
    CycNumber z2 = z * z, z4 = z2 * z2;
    // third row = first + second; the first two are independent Vandermonde rows
    Matrix<CycNumber> m = {{CycNumber(1), z, z2}, {CycNumber(1), z2, z4}, {CycNumber(2), z + z2, z2 + z4}};
    EXPECT_EQ(rank_exact(m), 2u);
    EXPECT_EQ(rank_certified(m).rank, 2u);
}

TEST(VerifyRankLemma, SpecExamples) {
    auto a = verify_rank_lemma(1, 1, 0);
    EXPECT_TRUE(a.pass);
    EXPECT_EQ(a.rank, 1u);
    auto b = verify_rank_lemma(1, 7, 2);
    EXPECT_TRUE(b.pass);
    EXPECT_EQ(b.rank, 2u);
    auto c = verify_rank_lemma(1, 15, 1);
    EXPECT_TRUE(c.pass);
    EXPECT_EQ(c.rank, 4u);
    EXPECT_EQ(c.expected, 4u);
}

TEST(RankCertificate, ModularAgreesWithExactAndNumeric) {
    for (long long d : {1, 3, 5, 7, 15, 21})
        for (long long a : numth::units_mod(d))
            for (long long s0 = 0; s0 < d; ++s0) {
                auto e = build_E(d == 1 ? 1 : a, d, s0);
                auto exact = rank_report(e, true);
                auto fast = rank_report(e);
                EXPECT_EQ(exact.rank, fast.rank) << d << " " << a << " " << s0;
                EXPECT_EQ(oracle::numeric_rank(to_complex(e.entries)), exact.rank) << d << " " << a << " " << s0;
            }
}

TEST(Counts, RowsColumnsAndMagnitudes) {
    for (long long d : odd_squarefree_up_to(35))
        for (long long s0 = 0; s0 < d; ++s0) {
            auto e = build_E(1, d, s0);
            EXPECT_EQ(static_cast<long long>(e.rows.size()), numth::euler_phi(d));
            EXPECT_EQ(e.cols.size(), e.expected_rank);
            EXPECT_TRUE(e.rows_at_least_cols());
            for (const auto& row : e.entries)
                for (const auto& x : row) EXPECT_NEAR(std::abs(embed(x).value()), 1.0, 1e-10);
        }
    for (long long d : {1, 3, 5, 15, 21}) {
        auto e = build_E_odd(1, 1, d, 1);
        EXPECT_EQ(static_cast<long long>(e.rows.size()), phi_product(2 * d));
    }
}

TEST(TensorSplit, SpecExamples) {
    EXPECT_TRUE(tensor_split_check(1, 15, 1, 5).holds);
    EXPECT_TRUE(tensor_split_check(1, 15, 0, 3).holds);
    auto t = tensor_split_check(2, 105, 4, 7);
    EXPECT_TRUE(t.holds) << t.reason;
    EXPECT_EQ(t.d_prime, 15);
    EXPECT_THROW(tensor_split_check(1, 15, 0, 7), precondition_error);
}

TEST(TensorSplit, PermutationIsABijection) {
    auto t = tensor_split_check(1, 21, 2, 3);
    ASSERT_TRUE(t.holds);
    std::vector<std::size_t> rows = t.row_perm;
    std::sort(rows.begin(), rows.end());
    for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i], i);
}

TEST(TensorRank, ProductFormula) {
    for (long long d : {15, 21, 35})
        for (long long p : numth::prime_divisors(d))
            for (long long s0 : {0LL, 1LL, 3LL, 5LL}) {
                auto t = tensor_split_check(1, d, s0, p);
                auto left = build_E(p, d / p, t.s0_prime);
                auto right = build_E(d / p, p, t.s0_second);
                auto k = kronecker_product(left.entries, right.entries);
                EXPECT_EQ(rank_exact(k), rank_exact(left.entries) * rank_exact(right.entries));
            }
}

TEST(RankSweep, SmallRangeAllCases) {
    for (EpsCase kind : {EpsCase::lemma, EpsCase::odd, EpsCase::even}) {
        auto reports = rank_sweep(15, kind, 2);
        ASSERT_FALSE(reports.empty());
        for (const auto& r : reports)
            EXPECT_TRUE(r.pass) << to_string(kind) << " d=" << r.d << " a=" << r.a << " s0=" << r.s0 << " " << r.method;
    }
}

TEST(RankSweep, TripleCountsAndOrder) {
    auto triples = sweep_triples(7, EpsCase::lemma);
    // d = 1, 3, 5, 7: 1 + 2*3 + 4*5 + 6*7
    EXPECT_EQ(triples.size(), 69u);
    auto serial = rank_sweep(7, EpsCase::lemma, 1);
    auto parallel = rank_sweep(7, EpsCase::lemma, 4);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_EQ(serial[i].d, parallel[i].d);
        EXPECT_EQ(serial[i].a, parallel[i].a);
        EXPECT_EQ(serial[i].s0, parallel[i].s0);
    }
}
