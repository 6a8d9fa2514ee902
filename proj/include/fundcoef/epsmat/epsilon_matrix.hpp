#pragma once

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "fundcoef/charsums/gauss_sum.hpp"
#include "fundcoef/epsmat/cyc_rank.hpp"
#include "fundcoef/errors.hpp"
#include "fundcoef/exact/cyclotomic.hpp"
#include "fundcoef/numth/arith.hpp"

namespace fundcoef {

enum class EpsCase { lemma, odd, even };

inline std::string to_string(EpsCase c) {
    switch (c) {
        case EpsCase::lemma: return "lemma";
        case EpsCase::odd: return "odd";
        case EpsCase::even: return "even";
    }
    return "?";
}

inline EpsCase parse_eps_case(const std::string& s) {
    if (s == "lemma") return EpsCase::lemma;
    if (s == "odd") return EpsCase::odd;
    if (s == "even") return EpsCase::even;
    throw precondition_error("unknown case '" + s + "' (expected lemma, odd or even)");
}

/// (1/2) G(-Nm, 2(s-r)m, 4d).
inline CycNumber epsilon_entry_odd(long long m, long long n, long long d, long long s, long long r) {
    require(d >= 1, "epsilon_entry_odd: d must be positive");
    require(numth::gcd(m, 4 * d) == 1, "epsilon_entry_odd: gcd(m, 4d) must be 1");
    require(numth::gcd(n, 4 * d) == 1, "epsilon_entry_odd: gcd(N, 4d) must be 1");
    return gauss_sum(-n * m, 2 * (s - r) * m, 4 * d).scaled(make_rational(1, 2));
}

/// G(-N m2, 0, d) exp(-N m2 (s-r)^2 / d).
inline CycNumber epsilon_entry_even(long long m2, long long n, long long d, long long s, long long r) {
    require(d >= 1, "epsilon_entry_even: d must be positive");
    require(numth::gcd(m2, d) == 1, "epsilon_entry_even: gcd(m', d) must be 1");
    require(numth::gcd(n, d) == 1, "epsilon_entry_even: gcd(N, d) must be 1");
    const long long diff = numth::mod(s - r, d);
    const long long e = numth::mul_mod(numth::mod(-n * m2, d), numth::mul_mod(diff, diff, d), d);
    return gauss_sum(-n * m2, 0, d) * CycNumber::root_of_unity(e, d);
}

struct EpsilonMatrix {
    EpsCase kind = EpsCase::lemma;
    long long a = 1;   // a (lemma), m (odd), m' (even)
    long long n = 1;   // N, unused in the lemma case
    long long d = 1;
    long long s0 = 0;
    std::vector<long long> rows;
    std::vector<long long> cols;
    Matrix<CycNumber> entries;
    std::size_t expected_rank = 1;  // 2^t

    bool rows_at_least_cols() const { return rows.size() >= cols.size(); }
};

inline void check_odd_squarefree(long long d) {
    require(d >= 1 && d % 2 == 1 && numth::is_squarefree(d), "d must be a positive odd square-free integer");
}

/// #{primes p | d with p not dividing s0}.
inline int count_t(long long d, long long s0) {
    int t = 0;
    if (d == 1) return 0;
    for (long long p : numth::prime_divisors(d))
        if (numth::mod(s0, p) != 0) ++t;
    return t;
}

/// s in [0, modulus) with s^2 = s0^2 mod square_modulus, ascending.
inline std::vector<long long> square_class(long long s0, long long modulus, long long square_modulus) {
    std::vector<long long> out;
    const long long target = numth::mul_mod(s0, s0, square_modulus);
    for (long long s = 0; s < modulus; ++s)
        if (numth::mul_mod(s, s, square_modulus) == target) out.push_back(s);
    return out;
}

/// E_{a,d}(s0) = (exp(a(s-r)^2/d))_{r,s}, r in (Z/d)^x, s^2 = s0^2 mod d.
inline EpsilonMatrix build_E(long long a, long long d, long long s0) {
    check_odd_squarefree(d);
    require(numth::gcd(a, d) == 1, "build_E: gcd(a, d) must be 1");
    EpsilonMatrix e;
    e.kind = EpsCase::lemma;
    e.a = a;
    e.d = d;
    e.s0 = numth::mod(s0, d);
    e.rows = numth::units_mod(d);
    e.cols = square_class(e.s0, d, d);
    e.expected_rank = std::size_t(1) << count_t(d, e.s0);
    e.entries.assign(e.rows.size(), std::vector<CycNumber>(e.cols.size()));
    for (std::size_t i = 0; i < e.rows.size(); ++i)
        for (std::size_t j = 0; j < e.cols.size(); ++j) {
            long long diff = numth::mod(e.cols[j] - e.rows[i], d);
            e.entries[i][j] = CycNumber::root_of_unity(numth::mul_mod(numth::mod(a, d), numth::mul_mod(diff, diff, d), d), d);
        }
    return e;
}

/// Rows r in (Z/2d)^x, columns s mod 2d with s^2 = s0^2 mod 4d, entries epsilon_entry_odd.
inline EpsilonMatrix build_E_odd(long long m, long long n, long long d, long long s0) {
    check_odd_squarefree(d);
    EpsilonMatrix e;
    e.kind = EpsCase::odd;
    e.a = m;
    e.n = n;
    e.d = d;
    e.s0 = numth::mod(s0, 2 * d);
    e.rows = numth::units_mod(2 * d);
    e.cols = square_class(e.s0, 2 * d, 4 * d);
    e.expected_rank = std::size_t(1) << count_t(d, e.s0);
    e.entries.assign(e.rows.size(), std::vector<CycNumber>(e.cols.size()));
    for (std::size_t i = 0; i < e.rows.size(); ++i)
        for (std::size_t j = 0; j < e.cols.size(); ++j) e.entries[i][j] = epsilon_entry_odd(m, n, d, e.cols[j], e.rows[i]);
    return e;
}

/// Rows r in (Z/d)^x, columns s mod d with s^2 = s0^2 mod d, entries epsilon_entry_even.
inline EpsilonMatrix build_E_even(long long m2, long long n, long long d, long long s0) {
    check_odd_squarefree(d);
    EpsilonMatrix e;
    e.kind = EpsCase::even;
    e.a = m2;
    e.n = n;
    e.d = d;
    e.s0 = numth::mod(s0, d);
    e.rows = numth::units_mod(d);
    e.cols = square_class(e.s0, d, d);
    e.expected_rank = std::size_t(1) << count_t(d, e.s0);
    e.entries.assign(e.rows.size(), std::vector<CycNumber>(e.cols.size()));
    for (std::size_t i = 0; i < e.rows.size(); ++i)
        for (std::size_t j = 0; j < e.cols.size(); ++j) e.entries[i][j] = epsilon_entry_even(m2, n, d, e.cols[j], e.rows[i]);
    return e;
}

struct TensorSplitResult {
    bool holds = false;
    long long d_prime = 1;
    long long s0_prime = 0;
    long long s0_second = 0;
    // row_perm[i] = index of rows[i] of E_{a,d} in the Kronecker product ordering; same for columns.
    std::vector<std::size_t> row_perm;
    std::vector<std::size_t> col_perm;
    std::string reason;
};

/// Checks E_{a,d}(s0) = E_{a p, d'}(s0') (x) E_{a d', p}(s0'') under s = p s' + d' s'', r = p r' + d' r''.
inline TensorSplitResult tensor_split_check(long long a, long long d, long long s0, long long p) {
    check_odd_squarefree(d);
    require(numth::is_prime(p) && d % p == 0, "tensor_split_check: p must be a prime divisor of d");
    require(numth::gcd(a, d) == 1, "tensor_split_check: gcd(a, d) must be 1");
    TensorSplitResult out;
    const long long dp = d / p;
    out.d_prime = dp;
    // s0 = p s0' + d' s0''
    out.s0_prime = dp == 1 ? 0 : numth::mul_mod(numth::mod(s0, dp), numth::mod_inverse(p % dp, dp), dp);
    out.s0_second = numth::mul_mod(numth::mod(s0, p), numth::mod_inverse(dp % p, p), p);
    EpsilonMatrix big = build_E(a, d, s0);
    EpsilonMatrix left = build_E(a * p, dp, out.s0_prime);
    EpsilonMatrix right = build_E(a * dp, p, out.s0_second);

    auto split = [&](long long x, long long& x1, long long& x2) {
        x1 = dp == 1 ? 0 : numth::mul_mod(numth::mod(x, dp), numth::mod_inverse(p % dp, dp), dp);
        x2 = numth::mul_mod(numth::mod(x, p), numth::mod_inverse(dp % p, p), p);
        if (numth::mod(p * x1 + dp * x2 - x, d) != 0) throw invariant_error("tensor_split_check: CRT decomposition failed");
    };
    auto index_of = [](const std::vector<long long>& v, long long x) -> long long {
        auto it = std::find(v.begin(), v.end(), x);
        return it == v.end() ? -1 : it - v.begin();
    };
    auto map_indices = [&](const std::vector<long long>& src, const std::vector<long long>& l, const std::vector<long long>& r,
                           std::vector<std::size_t>& perm) {
        perm.clear();
        std::vector<bool> seen(l.size() * r.size(), false);
        for (long long x : src) {
            long long x1, x2;
            split(x, x1, x2);
            long long i1 = index_of(l, x1), i2 = index_of(r, x2);
            if (i1 < 0 || i2 < 0) return false;
            std::size_t k = static_cast<std::size_t>(i1) * r.size() + static_cast<std::size_t>(i2);
            if (seen[k]) return false;
            seen[k] = true;
            perm.push_back(k);
        }
        return perm.size() == l.size() * r.size();
    };
    if (!map_indices(big.rows, left.rows, right.rows, out.row_perm)) {
        out.reason = "row index sets do not correspond";
        return out;
    }
    if (!map_indices(big.cols, left.cols, right.cols, out.col_perm)) {
        out.reason = "column index sets do not correspond";
        return out;
    }
    for (std::size_t i = 0; i < big.rows.size(); ++i)
        for (std::size_t j = 0; j < big.cols.size(); ++j) {
            std::size_t i1 = out.row_perm[i] / right.rows.size(), i2 = out.row_perm[i] % right.rows.size();
            std::size_t j1 = out.col_perm[j] / right.cols.size(), j2 = out.col_perm[j] % right.cols.size();
            if (big.entries[i][j] != left.entries[i1][j1] * right.entries[i2][j2]) {
                out.reason = "entry mismatch at r=" + std::to_string(big.rows[i]) + " s=" + std::to_string(big.cols[j]);
                return out;
            }
        }
    out.holds = true;
    return out;
}

/// Kronecker product A (x) B with row index i1 * rows(B) + i2.
inline Matrix<CycNumber> kronecker_product(const Matrix<CycNumber>& a, const Matrix<CycNumber>& b) {
    if (a.empty() || b.empty()) return {};
    Matrix<CycNumber> out(a.size() * b.size(), std::vector<CycNumber>(a[0].size() * b[0].size()));
    for (std::size_t i1 = 0; i1 < a.size(); ++i1)
        for (std::size_t i2 = 0; i2 < b.size(); ++i2)
            for (std::size_t j1 = 0; j1 < a[0].size(); ++j1)
                for (std::size_t j2 = 0; j2 < b[0].size(); ++j2)
                    out[i1 * b.size() + i2][j1 * b[0].size() + j2] = a[i1][j1] * b[i2][j2];
    return out;
}

struct RankReport {
    EpsCase kind = EpsCase::lemma;
    long long a = 1, n = 1, d = 1, s0 = 0;
    std::size_t rows = 0, cols = 0;
    std::size_t rank = 0;
    std::size_t expected = 1;
    std::string method;
    bool rows_ge_cols = true;
    bool pass = false;
};

inline RankReport rank_report(const EpsilonMatrix& e, bool force_exact = false) {
    RankReport r;
    r.kind = e.kind;
    r.a = e.a;
    r.n = e.n;
    r.d = e.d;
    r.s0 = e.s0;
    r.rows = e.rows.size();
    r.cols = e.cols.size();
    r.expected = e.expected_rank;
    r.rows_ge_cols = e.rows_at_least_cols();
    if (force_exact) {
        r.rank = rank_exact(e.entries);
        r.method = "exact";
    } else {
        auto c = rank_certified(e.entries);
        r.rank = c.rank;
        r.method = c.method;
    }
    r.pass = r.rank == r.expected && r.cols == r.expected && r.rows_ge_cols;
    return r;
}

/// rank(E_{a,d}(s0)) = 2^t.
inline RankReport verify_rank_lemma(long long a, long long d, long long s0, bool force_exact = false) {
    return rank_report(build_E(a, d, s0), force_exact);
}

inline std::vector<long long> odd_squarefree_up_to(long long dmax) {
    std::vector<long long> ds;
    for (long long d = 1; d <= dmax; d += 2)
        if (numth::is_squarefree(d)) ds.push_back(d);
    return ds;
}

struct SweepTriple {
    long long d, a, s0;
};

/// All (d, a, s0) of a sweep in canonical order. lemma/even: a in (Z/d)^x, s0 mod d;
/// odd: a = m in (Z/4d)^x, s0 mod 2d. N = 1 throughout.
inline std::vector<SweepTriple> sweep_triples(long long dmax, EpsCase kind) {
    std::vector<SweepTriple> out;
    for (long long d : odd_squarefree_up_to(dmax)) {
        const long long amod = kind == EpsCase::odd ? 4 * d : d;
        const long long smod = kind == EpsCase::odd ? 2 * d : d;
        for (long long a : numth::units_mod(amod))
            for (long long s0 = 0; s0 < smod; ++s0) out.push_back({d, amod == 1 ? 1 : a, s0});
    }
    return out;
}

inline RankReport run_triple(const SweepTriple& t, EpsCase kind) {
    switch (kind) {
        case EpsCase::lemma: return rank_report(build_E(t.a, t.d, t.s0));
        case EpsCase::odd: return rank_report(build_E_odd(t.a, 1, t.d, t.s0));
        case EpsCase::even: return rank_report(build_E_even(t.a, 1, t.d, t.s0));
    }
    throw invariant_error("unreachable");
}

/// Exhaustive sweep over sweep_triples; results are in canonical order regardless of `jobs`.
inline std::vector<RankReport> rank_sweep(long long dmax, EpsCase kind, unsigned jobs = 1) {
    require(dmax >= 1, "rank_sweep: dmax must be at least 1");
    const auto triples = sweep_triples(dmax, kind);
    std::vector<RankReport> out(triples.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < triples.size(); i = next++) {
            try {
                out[i] = run_triple(triples[i], kind);
            } catch (const std::exception& ex) {
                out[i].kind = kind;
                out[i].d = triples[i].d;
                out[i].a = triples[i].a;
                out[i].s0 = triples[i].s0;
                out[i].method = std::string("error: ") + ex.what();
                out[i].pass = false;
            }
        }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace fundcoef
