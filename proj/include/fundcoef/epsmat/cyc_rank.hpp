#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fundcoef/exact/cyclotomic.hpp"
#include "fundcoef/exact/rational.hpp"
#include "fundcoef/numth/arith.hpp"

namespace fundcoef {

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
struct FieldOps;

template <>
struct FieldOps<Rational> {
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational inv(const Rational& x) { return Rational(1) / x; }
};

template <>
struct FieldOps<CycNumber> {
    static bool is_zero(const CycNumber& x) { return x.is_zero(); }
    static CycNumber inv(const CycNumber& x) { return x.inv(); }
};

/// Rank by Bareiss fraction-free elimination over a field; first nonzero entry of each column is the pivot.
/// Each step divides by the previous pivot, which is exact in the ring generated by the entries.
template <class T>
std::size_t rank_bareiss(Matrix<T> a) {
    using Ops = FieldOps<T>;
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a[0].size();
    std::size_t rank = 0;
    T prev_inv = T(1);
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && Ops::is_zero(a[piv][c])) ++piv;
        if (piv == rows) continue;
        std::swap(a[rank], a[piv]);
        const T pivot = a[rank][c];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const T factor = a[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (pivot * a[i][j] - factor * a[rank][j]) * prev_inv;
            a[i][c] = T(0);
        }
        prev_inv = Ops::inv(pivot);
        ++rank;
    }
    return rank;
}

inline std::size_t rank_exact(const Matrix<CycNumber>& m) { return rank_bareiss(m); }

namespace detail {

// A prime P = 1 mod order together with an element of exact multiplicative order `order`.
struct ModularField {
    std::uint64_t prime;
    std::uint64_t root;  // primitive order-th root of unity mod prime
    unsigned order;
};

inline ModularField find_modular_field(unsigned order, unsigned skip) {
    const std::uint64_t start = (std::uint64_t(1) << 30) / order + 1;
    auto qs = numth::prime_divisors(std::max(order, 2u));
    for (std::uint64_t k = start;; ++k) {
        std::uint64_t p = k * order + 1;
        if (!numth::is_prime_u64(p)) continue;
        if (skip > 0) {
            --skip;
            continue;
        }
        for (long long h = 2;; ++h) {
            long long w = numth::pow_mod(h, (p - 1) / order, static_cast<long long>(p));
            bool exact = true;
            if (order > 1)
                for (long long q : qs)
                    if (order % q == 0 && numth::pow_mod(w, order / static_cast<unsigned>(q), static_cast<long long>(p)) == 1)
                        exact = false;
            if (exact) return {p, static_cast<std::uint64_t>(w), order};
        }
    }
}

// Image of x under zeta_order -> root, or nullopt when a denominator vanishes mod p.
inline std::optional<std::uint64_t> reduce_mod(const CycNumber& x, const ModularField& f) {
    const long long p = static_cast<long long>(f.prime);
    const unsigned m = x.order();
    if (f.order % m != 0) throw precondition_error("reduce_mod: entry order does not divide field order");
    const long long w = numth::pow_mod(static_cast<long long>(f.root), f.order / m, p);
    long long acc = 0, wk = 1;
    for (const auto& c : x.coeffs()) {
        if (c != 0) {
            long long num = static_cast<long long>(mpz_fdiv_ui(c.get_num_mpz_t(), f.prime));
            long long den = static_cast<long long>(mpz_fdiv_ui(c.get_den_mpz_t(), f.prime));
            if (den == 0) return std::nullopt;
            acc = numth::mod(acc + numth::mul_mod(numth::mul_mod(num, numth::mod_inverse(den, p), p), wk, p), p);
        }
        wk = numth::mul_mod(wk, w, p);
    }
    return static_cast<std::uint64_t>(acc);
}

inline std::size_t rank_mod_prime(Matrix<std::uint64_t> a, std::uint64_t prime) {
    const long long p = static_cast<long long>(prime);
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[rank], a[piv]);
        long long inv = numth::mod_inverse(static_cast<long long>(a[rank][c]), p);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            long long factor = numth::mul_mod(static_cast<long long>(a[i][c]), inv, p);
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] = static_cast<std::uint64_t>(
                    numth::mod(static_cast<long long>(a[i][j]) - numth::mul_mod(factor, static_cast<long long>(a[rank][j]), p), p));
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Rank of the image of M under one reduction Z[zeta] -> F_P; a lower bound for the exact rank.
inline std::optional<std::size_t> rank_modular(const Matrix<CycNumber>& m, unsigned skip_primes = 0) {
    if (m.empty() || m[0].empty()) return 0;
    unsigned order = 1;
    for (const auto& row : m)
        for (const auto& x : row) order = static_cast<unsigned>(numth::lcm(order, x.order()));
    auto field = detail::find_modular_field(order, skip_primes);
    Matrix<std::uint64_t> img(m.size(), std::vector<std::uint64_t>(m[0].size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            auto v = detail::reduce_mod(m[i][j], field);
            if (!v) return std::nullopt;
            img[i][j] = *v;
        }
    return detail::rank_mod_prime(std::move(img), field.prime);
}

struct CertifiedRank {
    std::size_t rank;
    std::string method;  // "modular" (lower bound meets min(rows, cols)) or "exact"
};

/// Exact rank. A modular rank equal to min(rows, cols) is a proof of that rank; otherwise falls back to rank_exact.
inline CertifiedRank rank_certified(const Matrix<CycNumber>& m) {
    if (m.empty() || m[0].empty()) return {0, "exact"};
    const std::size_t full = std::min(m.size(), m[0].size());
    for (unsigned attempt = 0; attempt < 2; ++attempt) {
        auto r = rank_modular(m, attempt);
        if (r && *r == full) return {full, "modular"};
    }
    return {rank_exact(m), "exact"};
}

}  // namespace fundcoef
