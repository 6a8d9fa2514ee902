#pragma once

#include <vector>

#include "fundcoef/errors.hpp"
#include "fundcoef/numth/arith.hpp"
#include "fundcoef/quadform/half_integral.hpp"

namespace fundcoef {

namespace detail {

struct BigSym {
    BigMatrix m;  // current U^t (2T) U
    BigMatrix u;  // accumulated transformation

    explicit BigSym(const IntMatrix& gram) : m(to_big(gram)), u(to_big(IntMatrix::identity(gram.rows()))) {}

    // col_dst += c * col_src, applied to U and as a congruence to M.
    void transvect(std::size_t dst, std::size_t src, const BigInt& c) {
        if (c == 0) return;
        const std::size_t n = m.size();
        for (std::size_t r = 0; r < n; ++r) u[r][dst] += c * u[r][src];
        for (std::size_t r = 0; r < n; ++r) m[r][dst] += c * m[r][src];
        for (std::size_t k = 0; k < n; ++k) m[dst][k] += c * m[src][k];
    }
};

inline bool is_unit_mod(const BigInt& x, long long p) { return mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p)) != 0; }

inline long long residue(const BigInt& x, long long q) {
    return static_cast<long long>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(q)));
}

inline long long ipow(long long p, int f) {
    long long q = 1;
    for (int i = 0; i < f; ++i) {
        if (__builtin_mul_overflow(q, p, &q)) throw precondition_error("p^f does not fit in 64 bits");
    }
    return q;
}

// Lift c mod pf to a coefficient that is also 0 mod done (1 allowed).
// The representative of least absolute value keeps the entries of U small.
inline BigInt lift(long long c, long long pf, const BigInt& done) {
    BigInt modulus = big(pf) * done;
    BigInt r = big(done == 1 ? numth::mod(c, pf) : numth::crt(numth::mod(c, pf), pf, 0, to_ll(done)));
    if (2 * r > modulus) r -= modulus;
    return r;
}

inline void normalize_one_prime(BigSym& s, long long p, int f, const BigInt& done) {
    const std::size_t n = s.m.size();
    const long long pf = ipow(p, f);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (!is_unit_mod(s.m[k][k], p)) {
            std::size_t unit_diag = n;
            for (std::size_t i = k + 1; i < n && unit_diag == n; ++i)
                if (is_unit_mod(s.m[i][i], p)) unit_diag = i;
            if (unit_diag == n) {
                std::size_t a = n, b = n;
                for (std::size_t i = k; i < n && a == n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j)
                        if (is_unit_mod(s.m[i][j], p)) {
                            a = i;
                            b = j;
                            break;
                        }
                if (a == n) throw precondition_error("local_normalize_odd: p^2 divides det(2T)");
                // All diagonal entries are divisible by p, so col_a += col_b makes M_aa = 2 M_ab (mod p), a unit.
                s.transvect(a, b, lift(1, pf, done));
                unit_diag = a;
            }
            if (unit_diag != k) {
                // M_kk + 2c M_ik + c^2 M_ii has at most one nonzero root c mod p, so c = 1 or c = 2 works.
                for (long long c : {1LL, 2LL}) {
                    BigInt cand = s.m[k][k] + big(2 * c) * s.m[unit_diag][k] + big(c * c) * s.m[unit_diag][unit_diag];
                    if (is_unit_mod(cand, p)) {
                        s.transvect(k, unit_diag, lift(c, pf, done));
                        break;
                    }
                }
            }
            if (!is_unit_mod(s.m[k][k], p)) throw invariant_error("local_normalize_odd: no unit pivot found");
        }
        long long inv = numth::mod_inverse(residue(s.m[k][k], pf), pf);
        for (std::size_t j = k + 1; j < n; ++j) {
            long long c = numth::mod(-numth::mul_mod(residue(s.m[k][j], pf), inv, pf), pf);
            s.transvect(j, k, lift(c, pf, done));
        }
    }
    const BigInt& last = s.m[n - 1][n - 1];
    if (!(residue(last, p) == 0 && is_unit_mod(BigInt(last / big(p)), p)))
        throw invariant_error("local_normalize_odd: last diagonal entry is not p times a unit");
}

inline UnimodularMatrix to_unimodular(const BigMatrix& u) {
    IntMatrix out(u.size(), u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (!u[i][j].fits_slong_p()) throw precondition_error("local normalization: entries of U exceed 64 bits");
            out(i, j) = u[i][j].get_si();
        }
    return UnimodularMatrix(std::move(out));
}

inline void check_single_p(const HalfIntegralMatrix& t, long long p, int f) {
    if (p == 2) throw precondition_error("local_normalize_odd: p = 2 is not supported");
    require(p > 2 && numth::is_prime(p), "local_normalize_odd: p must be an odd prime");
    require(f >= 2, "local_normalize_odd: f must be at least 2");
    BigInt det = det_gram(t);
    if (detail::residue(det, p) != 0) throw precondition_error("local_normalize_odd: p does not divide det(2T)");
    if (detail::residue(det, p * p) == 0) throw precondition_error("local_normalize_odd: p^2 divides det(2T)");
}

}  // namespace detail

/// True iff M = gram is congruent mod p^f to diag(u_1, ..., u_{n-1}, p u_n) with all u_i units.
inline bool is_locally_normalized(const IntMatrix& gram, long long p, int f) {
    const long long pf = detail::ipow(p, f);
    const std::size_t n = gram.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long long r = numth::mod(gram(i, j), pf);
            if (i != j && r != 0) return false;
            if (i == j && i + 1 < n && r % p == 0) return false;
            if (i == j && i + 1 == n && (r % p != 0 || (r / p) % p == 0)) return false;
        }
    return true;
}

/// U in SL_n(Z) with U^t (2T) U = diag(units..., p * unit) mod p^f. Built from transvections only.
inline UnimodularMatrix local_normalize_odd(const HalfIntegralMatrix& t, long long p, int f) {
    detail::check_single_p(t, p, f);
    detail::BigSym s(t.gram());
    detail::normalize_one_prime(s, p, f, BigInt(1));
    return detail::to_unimodular(s.u);
}

/// One U in SL_n(Z) normalizing 2T at every odd prime dividing det(2T) simultaneously.
/// The transvection coefficients used for a prime are 0 modulo p'^f for the primes p' handled before it,
/// so U^t (2T) U is unchanged modulo those p'^f.
inline UnimodularMatrix normalize_odd_primes(const HalfIntegralMatrix& t, int f) {
    BigInt det = det_gram(t);
    require(det != 0, "normalize_odd_primes: singular T");
    detail::BigSym s(t.gram());
    BigInt done = 1;
    for (long long p : numth::prime_divisors(to_ll(det))) {
        if (p == 2) continue;
        detail::check_single_p(t, p, f);
        detail::normalize_one_prime(s, p, f, done);
        done *= big(detail::ipow(p, f));
    }
    return detail::to_unimodular(s.u);
}

}  // namespace fundcoef
