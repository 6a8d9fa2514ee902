#pragma once

#include <vector>

#include "fundcoef/errors.hpp"
#include "fundcoef/exact/cyclotomic.hpp"
#include "fundcoef/numth/arith.hpp"

namespace fundcoef {

/// G(a, b, c) = sum over t mod c of zeta_c^(a t^2 + b t), by direct summation.
inline CycNumber gauss_sum(long long a, long long b, long long c) {
    require(c >= 1, "gauss_sum: c must be positive");
    std::vector<long long> counts(static_cast<std::size_t>(c), 0);
    const long long am = numth::mod(a, c), bm = numth::mod(b, c);
    for (long long t = 0; t < c; ++t) {
        long long e = numth::mod(numth::mul_mod(am, numth::mul_mod(t, t, c), c) + numth::mul_mod(bm, t, c), c);
        ++counts[static_cast<std::size_t>(e)];
    }
    return CycNumber::from_power_sum(static_cast<unsigned>(c), counts);
}

/// Both sides of an identity between exact values.
struct IdentityCheck {
    bool holds;
    CycNumber lhs;
    CycNumber rhs;
};

/// G(-pN, 2(mu-eta), 4p) against 0 when mu != eta mod p and p G(-N, 2(mu-eta)/p, 4) otherwise.
inline IdentityCheck gauss_factor_check(long long p, long long n, long long mu, long long eta) {
    require(p > 2 && numth::is_prime(p), "gauss_factor_check: p must be an odd prime");
    require(numth::gcd(n, 2 * p) == 1, "gauss_factor_check: gcd(N, 2p) must be 1");
    const long long diff = mu - eta;
    CycNumber lhs = gauss_sum(-p * n, 2 * diff, 4 * p);
    CycNumber rhs = (numth::mod(diff, p) == 0) ? CycNumber(p) * gauss_sum(-n, 2 * diff / p, 4) : CycNumber(0);
    return {lhs == rhs, lhs, rhs};
}

/// Closed form (1/2) G(-Nm, 0, 4d) zeta_{4d}^(m Nbar (s-r)^2), Nbar = N^-1 mod 4d.
inline CycNumber complete_square_rhs(long long m, long long n, long long d, long long s, long long r) {
    require(d >= 1, "complete_square: d must be positive");
    const long long q = 4 * d;
    require(numth::gcd(n, q) == 1, "complete_square: N must be invertible modulo 4d");
    require(numth::gcd(m, q) == 1, "complete_square: gcd(m, 4d) must be 1");
    const long long nbar = numth::mod_inverse(n, q);
    const long long diff = numth::mod(s - r, q);
    const long long e = numth::mul_mod(numth::mul_mod(m, nbar, q), numth::mul_mod(diff, diff, q), q);
    return gauss_sum(-n * m, 0, q).scaled(make_rational(1, 2)) * CycNumber::root_of_unity(e, q);
}

/// (1/2) G(-Nm, 2(s-r)m, 4d) against its completed-square closed form.
inline IdentityCheck complete_square_check(long long m, long long n, long long d, long long s, long long r) {
    CycNumber rhs = complete_square_rhs(m, n, d, s, r);
    CycNumber lhs = gauss_sum(-n * m, 2 * (s - r) * m, 4 * d).scaled(make_rational(1, 2));
    return {lhs == rhs, lhs, rhs};
}

}  // namespace fundcoef
