#pragma once

#include <string>
#include <vector>

#include "fundcoef/jacobi/qexpansion.hpp"
#include "fundcoef/numth/arith.hpp"

namespace fundcoef {

namespace detail {
inline void require_sieve_prime(long long p, const char* op) {
    if (!numth::is_prime(p)) throw precondition_error(std::string(op) + ": " + std::to_string(p) + " is not prime");
}
}  // namespace detail

/// Sub-series on exponents coprime to p; level times p^2.
inline QSeries sieve_coprime(const QSeries& f, long long p) {
    detail::require_sieve_prime(p, "sieve_coprime");
    if (!f.has_integer_exponents()) throw precondition_error("sieve_coprime: expansion has a nonzero offset");
    QMeta meta = f.meta();
    if (__builtin_mul_overflow(meta.level, p * p, &meta.level)) throw precondition_error("sieve_coprime: level overflow");
    QSeries out(f.bound(), 0, meta);
    for (const auto& [n, c] : f.coeffs())
        if (n % p != 0) out.set(n, c);
    return out;
}

/// f(tau/p); level divided by p, character times eps_p.
inline QSeries rescale_down(const QSeries& f, long long p) {
    detail::require_sieve_prime(p, "rescale_down");
    if (!f.has_integer_exponents()) throw precondition_error("rescale_down: expansion has a nonzero offset");
    if (f.meta().level % p != 0)
        throw precondition_error("rescale_down: p = " + std::to_string(p) + " does not divide level " +
                                 std::to_string(f.meta().level));
    QMeta meta = f.meta();
    meta.level /= p;
    meta.character.times("eps:" + std::to_string(p), 1, 2);
    QSeries out((f.bound() + p - 1) / p, 0, meta);
    for (const auto& [n, c] : f.coeffs()) {
        if (n % p != 0)
            throw precondition_error("rescale_down: exponent " + std::to_string(n) + " is not divisible by " + std::to_string(p));
        out.set(n / p, c);
    }
    return out;
}

struct SieveStep {
    long long p = 0;
    std::string branch;  // "sieve", "rescale" or "error"
    long long level = 0;
    std::string character;
    long long ell = 1;  // cumulative rescaling factor after this step
    std::string error;
};

struct SieveChainResult {
    QSeries result;
    std::vector<SieveStep> steps;
    long long ell = 1;
    bool ok() const {
        for (const auto& s : steps)
            if (s.branch == "error") return false;
        return true;
    }
};

/// Per prime: rescale when f is nonzero with every exponent divisible by p, otherwise sieve.
/// A failing step is recorded and ends the chain.
inline SieveChainResult sieve_chain(const QSeries& f, const std::vector<long long>& primes) {
    if (!f.has_integer_exponents()) throw precondition_error("sieve_chain: expansion has a nonzero offset");
    SieveChainResult res{f, {}, 1};
    for (long long p : primes) {
        SieveStep step;
        step.p = p;
        try {
            detail::require_sieve_prime(p, "sieve_chain");
            bool all_divisible = !res.result.is_zero();
            for (const auto& [n, c] : res.result.coeffs())
                if (n % p != 0) all_divisible = false;
            if (all_divisible) {
                step.branch = "rescale";
                res.result = rescale_down(res.result, p);
                res.ell *= p;
            } else {
                step.branch = "sieve";
                res.result = sieve_coprime(res.result, p);
            }
        } catch (const precondition_error& e) {
            step.branch = "error";
            step.error = e.what();
        }
        step.level = res.result.meta().level;
        step.character = res.result.meta().character.to_string();
        step.ell = res.ell;
        res.steps.push_back(step);
        if (step.branch == "error") break;
    }
    return res;
}

/// a_{g_t}(n) = a_{g_0}(l n) for every n in the support of g_t with l n inside the bound of g_0.
inline bool verify_chain_relation(const QSeries& g0, const SieveChainResult& chain) {
    for (const auto& [n, c] : chain.result.coeffs()) {
        const long long m = chain.ell * n;
        if (m >= g0.bound()) return false;
        if (g0.coefficient(m) != c) return false;
    }
    return true;
}

/// Exponents n with a_f(n) != 0, n odd and square-free, gcd(n, coprime_to) = 1; ascending.
inline std::vector<long long> odd_squarefree_support(const QSeries& f, long long coprime_to = 1) {
    if (!f.has_integer_exponents()) throw precondition_error("odd_squarefree_support: expansion has a nonzero offset");
    std::vector<long long> out;
    for (const auto& [n, c] : f.coeffs())
        if (n > 0 && n % 2 == 1 && numth::is_squarefree(n) && numth::gcd(n, coprime_to) == 1) out.push_back(n);
    return out;
}

}  // namespace fundcoef
