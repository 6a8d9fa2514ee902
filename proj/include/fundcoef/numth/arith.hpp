#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <numeric>
#include <utility>
#include <vector>

#include "fundcoef/errors.hpp"

namespace fundcoef::numth {

inline long long mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long long gcd(long long a, long long b) { return std::gcd(a, b); }

inline long long lcm(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    return std::abs(a / std::gcd(a, b) * b);
}

inline long long mul_mod(long long a, long long b, long long m) {
    return static_cast<long long>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

inline long long pow_mod(long long base, unsigned long long e, long long m) {
    if (m == 1) return 0;
    long long result = 1, b = mod(base, m);
    while (e) {
        if (e & 1) result = mul_mod(result, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return result;
}

// Extended Euclid: returns g = gcd(a,b) and x,y with a*x + b*y = g.
inline long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        long long q = a / b;
        long long t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

inline long long mod_inverse(long long a, long long m) {
    long long x, y;
    if (m == 1) return 0;
    if (ext_gcd(mod(a, m), m, x, y) != 1) throw precondition_error("not invertible modulo " + std::to_string(m));
    return mod(x, m);
}

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL})
        if (n % p == 0) return n == p;
    for (long long d = 17; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
        if (n % p == 0) return n == p;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mulm = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
    };
    auto powm = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulm(r, a);
            a = mulm(a, a);
            e >>= 1;
        }
        return r;
    };
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powm(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulm(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

struct PrimePower {
    long long prime;
    int exponent;
    long long value() const {
        long long v = 1;
        for (int i = 0; i < exponent; ++i) v *= prime;
        return v;
    }
};

// Trial division; n != 0. Sign is ignored.
inline std::vector<PrimePower> factorize(long long n) {
    if (n == 0) throw precondition_error("factorize(0)");
    n = std::abs(n);
    std::vector<PrimePower> out;
    for (long long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline std::vector<long long> prime_divisors(long long n) {
    std::vector<long long> ps;
    for (auto& pp : factorize(n)) ps.push_back(pp.prime);
    return ps;
}

inline bool is_squarefree(long long n) {
    if (n == 0) return false;
    for (auto& pp : factorize(n))
        if (pp.exponent > 1) return false;
    return true;
}

inline long long euler_phi(long long n) {
    long long r = n;
    for (auto& pp : factorize(n)) r = r / pp.prime * (pp.prime - 1);
    return r;
}

inline std::vector<long long> divisors(long long n) {
    std::vector<long long> ds;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        ds.push_back(d);
        if (d * d != n) ds.push_back(n / d);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline std::vector<long long> units_mod(long long n) {
    std::vector<long long> u;
    for (long long a = 0; a < n; ++a)
        if (std::gcd(a, n) == 1) u.push_back(a);
    if (n == 1) u = {0};
    return u;
}

// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi_symbol(long long a, long long n) {
    if (n <= 0 || n % 2 == 0) throw precondition_error("jacobi symbol needs odd positive modulus");
    a = mod(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// Kronecker symbol (a/n) for arbitrary integers.
inline int kronecker_symbol(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0) return 0;
        long long r = mod(a, 8);
        if ((v & 1) && (r == 3 || r == 5)) result = -result;
    }
    return result * jacobi_symbol(a, n);
}

// Odd-modulus Legendre symbol extended to (c/d) for odd d following Shimura's sign convention:
// (c/d) = (c/|d|) unless c < 0 and d < 0, in which case it is -(c/|d|); (0/±1) = 1.
inline int shimura_symbol(long long c, long long d) {
    if (d % 2 == 0) throw precondition_error("shimura_symbol needs odd d");
    long long ad = std::abs(d);
    int s = (ad == 1) ? 1 : jacobi_symbol(c, ad);
    if (c < 0 && d < 0) s = -s;
    return s;
}

// Primitive root modulo p^e for an odd prime p.
inline long long primitive_root_odd(long long p, int e) {
    long long phi_p = p - 1;
    auto qs = prime_divisors(phi_p);
    long long g = 2;
    for (;; ++g) {
        bool ok = true;
        for (long long q : qs)
            if (pow_mod(g, phi_p / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) break;
    }
    if (e >= 2 && pow_mod(g, p - 1, p * p) == 1) g += p;
    return g;
}

// Chinese remainder: x = a1 mod m1, x = a2 mod m2 with gcd(m1,m2)=1; result in [0, m1*m2).
inline long long crt(long long a1, long long m1, long long a2, long long m2) {
    long long inv = mod_inverse(m1 % m2, m2);
    long long t = mul_mod(mod(a2 - a1, m2), inv, m2);
    return mod(a1 + static_cast<long long>(static_cast<__int128>(m1) * t % (static_cast<__int128>(m1) * m2)),
               m1 * m2);
}

}  // namespace fundcoef::numth
