#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fundcoef/errors.hpp"
#include "fundcoef/exact/rational.hpp"
#include "fundcoef/numth/arith.hpp"

namespace fundcoef {

namespace detail {

// Per-order reduction data for Z[x]/Phi_m(x).
struct CyclotomicData {
    unsigned order = 1;
    unsigned degree = 1;                            // phi(m)
    std::vector<long long> poly;                    // Phi_m, low to high, monic, size degree+1
    std::vector<std::vector<long long>> power_rem;  // x^k mod Phi_m for 0 <= k < m
};

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw invariant_error("cyclotomic table overflow");
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw invariant_error("cyclotomic table overflow");
    return r;
}

const CyclotomicData& cyclotomic_data(unsigned m);

inline std::vector<long long> compute_cyclotomic_poly(unsigned m) {
    // x^m - 1 divided by Phi_d for every proper divisor d of m.
    std::vector<long long> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (long long d : numth::divisors(m)) {
        if (d == static_cast<long long>(m)) continue;
        const auto& div = cyclotomic_data(static_cast<unsigned>(d)).poly;
        std::size_t dn = num.size() - 1, dd = div.size() - 1;
        std::vector<long long> quot(dn - dd + 1, 0);
        for (std::size_t i = dn + 1; i-- > dd;) {
            long long c = num[i];
            quot[i - dd] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] = checked_add(num[i - dd + j], -checked_mul(c, div[j]));
        }
        for (std::size_t i = 0; i < dd; ++i)
            if (num[i] != 0) throw invariant_error("cyclotomic division not exact");
        num = std::move(quot);
    }
    return num;
}

inline std::unique_ptr<CyclotomicData> build_cyclotomic_data(unsigned m) {
    auto data = std::make_unique<CyclotomicData>();
    data->order = m;
    data->poly = compute_cyclotomic_poly(m);
    data->degree = static_cast<unsigned>(data->poly.size() - 1);
    const unsigned n = data->degree;
    data->power_rem.resize(m);
    std::vector<long long> cur(n, 0);
    cur[0] = 1;
    for (unsigned k = 0; k < m; ++k) {
        data->power_rem[k] = cur;
        // cur <- x * cur mod Phi_m
        long long top = cur[n - 1];
        for (unsigned i = n - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (unsigned i = 0; i < n; ++i) cur[i] = checked_add(cur[i], -checked_mul(top, data->poly[i]));
    }
    return data;
}

inline const CyclotomicData& cyclotomic_data(unsigned m) {
    static std::recursive_mutex mutex;
    static std::map<unsigned, std::unique_ptr<CyclotomicData>> cache;
    std::lock_guard<std::recursive_mutex> lock(mutex);
    auto it = cache.find(m);
    if (it != cache.end()) return *it->second;
    auto data = build_cyclotomic_data(m);
    auto& ref = *data;
    cache.emplace(m, std::move(data));
    return ref;
}

using RatPoly = std::vector<Rational>;

inline void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Polynomial division with remainder over Q; divisor nonzero.
inline void poly_divmod(RatPoly a, const RatPoly& b, RatPoly& q, RatPoly& r) {
    trim(a);
    RatPoly bb = b;
    trim(bb);
    q.assign(a.size() >= bb.size() ? a.size() - bb.size() + 1 : 0, Rational(0));
    const Rational lead = bb.back();
    while (a.size() >= bb.size() && !a.empty()) {
        Rational c = a.back() / lead;
        std::size_t shift = a.size() - bb.size();
        q[shift] = c;
        for (std::size_t j = 0; j < bb.size(); ++j) a[shift + j] -= c * bb[j];
        trim(a);
    }
    r = std::move(a);
}

inline RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

inline RatPoly poly_sub(const RatPoly& a, const RatPoly& b) {
    RatPoly out(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
}

}  // namespace detail

inline std::vector<long long> cyclotomic_polynomial(unsigned m) {
    if (m == 0) throw precondition_error("cyclotomic polynomial of order 0");
    return detail::cyclotomic_data(m).poly;
}

/// Exact element of the cyclotomic field Q(zeta_m), stored in the power basis
/// 1, zeta_m, ..., zeta_m^(phi(m)-1).  Rational values are always stored at order 1,
/// so equal rationals compare equal regardless of where they were produced.
class CycNumber {
public:
    CycNumber() : order_(1), coeffs_(1, Rational(0)) {}
    CycNumber(long long v) : order_(1), coeffs_(1, Rational(static_cast<long>(v))) {}  // NOLINT implicit
    CycNumber(const Rational& v) : order_(1), coeffs_(1, v) {}                         // NOLINT implicit

    /// exp(2 pi i num/den); the returned order is den / gcd(num, den).
    static CycNumber root_of_unity(long long num, long long den) {
        require(den >= 1, "root_of_unity: denominator must be positive");
        long long k = numth::mod(num, den);
        long long g = std::gcd(k, den);
        if (k == 0) return CycNumber(1);
        unsigned m = static_cast<unsigned>(den / g);
        k /= g;
        const auto& data = detail::cyclotomic_data(m);
        const auto& row = data.power_rem[static_cast<std::size_t>(k)];
        std::vector<Rational> c;
        c.reserve(data.degree);
        for (unsigned i = 0; i < data.degree; ++i) c.emplace_back(static_cast<long>(row[i]));
        return CycNumber(m, std::move(c));
    }

    /// sum_k counts[k] * zeta_m^k for k in [0, m).
    static CycNumber from_power_sum(unsigned m, std::span<const long long> counts) {
        require(m >= 1, "from_power_sum: order must be positive");
        require(counts.size() == m, "from_power_sum: need one count per residue");
        const auto& data = detail::cyclotomic_data(m);
        std::vector<__int128> acc(data.degree, 0);
        for (unsigned k = 0; k < m; ++k) {
            if (counts[k] == 0) continue;
            const auto& row = data.power_rem[k];
            for (unsigned i = 0; i < data.degree; ++i) acc[i] += static_cast<__int128>(counts[k]) * row[i];
        }
        CycNumber out(m, std::vector<Rational>(data.degree), true);
        for (unsigned i = 0; i < data.degree; ++i) out.coeffs_[i] = int128_to_rational(acc[i]);
        out.normalize();
        return out;
    }

    /// Element given by arbitrary-length coefficients of powers of zeta_m (reduced here).
    static CycNumber from_powers(unsigned m, const std::vector<Rational>& power_coeffs) {
        require(m >= 1, "from_powers: order must be positive");
        const auto& data = detail::cyclotomic_data(m);
        CycNumber out(m, std::vector<Rational>(data.degree, Rational(0)), true);
        for (std::size_t k = 0; k < power_coeffs.size(); ++k) {
            if (power_coeffs[k] == 0) continue;
            const auto& row = data.power_rem[k % m];
            for (unsigned i = 0; i < data.degree; ++i)
                if (row[i] != 0) out.coeffs_[i] += power_coeffs[k] * static_cast<long>(row[i]);
        }
        out.normalize();
        return out;
    }

    unsigned order() const noexcept { return order_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const { return order_ == 1; }
    const Rational& rational_value() const {
        if (order_ != 1) throw precondition_error("cyclotomic value is not rational: " + to_string());
        return coeffs_[0];
    }

    /// Same value expressed in Q(zeta_L) for a multiple L of order().
    CycNumber lifted(unsigned target) const {
        require(target >= 1 && target % order_ == 0, "lifted: target order must be a multiple");
        if (target == order_) return *this;
        const unsigned step = target / order_;
        const auto& data = detail::cyclotomic_data(target);
        std::vector<Rational> out(data.degree, Rational(0));
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0) continue;
            const auto& row = data.power_rem[(k * step) % target];
            for (unsigned i = 0; i < data.degree; ++i)
                if (row[i] != 0) out[i] += coeffs_[k] * static_cast<long>(row[i]);
        }
        return CycNumber(target, std::move(out), /*raw=*/true);
    }

    /// Galois automorphism zeta_m -> zeta_m^j, gcd(j, m) = 1.
    CycNumber galois(long long j) const {
        if (order_ == 1) return *this;
        require(std::gcd(numth::mod(j, order_), static_cast<long long>(order_)) == 1, "galois: exponent must be a unit");
        const unsigned m = order_;
        std::vector<Rational> powers(m, Rational(0));
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            powers[static_cast<std::size_t>(numth::mod(static_cast<long long>(k) * j, m))] += coeffs_[k];
        return from_powers(m, powers);
    }

    CycNumber conj() const { return galois(-1); }

    CycNumber inv() const {
        if (is_zero()) throw precondition_error("inversion of zero in cyclotomic field");
        if (order_ == 1) return CycNumber(Rational(1) / coeffs_[0]);
        // Extended Euclid in Q[x]: find u with u * a = 1 mod Phi_m.
        const auto& data = detail::cyclotomic_data(order_);
        detail::RatPoly r0, r1 = coeffs_, s0, s1{Rational(1)};
        for (long long c : data.poly) r0.push_back(Rational(static_cast<long>(c)));
        detail::trim(r1);
        // invariant: s_i * a = r_i (mod Phi)
        while (r1.size() > 1) {
            detail::RatPoly q, r;
            detail::poly_divmod(r0, r1, q, r);
            detail::RatPoly s = detail::poly_sub(s0, detail::poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (r1.empty()) throw invariant_error("cyclotomic inverse: non-coprime remainder");
        Rational scale = Rational(1) / r1[0];
        for (auto& c : s1) c *= scale;
        detail::RatPoly q, rem;
        detail::RatPoly phi;
        for (long long c : data.poly) phi.push_back(Rational(static_cast<long>(c)));
        detail::poly_divmod(s1, phi, q, rem);
        rem.resize(data.degree, Rational(0));
        return CycNumber(order_, std::move(rem));
    }

    CycNumber operator-() const {
        CycNumber out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }

    friend CycNumber operator+(const CycNumber& a, const CycNumber& b) { return combine(a, b, false); }
    friend CycNumber operator-(const CycNumber& a, const CycNumber& b) { return combine(a, b, true); }

    friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
        if (a.order_ == 1 && b.order_ == 1) return CycNumber(a.coeffs_[0] * b.coeffs_[0]);
        if (a.order_ == 1) return b.scaled(a.coeffs_[0]);
        if (b.order_ == 1) return a.scaled(b.coeffs_[0]);
        const unsigned m = static_cast<unsigned>(numth::lcm(a.order_, b.order_));
        const CycNumber x = a.lifted(m), y = b.lifted(m);
        const auto& data = detail::cyclotomic_data(m);
        const unsigned n = data.degree;
        std::vector<Rational> prod(2 * n - 1, Rational(0));
        for (unsigned i = 0; i < n; ++i) {
            if (x.coeffs_[i] == 0) continue;
            for (unsigned j = 0; j < n; ++j)
                if (y.coeffs_[j] != 0) prod[i + j] += x.coeffs_[i] * y.coeffs_[j];
        }
        std::vector<Rational> out(prod.begin(), prod.begin() + n);
        for (unsigned k = n; k < 2 * n - 1; ++k) {
            if (prod[k] == 0) continue;
            const auto& row = data.power_rem[k % m];
            for (unsigned i = 0; i < n; ++i)
                if (row[i] != 0) out[i] += prod[k] * static_cast<long>(row[i]);
        }
        return CycNumber(m, std::move(out));
    }

    friend CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inv(); }

    CycNumber& operator+=(const CycNumber& o) { return *this = *this + o; }
    CycNumber& operator-=(const CycNumber& o) { return *this = *this - o; }
    CycNumber& operator*=(const CycNumber& o) { return *this = *this * o; }

    CycNumber scaled(const Rational& s) const {
        if (s == 0) return CycNumber(0);
        CycNumber out = *this;
        for (auto& c : out.coeffs_) c *= s;
        return out;
    }

    friend bool operator==(const CycNumber& a, const CycNumber& b) {
        if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
        return (a - b).is_zero();
    }
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

    /// e.g. "1 + 2*z3", "-1/2*z5^3", "0".
    std::string to_string() const {
        std::string out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            const Rational& c = coeffs_[k];
            if (c == 0) continue;
            bool neg = c < 0;
            Rational mag = neg ? Rational(-c) : c;
            std::string term;
            std::string root = "z" + std::to_string(order_) + (k >= 2 ? "^" + std::to_string(k) : "");
            if (k == 0)
                term = mag.get_str();
            else if (mag == 1)
                term = root;
            else
                term = mag.get_str() + "*" + root;
            if (out.empty())
                out = (neg ? "-" : "") + term;
            else
                out += (neg ? " - " : " + ") + term;
        }
        return out.empty() ? "0" : out;
    }

    friend std::ostream& operator<<(std::ostream& os, const CycNumber& x) { return os << x.to_string(); }

private:
    CycNumber(unsigned m, std::vector<Rational> coeffs, bool raw = false) : order_(m), coeffs_(std::move(coeffs)) {
        if (!raw) normalize();
    }

    static Rational int128_to_rational(__int128 v) {
        if (v >= LONG_MIN && v <= LONG_MAX) return Rational(static_cast<long>(v));
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        BigInt hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
        BigInt z = (hi << 64) + lo;
        return Rational(neg ? BigInt(-z) : z);
    }

    // Rational values move to order 1.
    void normalize() {
        if (order_ == 1) return;
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            if (coeffs_[k] != 0) return;
        Rational c = coeffs_[0];
        order_ = 1;
        coeffs_.assign(1, c);
    }

    static CycNumber combine(const CycNumber& a, const CycNumber& b, bool subtract) {
        const unsigned m = static_cast<unsigned>(numth::lcm(a.order_, b.order_));
        CycNumber x = a.lifted(m);
        const CycNumber y = b.lifted(m);
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
            if (subtract)
                x.coeffs_[i] -= y.coeffs_[i];
            else
                x.coeffs_[i] += y.coeffs_[i];
        }
        x.normalize();
        return x;
    }

    unsigned order_;
    std::vector<Rational> coeffs_;
};

inline CycNumber root_of_unity(long long num, long long den) { return CycNumber::root_of_unity(num, den); }

}  // namespace fundcoef
