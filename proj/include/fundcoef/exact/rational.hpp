#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "fundcoef/errors.hpp"

namespace fundcoef {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big(long long v) { return BigInt(static_cast<long>(v)); }

inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw precondition_error("rational with zero denominator");
    Rational q(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Always "p/q", including integers ("3/1"), which is the coefficient file format.
inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "p", "p/q", with optional sign; canonicalizes.
inline Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw parse_error("empty rational");
    if (s.front() == '+') s.erase(s.begin());
    auto slash = s.find('/');
    auto valid_int = [](std::string_view v) {
        std::size_t i = (!v.empty() && v.front() == '-') ? 1 : 0;
        if (i >= v.size()) return false;
        for (; i < v.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
        return true;
    };
    BigInt num, den(1);
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw parse_error("malformed rational '" + s + "'");
        num = BigInt(s, 10);
    } else {
        auto a = s.substr(0, slash), b = s.substr(slash + 1);
        if (!valid_int(a) || !valid_int(b)) throw parse_error("malformed rational '" + s + "'");
        num = BigInt(a, 10);
        den = BigInt(b, 10);
        if (den == 0) throw parse_error("rational with zero denominator '" + s + "'");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline long long to_ll(const BigInt& z) {
    if (!z.fits_slong_p()) throw invariant_error("integer overflow: " + z.get_str());
    return z.get_si();
}

}  // namespace fundcoef
