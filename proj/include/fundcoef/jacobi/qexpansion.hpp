#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "fundcoef/charsums/dirichlet.hpp"
#include "fundcoef/errors.hpp"
#include "fundcoef/exact/cyclotomic.hpp"
#include "fundcoef/exact/rational.hpp"

namespace fundcoef {

/// Level, weight and character bookkeeping. The weight is stored doubled.
struct QMeta {
    long long weight2 = 0;
    long long level = 1;
    CharacterLabel character;

    friend bool operator==(const QMeta& a, const QMeta& b) {
        return a.weight2 == b.weight2 && a.level == b.level && a.character == b.character;
    }
};

namespace detail {
inline bool coeff_is_zero(const Rational& x) { return x == 0; }
inline bool coeff_is_zero(const CycNumber& x) { return x.is_zero(); }
}  // namespace detail

/// sum_{0 <= l < bound} c_l q^(l + offset). Zero coefficients are never stored.
template <class Coeff>
class QExpansion {
public:
    QExpansion() = default;
    explicit QExpansion(long long bound, Rational offset = 0, QMeta meta = {})
        : offset_(std::move(offset)), bound_(bound), meta_(std::move(meta)) {
        require(bound >= 0, "QExpansion: bound must be nonnegative");
    }

    const Rational& offset() const noexcept { return offset_; }
    long long bound() const noexcept { return bound_; }
    const QMeta& meta() const noexcept { return meta_; }
    QMeta& meta() noexcept { return meta_; }
    const std::map<long long, Coeff>& coeffs() const noexcept { return coeffs_; }

    bool has_integer_exponents() const { return offset_ == 0; }

    /// Coefficient of q^(l + offset); zero when unset. Exponents outside [0, bound) are an error.
    Coeff coefficient(long long l) const {
        check_index(l);
        auto it = coeffs_.find(l);
        return it == coeffs_.end() ? Coeff(0) : it->second;
    }

    QExpansion& set(long long l, const Coeff& c) {
        check_index(l);
        if (detail::coeff_is_zero(c))
            coeffs_.erase(l);
        else
            coeffs_[l] = c;
        return *this;
    }

    QExpansion& add(long long l, const Coeff& c) { return set(l, coefficient(l) + c); }

    bool is_zero() const { return coeffs_.empty(); }

    std::vector<long long> support() const {
        std::vector<long long> s;
        for (const auto& [l, c] : coeffs_) s.push_back(l);
        return s;
    }

    QExpansion scaled(const Coeff& s) const {
        QExpansion out(bound_, offset_, meta_);
        for (const auto& [l, c] : coeffs_) out.set(l, c * s);
        return out;
    }

    /// Sum truncated to the smaller bound; metadata of the left operand.
    friend QExpansion operator+(const QExpansion& a, const QExpansion& b) {
        require(a.offset_ == b.offset_, "QExpansion: offsets differ");
        QExpansion out(std::min(a.bound_, b.bound_), a.offset_, a.meta_);
        for (const auto& [l, c] : a.coeffs_)
            if (l < out.bound_) out.add(l, c);
        for (const auto& [l, c] : b.coeffs_)
            if (l < out.bound_) out.add(l, c);
        return out;
    }

    friend QExpansion operator-(const QExpansion& a, const QExpansion& b) { return a + b.scaled(Coeff(-1)); }

    /// Same offset, bound and coefficients.
    friend bool operator==(const QExpansion& a, const QExpansion& b) {
        if (a.offset_ != b.offset_ || a.bound_ != b.bound_ || a.coeffs_.size() != b.coeffs_.size()) return false;
        for (auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin(); ia != a.coeffs_.end(); ++ia, ++ib)
            if (ia->first != ib->first || ia->second != ib->second) return false;
        return true;
    }
    friend bool operator!=(const QExpansion& a, const QExpansion& b) { return !(a == b); }

private:
    void check_index(long long l) const {
        if (l < 0 || l >= bound_)
            throw precondition_error("QExpansion: exponent index " + std::to_string(l) + " outside [0, " +
                                     std::to_string(bound_) + ")");
    }

    Rational offset_ = 0;
    long long bound_ = 0;
    QMeta meta_;
    std::map<long long, Coeff> coeffs_;
};

using QSeries = QExpansion<Rational>;
using CycSeries = QExpansion<CycNumber>;

/// Rational series from one with cyclotomic coefficients; fails when a coefficient is irrational.
inline QSeries to_rational_series(const CycSeries& f) {
    QSeries out(f.bound(), f.offset(), f.meta());
    for (const auto& [l, c] : f.coeffs()) {
        if (!c.is_rational()) throw precondition_error("series coefficient " + c.to_string() + " is not rational");
        out.set(l, c.rational_value());
    }
    return out;
}

inline CycSeries to_cyc_series(const QSeries& f) {
    CycSeries out(f.bound(), f.offset(), f.meta());
    for (const auto& [l, c] : f.coeffs()) out.set(l, CycNumber(c));
    return out;
}

}  // namespace fundcoef
