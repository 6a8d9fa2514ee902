#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fundcoef/errors.hpp"
#include "fundcoef/exact/rational.hpp"
#include "fundcoef/numth/arith.hpp"
#include "fundcoef/quadform/int_matrix.hpp"

namespace fundcoef {

/// Integer matrix of determinant +-1.
class UnimodularMatrix {
public:
    explicit UnimodularMatrix(IntMatrix m) : m_(std::move(m)) {
        require(m_.is_square(), "UnimodularMatrix: square matrix required");
        BigInt d = determinant(m_);
        if (d != 1 && d != -1) throw precondition_error("UnimodularMatrix: determinant is " + d.get_str());
        det_ = static_cast<int>(d.get_si());
    }
    static UnimodularMatrix identity(std::size_t n) { return UnimodularMatrix(IntMatrix::identity(n)); }

    std::size_t n() const noexcept { return m_.rows(); }
    const IntMatrix& entries() const noexcept { return m_; }
    int det() const noexcept { return det_; }
    bool is_special() const noexcept { return det_ == 1; }

private:
    IntMatrix m_;
    int det_ = 1;
};

/// A half-integral symmetric matrix T, stored as gram = 2T.
class HalfIntegralMatrix {
public:
    HalfIntegralMatrix() = default;

    static HalfIntegralMatrix from_gram(IntMatrix gram) {
        require(gram.rows() >= 1, "HalfIntegralMatrix: empty matrix");
        require(gram.is_symmetric(), "HalfIntegralMatrix: gram must be symmetric");
        for (std::size_t i = 0; i < gram.rows(); ++i)
            require(gram(i, i) % 2 == 0, "HalfIntegralMatrix: gram must have even diagonal");
        HalfIntegralMatrix t;
        t.gram_ = std::move(gram);
        return t;
    }
    static HalfIntegralMatrix from_gram(std::initializer_list<std::initializer_list<long long>> g) {
        return from_gram(IntMatrix(g));
    }
    /// The 1x1 matrix (t).
    static HalfIntegralMatrix scalar(long long t) { return from_gram(IntMatrix{{2 * t}}); }

    std::size_t n() const noexcept { return gram_.rows(); }
    const IntMatrix& gram() const noexcept { return gram_; }
    Rational entry(std::size_t i, std::size_t j) const { return make_rational(gram_(i, j), 2); }

    bool is_zero() const {
        return std::all_of(gram_.data().begin(), gram_.data().end(), [](long long v) { return v == 0; });
    }

    /// Leading principal minors of 2T all positive.
    bool is_positive_definite() const {
        for (std::size_t k = 1; k <= n(); ++k) {
            IntMatrix minor(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) minor(i, j) = gram_(i, j);
            if (determinant(minor) <= 0) return false;
        }
        return true;
    }

    /// All principal minors nonnegative.
    bool is_positive_semidefinite() const {
        const std::size_t sz = n();
        for (unsigned mask = 1; mask < (1u << sz); ++mask) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < sz; ++i)
                if (mask & (1u << i)) idx.push_back(i);
            IntMatrix minor(idx.size(), idx.size());
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t b = 0; b < idx.size(); ++b) minor(a, b) = gram_(idx[a], idx[b]);
            if (determinant(minor) < 0) return false;
        }
        return true;
    }

    long long trace() const {
        long long s = 0;
        for (std::size_t i = 0; i < n(); ++i) s += gram_(i, i) / 2;
        return s;
    }

    HalfIntegralMatrix scaled(long long c) const {
        IntMatrix g = gram_;
        for (std::size_t i = 0; i < n(); ++i)
            for (std::size_t j = 0; j < n(); ++j) g(i, j) *= c;
        return from_gram(std::move(g));
    }

    std::string to_string() const { return gram_.to_string(); }

    friend bool operator==(const HalfIntegralMatrix& a, const HalfIntegralMatrix& b) { return a.gram_ == b.gram_; }
    friend bool operator!=(const HalfIntegralMatrix& a, const HalfIntegralMatrix& b) { return !(a == b); }
    friend bool operator<(const HalfIntegralMatrix& a, const HalfIntegralMatrix& b) { return a.gram_ < b.gram_; }

private:
    IntMatrix gram_;
};

inline long long content(const HalfIntegralMatrix& t) {
    if (t.is_zero()) throw precondition_error("content of the zero matrix");
    long long g = 0;
    const auto& m = t.gram();
    for (std::size_t i = 0; i < t.n(); ++i)
        for (std::size_t j = 0; j < t.n(); ++j) g = numth::gcd(g, i == j ? m(i, i) / 2 : m(i, j));
    return g;
}

inline BigInt det_gram(const HalfIntegralMatrix& t) { return determinant(t.gram()); }

/// d_T = det(2T) for even n, det(2T)/2 for odd n.
inline long long discriminant(const HalfIntegralMatrix& t) {
    BigInt d = det_gram(t);
    if (t.n() % 2 == 1) {
        if (d % 2 != 0) throw invariant_error("det(2T) is odd for odd size " + t.to_string());
        d /= 2;
    }
    return to_ll(d);
}

inline bool is_fundamental(const HalfIntegralMatrix& t) {
    long long d = discriminant(t);
    return d % 2 != 0 && numth::is_squarefree(d);
}

/// T[x] = x^t T x.
inline Rational evaluate(const HalfIntegralMatrix& t, const IntVector& x) {
    require(x.size() == t.n(), "evaluate: dimension mismatch");
    BigInt s = 0;
    for (std::size_t i = 0; i < t.n(); ++i)
        for (std::size_t j = 0; j < t.n(); ++j)
            s += BigInt(static_cast<long>(x[i])) * static_cast<long>(t.gram()(i, j)) * static_cast<long>(x[j]);
    Rational q(s, 2);
    q.canonicalize();
    return q;
}

/// T = [[t, r/2], [r^t/2, sub]].
struct BlockSplit {
    long long t;
    IntVector r;
    HalfIntegralMatrix sub;
};

inline BlockSplit block_split(const HalfIntegralMatrix& m) {
    require(m.n() >= 2, "block_split: size must be at least 2");
    const std::size_t n = m.n();
    BlockSplit out;
    out.t = m.gram()(0, 0) / 2;
    out.r.resize(n - 1);
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t j = 1; j < n; ++j) out.r[j - 1] = m.gram()(0, j);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) sub(i - 1, j - 1) = m.gram()(i, j);
    out.sub = HalfIntegralMatrix::from_gram(std::move(sub));
    return out;
}

inline HalfIntegralMatrix assemble(long long t, const IntVector& r, const HalfIntegralMatrix& sub) {
    require(r.size() == sub.n(), "assemble: row length must match block size");
    const std::size_t n = sub.n() + 1;
    IntMatrix g(n, n);
    g(0, 0) = 2 * t;
    for (std::size_t j = 1; j < n; ++j) g(0, j) = g(j, 0) = r[j - 1];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) g(i, j) = sub.gram()(i - 1, j - 1);
    return HalfIntegralMatrix::from_gram(std::move(g));
}

inline HalfIntegralMatrix assemble(const BlockSplit& b) { return assemble(b.t, b.r, b.sub); }

/// U^t T U.
inline HalfIntegralMatrix transform(const HalfIntegralMatrix& t, const IntMatrix& u) {
    require(u.rows() == t.n() && u.is_square(), "transform: dimension mismatch");
    return HalfIntegralMatrix::from_gram(u.transpose() * t.gram() * u);
}

inline HalfIntegralMatrix transform(const HalfIntegralMatrix& t, const UnimodularMatrix& u) {
    return transform(t, u.entries());
}

/// Reduce x into the fundamental box of Z^n / 2T Z^n given by the column Hermite form of 2T.
inline IntVector reduce_in_box(const IntMatrix& hermite, IntVector x) {
    const std::size_t n = hermite.rows();
    require(x.size() == n, "reduce: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        long long q = numth::floor_div(x[i], hermite(i, i));
        if (q == 0) continue;
        for (std::size_t r = i; r < n; ++r) x[r] -= q * hermite(r, i);
    }
    return x;
}

inline IntVector reduce_mod_2T(const HalfIntegralMatrix& t, const IntVector& x) {
    return reduce_in_box(column_hermite_form(t.gram()), x);
}

/// Representatives of Z^n / 2T Z^n, lexicographically ordered, all inside the Hermite box.
inline std::vector<IntVector> cosets(const HalfIntegralMatrix& t) {
    if (!t.is_positive_definite()) throw precondition_error("cosets: T must be positive definite");
    IntMatrix h = column_hermite_form(t.gram());
    const std::size_t n = t.n();
    std::vector<IntVector> out;
    IntVector x(n, 0);
    while (true) {
        out.push_back(x);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++x[i] < h(i, i)) break;
            x[i] = 0;
            if (i == 0) return out;
        }
    }
}

/// T^{-1}[mu/2] = mu^t adj(2T) mu / (2 det 2T).
inline Rational inverse_form_half(const HalfIntegralMatrix& t, const IntVector& mu) {
    require(mu.size() == t.n(), "inverse_form_half: dimension mismatch");
    BigInt det = det_gram(t);
    require(det != 0, "inverse_form_half: singular T");
    BigMatrix adj = adjugate(t.gram());
    BigInt s = 0;
    for (std::size_t i = 0; i < t.n(); ++i)
        for (std::size_t j = 0; j < t.n(); ++j) s += adj[i][j] * static_cast<long>(mu[i]) * static_cast<long>(mu[j]);
    Rational q(s, 2 * det);
    q.canonicalize();
    return q;
}

inline long long mu_denominator(const HalfIntegralMatrix& t, const IntVector& mu) {
    if (!t.is_positive_definite()) throw precondition_error("mu_denominator: T must be positive definite");
    return to_ll(inverse_form_half(t, mu).get_den());
}

/// Denominator d_T for even n, 4 d_T for odd n.
inline long long max_mu_denominator(const HalfIntegralMatrix& t) {
    long long d = discriminant(t);
    return t.n() % 2 == 0 ? d : 4 * d;
}

inline bool is_primitive_mu(const HalfIntegralMatrix& t, const IntVector& mu) {
    return mu_denominator(t, mu) == max_mu_denominator(t);
}

}  // namespace fundcoef
