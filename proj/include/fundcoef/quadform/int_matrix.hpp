#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "fundcoef/errors.hpp"
#include "fundcoef/exact/rational.hpp"
#include "fundcoef/numth/arith.hpp"

namespace fundcoef {

using IntVector = std::vector<long long>;

/// Dense integer matrix, row-major, with exact determinant and adjugate.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols, long long fill = 0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            require(row.size() == cols_, "IntMatrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }
    static IntMatrix from_rows(const std::vector<IntVector>& rows) {
        IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == m.cols_, "IntMatrix: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    long long& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    long long operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector row(std::size_t i) const { return IntVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
    IntVector col(std::size_t j) const {
        IntVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        require(a.cols_ == b.rows_, "IntMatrix: dimension mismatch in product");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                BigInt s = 0;
                for (std::size_t k = 0; k < a.cols_; ++k) s += BigInt(static_cast<long>(a(i, k))) * static_cast<long>(b(k, j));
                c(i, j) = to_ll(s);
            }
        return c;
    }

    IntVector apply(const IntVector& x) const {
        require(x.size() == cols_, "IntMatrix: dimension mismatch in apply");
        IntVector y(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            BigInt s = 0;
            for (std::size_t j = 0; j < cols_; ++j) s += BigInt(static_cast<long>((*this)(i, j))) * static_cast<long>(x[j]);
            y[i] = to_ll(s);
        }
        return y;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator<(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
        return a.data_ < b.data_;
    }

    const std::vector<long long>& data() const noexcept { return data_; }

    // "[[a,b],[c,d]]"
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + std::to_string((*this)(i, j));
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<long long> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

inline std::string vector_to_string(const IntVector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

using BigMatrix = std::vector<std::vector<BigInt>>;

inline BigMatrix to_big(const IntMatrix& m) {
    BigMatrix b(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) b[i][j] = static_cast<long>(m(i, j));
    return b;
}

/// Bareiss fraction-free determinant.
inline BigInt determinant(BigMatrix a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline BigInt determinant(const IntMatrix& m) {
    require(m.is_square(), "determinant of non-square matrix");
    return determinant(to_big(m));
}

/// adj(M) with M * adj(M) = det(M) * I.
inline BigMatrix adjugate(const IntMatrix& m) {
    require(m.is_square(), "adjugate of non-square matrix");
    const std::size_t n = m.rows();
    BigMatrix adj(n, std::vector<BigInt>(n));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    BigMatrix big = to_big(m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            BigMatrix minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<BigInt> row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != i) row.push_back(big[r][c]);
                minor.push_back(std::move(row));
            }
            BigInt d = determinant(std::move(minor));
            adj[i][j] = ((i + j) % 2) ? BigInt(-d) : d;
        }
    return adj;
}

/// Lower-triangular column Hermite form H of a nonsingular square matrix: the columns of H span the
/// same lattice as the columns of M, H(i,j) = 0 for j > i, H(i,i) > 0 and 0 <= H(i,j) < H(i,i) for j < i.
inline IntMatrix column_hermite_form(const IntMatrix& m) {
    require(m.is_square(), "column_hermite_form: square matrix required");
    const std::size_t n = m.rows();
    BigMatrix h = to_big(m);
    auto col_combine = [&](std::size_t a, std::size_t b, const BigInt& x, const BigInt& y, const BigInt& u,
                           const BigInt& v) {
        // (col_a, col_b) <- (x col_a + y col_b, u col_a + v col_b)
        for (std::size_t r = 0; r < n; ++r) {
            BigInt na = x * h[r][a] + y * h[r][b];
            BigInt nb = u * h[r][a] + v * h[r][b];
            h[r][a] = na;
            h[r][b] = nb;
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (h[i][j] == 0) continue;
            BigInt g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), h[i][i].get_mpz_t(), h[i][j].get_mpz_t());
            BigInt a = h[i][i] / g, b = h[i][j] / g;
            col_combine(i, j, x, y, BigInt(-b), a);
        }
        if (h[i][i] == 0) throw precondition_error("column_hermite_form: singular matrix");
        if (h[i][i] < 0)
            for (std::size_t r = 0; r < n; ++r) h[r][i] = -h[r][i];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), h[i][j].get_mpz_t(), h[i][i].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t r = 0; r < n; ++r) h[r][j] -= q * h[r][i];
        }
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = to_ll(h[i][j]);
    return out;
}

}  // namespace fundcoef
