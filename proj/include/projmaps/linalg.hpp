#pragma once

// Dense exact linear algebra over Integer and Rational.

#include <cstddef>
#include <utility>
#include <vector>

#include "projmaps/error.hpp"
#include "projmaps/rational.hpp"

namespace projmaps {

template <typename Scalar>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

/// Fraction-free (Bareiss) determinant; every intermediate division is exact.
inline Integer determinant(IntMatrix m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        const Integer& pivot = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m(i, j) * pivot - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = std::move(v);
            }
            m(i, k) = 0;
        }
        prev = pivot;
    }
    Integer d = m(n - 1, n - 1);
    return sign < 0 ? Integer(-d) : d;
}

/// Determinant of a rational matrix: clear row denominators and run Bareiss.
inline Rational determinant(const RatMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    IntMatrix scaled(n, n);
    Integer scale = 1;
    for (std::size_t r = 0; r < n; ++r) {
        Integer l = 1;
        for (std::size_t c = 0; c < n; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < n; ++c) scaled(r, c) = Rational(m(r, c) * l).get_num();
        scale *= l;
    }
    Rational out(determinant(std::move(scaled)), scale);
    out.canonicalize();
    return out;
}

/// Gauss-Jordan inverse. Throws SingularMatrix.
inline RatMatrix inverse(const RatMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
        a.swap_rows(k, p);
        inv.swap_rows(k, p);
        Rational piv = a(k, k);
        for (std::size_t c = 0; c < n; ++c) {
            a(k, c) /= piv;
            inv(k, c) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == k || a(r, k) == 0) continue;
            Rational f = a(r, k);
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= f * a(k, c);
                inv(r, c) -= f * inv(k, c);
            }
        }
    }
    return inv;
}

/// Basis of the right nullspace {x : m x = 0}. One vector per free column of
/// the reduced row echelon form, with a 1 in that column.
inline std::vector<std::vector<Rational>> nullspace(RatMatrix a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c) == 0) ++p;
        if (p == rows) continue;
        a.swap_rows(r, p);
        Rational piv = a(r, c);
        for (std::size_t j = c; j < cols; ++j) a(r, j) /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::size_t rank(const RatMatrix& a) { return a.cols() - nullspace(a).size(); }

/// Scales a rational vector to a primitive integer vector (same direction).
inline std::vector<Integer> clear_denominators(const std::vector<Rational>& v) {
    Integer l = lcm_of_denominators(v.data(), v.data() + v.size());
    std::vector<Integer> out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& q : v) {
        out.push_back(Rational(q * l).get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g > 1)
        for (auto& z : out) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
    return out;
}

} // namespace projmaps
