// Dense exact linear algebra over a field (Rat or GaussRat): elimination,
// rank, kernel bases, linear solves.  Sizes here are small (tens), so plain
// Gaussian elimination with first-nonzero pivoting is the right tool.

#ifndef MOMAP_LINALG_HPP
#define MOMAP_LINALG_HPP

#include "momap/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace momap {

namespace detail {
inline bool field_zero(const Rat& x) { return x == 0; }
inline bool field_zero(const GaussRat& x) { return x.is_zero(); }
}  // namespace detail

template <class F>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<F> a;  // row-major

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, F(0)) {}

    F& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat r(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                if (detail::field_zero(x(i, k))) continue;
                for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }

    std::vector<F> apply(const std::vector<F>& v) const {
        std::vector<F> r(rows, F(0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                if (!detail::field_zero((*this)(i, j))) r[i] += (*this)(i, j) * v[j];
            }
        return r;
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

using RatMat = Mat<Rat>;
using GaussMat = Mat<GaussRat>;

// Reduces m in place to row echelon form; returns pivot column indices.
template <class F>
std::vector<std::size_t> row_echelon(Mat<F>& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t p = row;
        while (p < m.rows && detail::field_zero(m(p, col))) ++p;
        if (p == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(row, j), m(p, j));
        F inv = F(1) / m(row, col);
        for (std::size_t j = col; j < m.cols; ++j) m(row, j) = m(row, j) * inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || detail::field_zero(m(i, col))) continue;
            F f = m(i, col);
            for (std::size_t j = col; j < m.cols; ++j) m(i, j) = m(i, j) - f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
std::size_t rank(Mat<F> m) {
    return row_echelon(m).size();
}

// Basis of {x : m x = 0}, one vector per free column.
template <class F>
std::vector<std::vector<F>> kernel_basis(Mat<F> m) {
    std::vector<std::size_t> pivots = row_echelon(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<F> v(m.cols, F(0));
        v[fc] = F(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = -m(r, fc);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of m x = b if consistent.
template <class F>
std::optional<std::vector<F>> solve(Mat<F> m, std::vector<F> b) {
    Mat<F> aug(m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols) = b[i];
    }
    std::vector<std::size_t> pivots = row_echelon(aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;  // 0 = 1 row
    std::vector<F> x(m.cols, F(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols);
    return x;
}

template <class F>
F determinant(Mat<F> m) {
    F det(1);
    for (std::size_t col = 0, row = 0; col < m.cols && row < m.rows; ++col, ++row) {
        std::size_t p = row;
        while (p < m.rows && detail::field_zero(m(p, col))) ++p;
        if (p == m.rows) return F(0);
        if (p != row) {
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(row, j), m(p, j));
            det = -det;
        }
        det = det * m(row, col);
        F inv = F(1) / m(row, col);
        for (std::size_t i = row + 1; i < m.rows; ++i) {
            if (detail::field_zero(m(i, col))) continue;
            F f = m(i, col) * inv;
            for (std::size_t j = col; j < m.cols; ++j) m(i, j) = m(i, j) - f * m(row, j);
        }
    }
    return det;
}

template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& m) {
    Mat<F> aug(m.rows, 2 * m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
        aug(i, m.cols + i) = F(1);
    }
    std::vector<std::size_t> pivots = row_echelon(aug);
    if (pivots.size() != m.rows) return std::nullopt;
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (pivots[i] != i) return std::nullopt;
    }
    Mat<F> inv(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) inv(i, j) = aug(i, m.cols + j);
    return inv;
}

// Integer matrices (Weyl-element actions).
struct IntMat {
    std::size_t n = 0;
    std::vector<long long> a;  // row-major, n x n

    IntMat() = default;
    explicit IntMat(std::size_t n_) : n(n_), a(n_ * n_, 0) {}
    long long& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    long long operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static IntMat identity(std::size_t n) {
        IntMat m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    friend IntMat operator*(const IntMat& x, const IntMat& y) {
        IntMat r(x.n);
        for (std::size_t i = 0; i < x.n; ++i)
            for (std::size_t k = 0; k < x.n; ++k) {
                if (x(i, k) == 0) continue;
                for (std::size_t j = 0; j < x.n; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }
    RatVec apply(const RatVec& v) const {
        RatVec r(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if ((*this)(i, j) != 0) r[i] += Rat((*this)(i, j)) * v[j];
            }
        return r;
    }
    friend bool operator==(const IntMat& x, const IntMat& y) { return x.n == y.n && x.a == y.a; }
    friend bool operator<(const IntMat& x, const IntMat& y) {
        if (x.n != y.n) return x.n < y.n;
        return x.a < y.a;
    }
};

}  // namespace momap

#endif  // MOMAP_LINALG_HPP
