#pragma once

#include <stdexcept>
#include <vector>

#include "quasicox/cyclotomic.hpp"

namespace quasicox {

// Dense matrix over Scalar with exact Gauss-Jordan elimination.
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Scalar(0)) {}
    Matrix(size_t rows, size_t cols, std::vector<Scalar> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows * cols) throw std::invalid_argument("Matrix: bad entry count");
    }

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Scalar& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: size mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("Matrix: size mismatch in apply");
        std::vector<Scalar> out(rows_, Scalar(0));
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("Matrix: size mismatch in sum");
        Matrix c = a;
        for (size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("Matrix: size mismatch in difference");
        Matrix c = a;
        for (size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
        return c;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    // Deterministic lexicographic order on (rows, cols, entries).
    static int compare(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_ ? -1 : 1;
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_ ? -1 : 1;
        for (size_t i = 0; i < a.a_.size(); ++i)
            if (int c = Scalar::compare(a.a_[i], b.a_[i]); c != 0) return c;
        return 0;
    }
    friend bool operator<(const Matrix& a, const Matrix& b) { return compare(a, b) < 0; }

    Scalar det() const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix: determinant of non-square matrix");
        Matrix m = *this;
        Scalar d(1);
        for (size_t col = 0, row = 0; col < cols_ && row < rows_; ++col, ++row) {
            size_t p = row;
            while (p < rows_ && m(p, col).is_zero()) ++p;
            if (p == rows_) return Scalar(0);
            if (p != row) {
                for (size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(row, j));
                d = -d;
            }
            d *= m(row, col);
            const Scalar inv = m(row, col).inverse();
            for (size_t i = row + 1; i < rows_; ++i) {
                if (m(i, col).is_zero()) continue;
                const Scalar f = m(i, col) * inv;
                for (size_t j = col; j < cols_; ++j) m(i, j) -= f * m(row, j);
            }
        }
        return d;
    }

    Matrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix: inverse of non-square matrix");
        Matrix m = *this;
        Matrix inv = identity(rows_);
        for (size_t col = 0; col < cols_; ++col) {
            size_t p = col;
            while (p < rows_ && m(p, col).is_zero()) ++p;
            if (p == rows_) throw std::invalid_argument("Matrix: singular matrix has no inverse");
            if (p != col)
                for (size_t j = 0; j < cols_; ++j) {
                    std::swap(m(p, j), m(col, j));
                    std::swap(inv(p, j), inv(col, j));
                }
            const Scalar s = m(col, col).inverse();
            for (size_t j = 0; j < cols_; ++j) {
                m(col, j) *= s;
                inv(col, j) *= s;
            }
            for (size_t i = 0; i < rows_; ++i) {
                if (i == col || m(i, col).is_zero()) continue;
                const Scalar f = m(i, col);
                for (size_t j = 0; j < cols_; ++j) {
                    m(i, j) -= f * m(col, j);
                    inv(i, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

// Basis of the null space of A, computed by exact Gauss-Jordan elimination.
// Deterministic: pivot columns are chosen left to right, each basis vector has
// a single free coordinate set to 1, and vectors are emitted in increasing
// order of their free column.
inline std::vector<std::vector<Scalar>> exact_kernel(const Matrix& A) {
    const size_t rows = A.rows(), cols = A.cols();
    Matrix m = A;
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t p = row;
        while (p < rows && m(p, col).is_zero()) ++p;
        if (p == rows) continue;
        if (p != row)
            for (size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(row, j));
        const Scalar s = m(row, col).inverse();
        for (size_t j = col; j < cols; ++j) m(row, j) *= s;
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const Scalar f = m(i, col);
            for (size_t j = col; j < cols; ++j) m(i, j) -= f * m(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(cols, Scalar(0));
        v[free] = Scalar(1);
        for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace quasicox
