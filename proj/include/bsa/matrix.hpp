#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "bsa/error.hpp"
#include "bsa/rational.hpp"

namespace bsa {

/// Dense matrix over an exact scalar type. Everything here is sized for the
/// small systems this library produces (a few hundred rows at most), so the
/// implementation favours clarity and canonical output over speed.
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            check_internal(row.size() == cols_, "ragged matrix initializer");
            for (const auto& x : row) a_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            check_internal(rows[i].size() == c, "ragged row list");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

    void append_row(const std::vector<T>& r) {
        check_internal(r.size() == cols_ || rows_ == 0, "row length mismatch");
        if (rows_ == 0) cols_ = r.size();
        a_.insert(a_.end(), r.begin(), r.end());
        ++rows_;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& b) const {
        check_internal(cols_ == b.rows_, "matmul shape mismatch");
        Matrix c(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& x = (*this)(i, k);
                if (x == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
            }
        return c;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        check_internal(v.size() == cols_, "matvec shape mismatch");
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != T(0)) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    bool is_zero() const {
        for (const auto& x : a_) if (x != T(0)) return false;
        return true;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> a_;
};

using RatMatrix = Matrix<Rat>;

/// In-place reduced row echelon form (leading entries 1, pivot columns
/// cleared). Returns the rank. rref is idempotent and canonical: any two
/// matrices with the same row space reduce to the same result.
template <typename T>
std::size_t rref_in_place(Matrix<T>& m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < m.rows() && m(piv, col) == T(0)) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(rank, piv);
        T inv = m(rank, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(rank, j) /= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m(i, col) == T(0)) continue;
            T f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

template <typename T>
std::pair<Matrix<T>, std::size_t> rref(Matrix<T> m) {
    std::size_t r = rref_in_place(m);
    return {std::move(m), r};
}

template <typename T>
std::size_t rank(const Matrix<T>& m) {
    Matrix<T> c = m;
    return rref_in_place(c);
}

/// Row basis of the null space {v : m v = 0}, in reduced echelon form.
/// dim = cols - rank(m) by construction.
template <typename T>
Matrix<T> kernel_basis(const Matrix<T>& m) {
    Matrix<T> r = m;
    std::size_t rk = rref_in_place(r);
    std::size_t n = m.cols();
    std::vector<std::size_t> pivot_col;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0, col = 0; i < rk; ++i) {
        while (col < n && r(i, col) == T(0)) ++col;
        pivot_col.push_back(col);
        is_pivot[col] = true;
    }
    Matrix<T> ker(n - rk, n);
    std::size_t krow = 0;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        ker(krow, free) = T(1);
        for (std::size_t i = 0; i < rk; ++i) ker(krow, pivot_col[i]) = -r(i, free);
        ++krow;
    }
    rref_in_place(ker); // canonical representative
    return ker;
}

/// Solve m x = b. Returns false when inconsistent.
template <typename T>
bool solve(const Matrix<T>& m, const std::vector<T>& b, std::vector<T>& x) {
    check_internal(b.size() == m.rows(), "solve shape mismatch");
    Matrix<T> aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::size_t rk = rref_in_place(aug);
    x.assign(m.cols(), T(0));
    for (std::size_t i = 0, col = 0; i < rk; ++i) {
        while (col <= m.cols() && aug(i, col) == T(0)) ++col;
        if (col == m.cols()) return false; // pivot in the constant column
        x[col] = aug(i, m.cols());
    }
    return true;
}

} // namespace bsa
