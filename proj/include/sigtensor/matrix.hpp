#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sigtensor/scalar.hpp"

namespace sigtensor {

// Small dense row-major matrix.
template <typename S>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), ScalarTraits<S>::zero()) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
    }
    Matrix(int rows, int cols, std::vector<S> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != static_cast<std::size_t>(rows * cols)) throw std::invalid_argument("matrix data size mismatch");
    }
    static Matrix from_rows(const std::vector<std::vector<S>>& rows) {
        const int r = static_cast<int>(rows.size());
        const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
        Matrix m(r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw std::invalid_argument("ragged matrix rows");
            for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        return m;
    }
    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const S& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    S& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    std::vector<S> column(int j) const {
        std::vector<S> c;
        for (int i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(const S& c) {
        for (auto& x : data_) x *= c;
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const S& c) { return a *= c; }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int l = 0; l < a.cols_; ++l) {
                if (ScalarTraits<S>::is_zero(a(i, l))) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) += a(i, l) * b(l, j);
            }
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    bool is_zero() const {
        for (const auto& x : data_) {
            if (!ScalarTraits<S>::is_zero(x)) return false;
        }
        return true;
    }

private:
    void same_shape(const Matrix& o) const {
        if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<S> data_;
};

template <typename S>
Matrix<S> hconcat(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hconcat row mismatch");
    Matrix<S> r(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

// Exact rank by elimination over Q.
int exact_rank(Matrix<Rational> m);
// Rank from singular values, counting σ > tol·σ_max.
int float_rank(const Matrix<double>& m, double tol = 1e-9);

// Fraction-free (Bareiss) determinant over Q.
Rational determinant(Matrix<Rational> m);

// Basis of the right kernel over Q.
std::vector<std::vector<Rational>> kernel_basis(Matrix<Rational> m);

}  // namespace sigtensor
