#include "sigtensor/matrix.hpp"

#include <Eigen/Dense>
#include <utility>

namespace sigtensor {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> row_reduce(Matrix<Rational>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = row;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != row) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        }
        const Rational inv = Rational(1) / m(row, col);
        for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const Rational f = m(i, col);
            for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int exact_rank(Matrix<Rational> m) {
    // Bareiss elimination without back substitution.
    if (m.rows() > m.cols()) m = m.transpose();
    int rank = 0;
    Rational prev(1);
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int p = rank;
        while (p < m.rows() && m(p, col).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != rank) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(rank, j));
        }
        for (int i = rank + 1; i < m.rows(); ++i) {
            for (int j = col + 1; j < m.cols(); ++j) {
                m(i, j) = (m(rank, col) * m(i, j) - m(i, col) * m(rank, j)) / prev;
            }
            m(i, col) = Rational(0);
        }
        prev = m(rank, col);
        ++rank;
    }
    return rank;
}

int float_rank(const Matrix<double>& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol * sv(0)) ++r;
    }
    return r;
}

Rational determinant(Matrix<Rational> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return Rational(1);
    Rational prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k).is_zero()) {
            int p = k + 1;
            while (p < n && m(p, k).is_zero()) ++p;
            if (p == n) return Rational(0);
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

std::vector<std::vector<Rational>> kernel_basis(Matrix<Rational> m) {
    const auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(m.cols()), Rational(0));
        v[static_cast<std::size_t>(free)] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[static_cast<std::size_t>(pivots[r])] = -m(static_cast<int>(r), free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace sigtensor
