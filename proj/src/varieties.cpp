#include "sigtensor/varieties.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace sigtensor {

std::vector<std::vector<int>> subsets(int n, int r) {
    std::vector<std::vector<int>> out;
    if (r < 0 || r > n) return out;
    std::vector<int> cur(static_cast<std::size_t>(r));
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - r + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

Matrix<Rational> mono_matrix(int d) {
    Matrix<Rational> m(d, d);
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) m(i - 1, j - 1) = Rational(j, i + j);
    return m;
}

Matrix<Rational> mono_core_slice(int d) {
    Matrix<Rational> m(d, d);
    for (int j = 1; j <= d; ++j)
        for (int k = 1; k <= d; ++k) m(j - 1, k - 1) = Rational(j * k, (j + 1) * (j + k + 1));
    return m;
}

namespace {

Rational vandermonde_square(int d) {
    Rational v(1);
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) v *= Rational((j - i) * (j - i));
    return v;
}

Rational sum_product(int d, int shift) {
    Rational p(1);
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) p *= Rational(i + j + shift);
    return p;
}

}  // namespace

Rational cauchy_det(int d) {
    return factorial(d) * vandermonde_square(d) / sum_product(d, 0);
}

Rational mono_core_det(int d) {
    return factorial(d) / Rational(d + 1) * vandermonde_square(d) / sum_product(d, 1);
}

namespace {

Eigen::MatrixXd mono_float(int d) {
    Eigen::MatrixXd m(d, d);
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) m(i - 1, j - 1) = static_cast<double>(j) / (i + j);
    return m;
}

Eigen::MatrixXd axis_float(int d) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        a(i, i) = 0.5;
        for (int j = i + 1; j < d; ++j) a(i, j) = 1.0;
    }
    return a;
}

double residual(const Eigen::MatrixXd& h) {
    const auto d = static_cast<int>(h.rows());
    return (h * mono_float(d) * h.transpose() - axis_float(d)).cwiseAbs().maxCoeff();
}

}  // namespace

Matrix<double> build_congruence(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    Eigen::MatrixXd h = Eigen::MatrixXd::Ones(1, 1);
    for (int n = 1; n < d; ++n) {
        // Extend from dimension n to n+1; the new coordinate comes first in H.
        const Eigen::MatrixXd m = mono_float(n);
        Eigen::VectorXd r(n);
        for (int j = 1; j <= n; ++j) r(j - 1) = static_cast<double>(j) / (n + 1 + j);
        // (x^T M + y r) H^T = 1  ⇔  M^T x = H^{-1} 1 − y r^T, so x = a + y b.
        const auto mt = m.transpose().fullPivLu();
        const Eigen::VectorXd hinv1 = h.fullPivLu().solve(Eigen::VectorXd::Ones(n));
        const Eigen::VectorXd a = mt.solve(hinv1);
        const Eigen::VectorXd b = mt.solve(-r);
        // y (r·x + y/2) = 1/2 with x = a + y b.
        const double qa = r.dot(b) + 0.5;
        const double qb = r.dot(a);
        const double qc = -0.5;
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc < 0.0 || qa == 0.0) throw std::runtime_error("no real root in congruence step " + std::to_string(n + 1));
        const double sq = std::sqrt(disc);
        double best = std::numeric_limits<double>::infinity();
        Eigen::MatrixXd chosen;
        for (double y : {(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)}) {
            const Eigen::VectorXd x = a + y * b;
            Eigen::MatrixXd next = Eigen::MatrixXd::Zero(n + 1, n + 1);
            next.block(0, 0, 1, n) = x.transpose();
            next(0, n) = y;
            next.block(1, 0, n, n) = h;
            const double res = residual(next);
            if (res < best) {
                best = res;
                chosen = next;
            }
        }
        h = chosen;
    }
    Matrix<double> out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out(i, j) = h(i, j);
    return out;
}

double congruence_residual(const Matrix<double>& h) {
    Eigen::MatrixXd e(h.rows(), h.cols());
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j) e(i, j) = h(i, j);
    return residual(e);
}

}  // namespace sigtensor
