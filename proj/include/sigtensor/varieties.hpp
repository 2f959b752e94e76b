#pragma once

#include <string>
#include <vector>

#include "sigtensor/matrix.hpp"
#include "sigtensor/tensor.hpp"

namespace sigtensor {

template <typename S>
Matrix<S> level_to_matrix(const LevelTensor<S>& t) {
    if (t.order() != 2) throw std::invalid_argument("matrix view needs an order-2 tensor");
    const int d = t.dim();
    Matrix<S> m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = t[static_cast<std::size_t>(i * d + j)];
    return m;
}

template <typename S>
LevelTensor<S> matrix_to_level(const Matrix<S>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("order-2 tensor needs a square matrix");
    const int d = m.rows();
    LevelTensor<S> t(d, 2);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) t[static_cast<std::size_t>(i * d + j)] = m(i, j);
    return t;
}

template <typename S>
struct MatrixPencil {
    Matrix<S> P;  // symmetric part
    Matrix<S> Q;  // skew part
};

template <typename S>
MatrixPencil<S> split_pencil(const Matrix<S>& s) {
    if (s.rows() != s.cols()) throw std::invalid_argument("pencil split needs a square matrix");
    const S half = ScalarTraits<S>::one() / ScalarTraits<S>::from_int(2);
    const auto t = s.transpose();
    return {(s + t) * half, (s - t) * half};
}

inline int rank_of(const Matrix<Rational>& m) { return exact_rank(m); }
inline int rank_of(const Matrix<double>& m) { return float_rank(m); }

// rank(P) ≤ 1 and rank([P Q]) ≤ m.
template <typename S>
bool membership_Mdm(const Matrix<S>& s, int m) {
    const auto pencil = split_pencil(s);
    return rank_of(pencil.P) <= 1 && rank_of(hconcat(pencil.P, pencil.Q)) <= m;
}

// Pfaffian of the principal submatrix on `idx`, expanded along the first row.
template <typename S>
S pfaffian(const Matrix<S>& q, const std::vector<int>& idx) {
    if (idx.size() % 2 != 0) throw std::invalid_argument("pfaffian of odd size");
    if (idx.empty()) return ScalarTraits<S>::one();
    S sum = ScalarTraits<S>::zero();
    for (std::size_t j = 1; j < idx.size(); ++j) {
        const S& a = q(idx[0], idx[j]);
        if (ScalarTraits<S>::is_zero(a)) continue;
        std::vector<int> rest;
        for (std::size_t r = 1; r < idx.size(); ++r) {
            if (r != j) rest.push_back(idx[r]);
        }
        const S term = a * pfaffian(q, rest);
        if (j % 2 == 1) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

template <typename S>
S pfaffian(const Matrix<S>& q) {
    std::vector<int> idx(static_cast<std::size_t>(q.rows()));
    std::iota(idx.begin(), idx.end(), 0);
    return pfaffian(q, idx);
}

// All r-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int r);

// Column I (an (m+1)-subset) has entry (-1)^{pos of i in I} pf(Q restricted to I∖{i}) at i ∈ I.
template <typename S>
Matrix<S> circuit_matrix(const Matrix<S>& q, int m) {
    if (m % 2 != 0) throw std::invalid_argument("circuit matrix needs even m");
    const int d = q.rows();
    const auto cols = subsets(d, m + 1);
    Matrix<S> c(d, static_cast<int>(cols.size()));
    for (std::size_t col = 0; col < cols.size(); ++col) {
        const auto& subset = cols[col];
        for (std::size_t pos = 0; pos < subset.size(); ++pos) {
            std::vector<int> rest;
            for (std::size_t r = 0; r < subset.size(); ++r) {
                if (r != pos) rest.push_back(subset[r]);
            }
            const S pf = pfaffian(q, rest);
            c(subset[pos], static_cast<int>(col)) = (pos % 2 == 0) ? pf : -pf;
        }
    }
    return c;
}

template <typename S>
struct GeneratorValue {
    std::string label;
    S value;
};

template <typename S>
S minor2(const Matrix<S>& a, int r1, int r2, int c1, int c2) {
    return a(r1, c1) * a(r2, c2) - a(r1, c2) * a(r2, c1);
}

// 2-minors of P (one per unordered pair of row/column pairs), then the
// (m+1)-pfaffians of Q for odd m, or the (m+2)-pfaffians of Q and the
// entries of P·C_m(Q) for even m.
template <typename S>
std::vector<GeneratorValue<S>> generator_values(const Matrix<S>& s, int m) {
    const auto pencil = split_pencil(s);
    const int d = s.rows();
    std::vector<GeneratorValue<S>> out;
    const auto pairs = subsets(d, 2);
    auto name = [](const std::vector<int>& v) {
        std::string r;
        for (int i : v) r += std::to_string(i + 1);
        return r;
    };
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        for (std::size_t b = a; b < pairs.size(); ++b) {
            out.push_back({"minor(P;" + name(pairs[a]) + "," + name(pairs[b]) + ")",
                           minor2(pencil.P, pairs[a][0], pairs[a][1], pairs[b][0], pairs[b][1])});
        }
    }
    const int pf_size = (m % 2 == 1) ? m + 1 : m + 2;
    if (pf_size <= d) {
        for (const auto& idx : subsets(d, pf_size)) {
            out.push_back({"pfaffian(Q;" + name(idx) + ")", pfaffian(pencil.Q, idx)});
        }
    }
    if (m % 2 == 0 && m + 1 <= d) {
        const auto pc = pencil.P * circuit_matrix(pencil.Q, m);
        for (int i = 0; i < pc.rows(); ++i)
            for (int j = 0; j < pc.cols(); ++j) {
                out.push_back({"PC(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", pc(i, j)});
            }
    }
    return out;
}

// M^{[d]} with entries j/(i+j).
Matrix<Rational> mono_matrix(int d);
// Mono core slice with entries jk/((j+1)(j+k+1)).
Matrix<Rational> mono_core_slice(int d);
// Closed forms d!·Π(j−i)²/ΠΠ(i+j) and d!/(d+1)·Π(j−i)²/ΠΠ(i+j+1).
Rational cauchy_det(int d);
Rational mono_core_det(int d);

// H with H·M^{[d]}·H^T equal to the axis matrix, built one dimension at a time.
Matrix<double> build_congruence(int d);
double congruence_residual(const Matrix<double>& h);

}  // namespace sigtensor
