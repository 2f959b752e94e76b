#pragma once

#include <random>

#include "sigtensor/lyndon.hpp"
#include "sigtensor/paths.hpp"

namespace sigtensor::testing {

using Q = Rational;

inline Q random_rational(std::mt19937_64& rng, int span = 5, int max_den = 4) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, max_den);
    return Q(num(rng), den(rng));
}

inline Q random_nonzero(std::mt19937_64& rng, int span = 5, int max_den = 4) {
    Q q;
    do {
        q = random_rational(rng, span, max_den);
    } while (q.is_zero());
    return q;
}

inline std::vector<Q> random_vector(std::mt19937_64& rng, int d) {
    std::vector<Q> v;
    for (int i = 0; i < d; ++i) v.push_back(random_rational(rng));
    return v;
}

inline Matrix<Q> random_matrix(std::mt19937_64& rng, int rows, int cols) {
    Matrix<Q> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = random_rational(rng);
    return m;
}

inline Matrix<Q> random_skew(std::mt19937_64& rng, int d) {
    Matrix<Q> m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            m(i, j) = random_rational(rng);
            m(j, i) = -m(i, j);
        }
    return m;
}

inline Matrix<Q> random_symmetric(std::mt19937_64& rng, int d) {
    Matrix<Q> m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            m(i, j) = random_rational(rng);
            m(j, i) = m(i, j);
        }
    return m;
}

inline TensorSeries<Q> random_series(std::mt19937_64& rng, int d, int n, Q constant) {
    TensorSeries<Q> s(d, n);
    s.scalar() = constant;
    for (int k = 1; k <= n; ++k)
        for (std::size_t i = 0; i < s[k].size(); ++i) s[k][i] = random_rational(rng);
    return s;
}

// Random combination of Lyndon brackets of length ≤ degree, embedded in T^n.
inline TensorSeries<Q> random_lie(std::mt19937_64& rng, int d, int n, int degree = -1) {
    if (degree < 0) degree = n;
    TensorSeries<Q> s(d, n);
    for (const auto& w : lyndon_words(d, std::min(degree, n))) {
        s += bracketing<Q>(w, d, n) * random_rational(rng);
    }
    return s;
}

inline TensorSeries<Q> random_grouplike(std::mt19937_64& rng, int d, int n) {
    return exp_series(random_lie(rng, d, n));
}

inline PiecewiseLinear<Q> random_pl(std::mt19937_64& rng, int d, int m) {
    PiecewiseLinear<Q> p{d, {}};
    for (int j = 0; j < m; ++j) p.steps.push_back(random_vector(rng, d));
    return p;
}

inline PolynomialPath<Q> random_poly(std::mt19937_64& rng, int d, int m) {
    return PolynomialPath<Q>{random_matrix(rng, d, m)};
}

// E[prod Z_i] for Z ~ N(mu, sigma), summing over pairings of the index list.
inline Q isserlis(const std::vector<int>& idx, const std::vector<Q>& mu, const Matrix<Q>& sigma) {
    if (idx.empty()) return Q(1);
    const int first = idx[0];
    std::vector<int> rest(idx.begin() + 1, idx.end());
    Q total = mu[static_cast<std::size_t>(first)] * isserlis(rest, mu, sigma);
    for (std::size_t j = 0; j < rest.size(); ++j) {
        std::vector<int> remaining;
        for (std::size_t r = 0; r < rest.size(); ++r) {
            if (r != j) remaining.push_back(rest[r]);
        }
        total += sigma(first, rest[j]) * isserlis(remaining, mu, sigma);
    }
    return total;
}

inline Q at(const LevelTensor<Q>& t, const char* w) { return t.at(Word::parse(w)); }

}  // namespace sigtensor::testing
