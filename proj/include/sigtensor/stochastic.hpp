#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sigtensor/matrix.hpp"
#include "sigtensor/shuffle.hpp"

namespace sigtensor {

// Symmetric elimination without pivoting: positive definite iff every pivot is positive.
template <typename S>
bool positive_definite(Matrix<S> a) {
    const int d = a.rows();
    for (int k = 0; k < d; ++k) {
        const S pivot = a(k, k);
        if (!(ScalarTraits<S>::zero() < pivot) || ScalarTraits<S>::near_zero(pivot)) return false;
        for (int i = k + 1; i < d; ++i) {
            const S f = a(i, k) / pivot;
            for (int j = k + 1; j < d; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return true;
}

template <typename S>
struct BrownianModel {
    std::vector<S> mu;
    Matrix<S> sigma;             // symmetric
    std::optional<Matrix<S>> q;  // skew, magnetic part

    int dim() const { return static_cast<int>(mu.size()); }

    void validate(bool require_positive_definite = false) const {
        const int d = dim();
        if (sigma.rows() != d || sigma.cols() != d) throw std::invalid_argument("covariance must be d×d");
        if (!(sigma == sigma.transpose())) throw std::invalid_argument("covariance is not symmetric");
        if (q) {
            if (q->rows() != d || q->cols() != d) throw std::invalid_argument("magnetic part must be d×d");
            if (!(*q + q->transpose()).is_zero()) throw std::invalid_argument("magnetic part is not skew");
        }
        if (require_positive_definite && !positive_definite(sigma)) {
            throw std::invalid_argument("covariance is not positive definite");
        }
    }
};

template <typename S>
struct MixtureModel {
    std::vector<std::pair<S, BrownianModel<S>>> components;
    bool signed_weights = false;
};

// exp(μ + ½Σ + Q) in T^n.
template <typename S>
TensorSeries<S> expected_signature(const BrownianModel<S>& model, int n) {
    model.validate();
    const int d = model.dim();
    TensorSeries<S> gen(d, n);
    if (n >= 1) gen[1] = vector_tensor(model.mu);
    if (n >= 2) {
        const S half = ScalarTraits<S>::one() / ScalarTraits<S>::from_int(2);
        auto& l2 = gen[2];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                S v = half * model.sigma(i, j);
                if (model.q) v += (*model.q)(i, j);
                l2[static_cast<std::size_t>(i * d + j)] = v;
            }
    }
    return exp_series(gen);
}

template <typename S>
TensorSeries<S> mixture_expected_signature(const MixtureModel<S>& mix, int n) {
    if (mix.components.empty()) throw std::invalid_argument("mixture has no components");
    S total = ScalarTraits<S>::zero();
    for (const auto& [w, m] : mix.components) {
        if (!mix.signed_weights && w < ScalarTraits<S>::zero()) throw std::invalid_argument("negative mixture weight");
        total += w;
    }
    if (!ScalarTraits<S>::equal(total, ScalarTraits<S>::one())) throw std::invalid_argument("mixture weights do not sum to 1");
    const int d = mix.components.front().second.dim();
    TensorSeries<S> r(d, n);
    for (const auto& [w, m] : mix.components) r += expected_signature(m, n) * w;
    return r;
}

// σ applied to 1^{⧢u1} ⧢ ... ⧢ d^{⧢ud}.
template <typename S>
S gaussian_moment(const std::vector<int>& u, const TensorSeries<S>& s) {
    if (static_cast<int>(u.size()) != s.dim()) throw std::invalid_argument("multi-index has wrong length");
    std::vector<Word> letters;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < 0) throw std::invalid_argument("negative exponent in multi-index");
        for (int r = 0; r < u[i]; ++r) letters.push_back(Word{static_cast<int>(i) + 1});
    }
    if (static_cast<int>(letters.size()) > s.trunc()) throw std::invalid_argument("moment order exceeds truncation");
    if (letters.empty()) return s.scalar();
    return evaluate_form(shuffle_all(letters), s[static_cast<int>(letters.size())]);
}

}  // namespace sigtensor
