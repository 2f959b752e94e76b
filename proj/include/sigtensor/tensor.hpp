#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigtensor/scalar.hpp"
#include "sigtensor/word.hpp"

namespace sigtensor {

// Dense order-k tensor over K^d, entries indexed by word_index.
template <typename S>
class LevelTensor {
public:
    LevelTensor() : LevelTensor(1, 0) {}
    LevelTensor(int dim, int order)
        : dim_(dim), order_(order),
          entries_(power(static_cast<std::size_t>(dim), static_cast<std::size_t>(order)), ScalarTraits<S>::zero()) {
        if (dim < 1 || order < 0) throw std::invalid_argument("bad tensor shape");
    }
    LevelTensor(int dim, int order, std::vector<S> entries) : dim_(dim), order_(order), entries_(std::move(entries)) {
        if (entries_.size() != power(static_cast<std::size_t>(dim), static_cast<std::size_t>(order))) {
            throw std::invalid_argument("entry count does not match d^k");
        }
    }

    int dim() const { return dim_; }
    int order() const { return order_; }
    std::size_t size() const { return entries_.size(); }

    const S& operator[](std::size_t i) const { return entries_[i]; }
    S& operator[](std::size_t i) { return entries_[i]; }
    const S& at(const Word& w) const { return entries_[checked_index(w)]; }
    S& at(const Word& w) { return entries_[checked_index(w)]; }
    std::span<const S> entries() const { return entries_; }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const S& x) { return ScalarTraits<S>::is_zero(x); });
    }

    LevelTensor& operator+=(const LevelTensor& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
        return *this;
    }
    LevelTensor& operator-=(const LevelTensor& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
        return *this;
    }
    LevelTensor& operator*=(const S& c) {
        for (auto& e : entries_) e *= c;
        return *this;
    }
    friend LevelTensor operator+(LevelTensor a, const LevelTensor& b) { return a += b; }
    friend LevelTensor operator-(LevelTensor a, const LevelTensor& b) { return a -= b; }
    friend LevelTensor operator*(LevelTensor a, const S& c) { return a *= c; }
    friend LevelTensor operator*(const S& c, LevelTensor a) { return a *= c; }
    friend LevelTensor operator-(LevelTensor a) {
        for (auto& e : a.entries_) e = -e;
        return a;
    }
    friend bool operator==(const LevelTensor& a, const LevelTensor& b) {
        return a.dim_ == b.dim_ && a.order_ == b.order_ && a.entries_ == b.entries_;
    }

private:
    std::size_t checked_index(const Word& w) const {
        if (static_cast<int>(w.size()) != order_) {
            throw std::out_of_range("word length " + std::to_string(w.size()) + " does not match order " +
                                    std::to_string(order_));
        }
        return word_index(w, dim_);
    }
    void require_same_shape(const LevelTensor& o) const {
        if (o.dim_ != dim_ || o.order_ != order_) throw std::invalid_argument("tensor shape mismatch");
    }

    int dim_;
    int order_;
    std::vector<S> entries_;
};

template <typename S>
LevelTensor<S> outer(const LevelTensor<S>& a, const LevelTensor<S>& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in outer product");
    LevelTensor<S> r(a.dim(), a.order() + b.order());
    const std::size_t nb = b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ScalarTraits<S>::is_zero(a[i])) continue;
        for (std::size_t j = 0; j < nb; ++j) r[i * nb + j] = a[i] * b[j];
    }
    return r;
}

template <typename S>
LevelTensor<S> vector_tensor(const std::vector<S>& v) {
    return LevelTensor<S>(static_cast<int>(v.size()), 1, v);
}

// v^{⊗k}
template <typename S>
LevelTensor<S> tensor_power(const std::vector<S>& v, int k) {
    LevelTensor<S> r(static_cast<int>(v.size()), 0);
    r[0] = ScalarTraits<S>::one();
    const auto x = vector_tensor(v);
    for (int i = 0; i < k; ++i) r = outer(r, x);
    return r;
}

// Sum over all k! position permutations (no averaging), so that for a
// group-like level the entry at i1..ik equals the shuffle form of i1,...,ik.
template <typename S>
LevelTensor<S> symmetrize(const LevelTensor<S>& t) {
    const int k = t.order();
    LevelTensor<S> r(t.dim(), k);
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
        const Word w = index_word(idx, t.dim(), k);
        std::iota(perm.begin(), perm.end(), 0);
        S sum = ScalarTraits<S>::zero();
        do {
            std::vector<int> letters(static_cast<std::size_t>(k));
            for (int j = 0; j < k; ++j) letters[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
            sum += t[word_index(Word(std::move(letters)), t.dim())];
        } while (std::next_permutation(perm.begin(), perm.end()));
        r[idx] = sum;
    }
    return r;
}

// Element of T^n(K^d); level 0 is stored explicitly.
template <typename S>
class TensorSeries {
public:
    TensorSeries(int dim, int trunc) : dim_(dim), trunc_(trunc) {
        if (dim < 1 || trunc < 0) throw std::invalid_argument("bad series shape");
        levels_.reserve(static_cast<std::size_t>(trunc) + 1);
        for (int k = 0; k <= trunc; ++k) levels_.emplace_back(dim, k);
    }
    TensorSeries(int dim, std::vector<LevelTensor<S>> levels) : dim_(dim), levels_(std::move(levels)) {
        if (levels_.empty()) throw std::invalid_argument("series needs level 0");
        trunc_ = static_cast<int>(levels_.size()) - 1;
        for (int k = 0; k <= trunc_; ++k) {
            const auto& l = levels_[static_cast<std::size_t>(k)];
            if (l.dim() != dim || l.order() != k) throw std::invalid_argument("series level has wrong shape");
        }
    }

    static TensorSeries unit(int dim, int trunc) {
        TensorSeries s(dim, trunc);
        s.levels_[0][0] = ScalarTraits<S>::one();
        return s;
    }

    int dim() const { return dim_; }
    int trunc() const { return trunc_; }
    const LevelTensor<S>& level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
    LevelTensor<S>& level(int k) { return levels_.at(static_cast<std::size_t>(k)); }
    const LevelTensor<S>& operator[](int k) const { return level(k); }
    LevelTensor<S>& operator[](int k) { return level(k); }
    const S& scalar() const { return levels_[0][0]; }
    S& scalar() { return levels_[0][0]; }

    // Coefficient of a word of length ≤ n (empty word is level 0).
    const S& coeff(const Word& w) const { return level(static_cast<int>(w.size())).at(w); }
    S& coeff(const Word& w) { return level(static_cast<int>(w.size())).at(w); }

    bool is_zero() const {
        return std::all_of(levels_.begin(), levels_.end(), [](const auto& l) { return l.is_zero(); });
    }

    TensorSeries& operator+=(const TensorSeries& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < levels_.size(); ++k) levels_[k] += o.levels_[k];
        return *this;
    }
    TensorSeries& operator-=(const TensorSeries& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < levels_.size(); ++k) levels_[k] -= o.levels_[k];
        return *this;
    }
    TensorSeries& operator*=(const S& c) {
        for (auto& l : levels_) l *= c;
        return *this;
    }
    friend TensorSeries operator+(TensorSeries a, const TensorSeries& b) { return a += b; }
    friend TensorSeries operator-(TensorSeries a, const TensorSeries& b) { return a -= b; }
    friend TensorSeries operator*(TensorSeries a, const S& c) { return a *= c; }
    friend TensorSeries operator*(const S& c, TensorSeries a) { return a *= c; }
    friend TensorSeries operator-(TensorSeries a) {
        for (auto& l : a.levels_) l = -l;
        return a;
    }
    friend bool operator==(const TensorSeries& a, const TensorSeries& b) {
        return a.dim_ == b.dim_ && a.trunc_ == b.trunc_ && a.levels_ == b.levels_;
    }

    void require_same_shape(const TensorSeries& o) const {
        if (o.dim_ != dim_ || o.trunc_ != trunc_) {
            throw std::invalid_argument("series shape mismatch: (d=" + std::to_string(dim_) + ", n=" +
                                        std::to_string(trunc_) + ") vs (d=" + std::to_string(o.dim_) +
                                        ", n=" + std::to_string(o.trunc_) + ")");
        }
    }

private:
    int dim_;
    int trunc_;
    std::vector<LevelTensor<S>> levels_;
};

template <typename S>
LevelTensor<S> project_level(const TensorSeries<S>& s, int k) {
    if (k < 0 || k > s.trunc()) throw std::out_of_range("level " + std::to_string(k) + " above truncation");
    return s.level(k);
}

// Same element viewed in T^n for another n: drops or zero-pads levels.
template <typename S>
TensorSeries<S> retruncate(const TensorSeries<S>& s, int n) {
    TensorSeries<S> r(s.dim(), n);
    for (int k = 0; k <= std::min(n, s.trunc()); ++k) r[k] = s[k];
    return r;
}

template <typename S>
TensorSeries<S> series_from_level(const LevelTensor<S>& t, int n) {
    TensorSeries<S> r(t.dim(), n);
    r[t.order()] = t;
    return r;
}

template <typename S>
TensorSeries<S> concat_product(const TensorSeries<S>& a, const TensorSeries<S>& b) {
    a.require_same_shape(b);
    const int n = a.trunc();
    TensorSeries<S> r(a.dim(), n);
    for (int p = 0; p <= n; ++p) {
        if (a[p].is_zero()) continue;
        for (int q = 0; p + q <= n; ++q) {
            if (b[q].is_zero()) continue;
            r[p + q] += outer(a[p], b[q]);
        }
    }
    return r;
}

template <typename S>
TensorSeries<S> exp_series(const TensorSeries<S>& p) {
    if (!ScalarTraits<S>::near_zero(p.scalar())) throw std::domain_error("exp needs zero constant term");
    const int n = p.trunc();
    // Horner form 1 + p(1 + p/2(1 + p/3(...)))
    auto result = TensorSeries<S>::unit(p.dim(), n);
    for (int r = n; r >= 1; --r) {
        auto next = concat_product(p, result);
        next *= ScalarTraits<S>::one() / ScalarTraits<S>::from_int(r);
        next.scalar() += ScalarTraits<S>::one();
        result = std::move(next);
    }
    return result;
}

template <typename S>
TensorSeries<S> log_series(const TensorSeries<S>& q) {
    if (!ScalarTraits<S>::equal(q.scalar(), ScalarTraits<S>::one())) {
        throw std::domain_error("log needs constant term 1");
    }
    const int n = q.trunc();
    auto x = q;
    x.scalar() = ScalarTraits<S>::zero();
    if (n == 0) return x;
    auto coef = [](int r) {
        S c = ScalarTraits<S>::one() / ScalarTraits<S>::from_int(r);
        return (r % 2 == 1) ? c : -c;
    };
    // x(c_1 + x(c_2 + x(...)))
    TensorSeries<S> h(q.dim(), n);
    h.scalar() = coef(n);
    for (int r = n - 1; r >= 1; --r) {
        h = concat_product(x, h);
        h.scalar() += coef(r);
    }
    return concat_product(x, h);
}

template <typename S>
TensorSeries<S> letter_series(int dim, int n, int letter, const S& c = ScalarTraits<S>::one()) {
    TensorSeries<S> s(dim, n);
    if (n >= 1) s[1][static_cast<std::size_t>(letter - 1)] = c;
    return s;
}

template <typename S>
TensorSeries<S> vector_series(const std::vector<S>& v, int n) {
    TensorSeries<S> s(static_cast<int>(v.size()), n);
    if (n >= 1) s[1] = vector_tensor(v);
    return s;
}

template <typename S>
TensorSeries<S> lie_bracket(const TensorSeries<S>& a, const TensorSeries<S>& b) {
    return concat_product(a, b) - concat_product(b, a);
}

template <typename T, typename S>
LevelTensor<T> convert_level(const LevelTensor<S>& t) {
    std::vector<T> e;
    e.reserve(t.size());
    for (const auto& x : t.entries()) e.push_back(ScalarTraits<T>::from_rational(x));
    return LevelTensor<T>(t.dim(), t.order(), std::move(e));
}

template <typename T, typename S>
TensorSeries<T> convert_series(const TensorSeries<S>& s) {
    std::vector<LevelTensor<T>> levels;
    for (int k = 0; k <= s.trunc(); ++k) levels.push_back(convert_level<T>(s[k]));
    return TensorSeries<T>(s.dim(), std::move(levels));
}

}  // namespace sigtensor
