#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sigtensor/tensor.hpp"

namespace sigtensor {

// Sparse integer combination of words of a single length; zero terms are never stored.
class WordCombination {
public:
    WordCombination() = default;
    explicit WordCombination(const Word& w, std::int64_t c = 1) { add(w, c); }

    void add(const Word& w, std::int64_t c);
    std::int64_t coeff(const Word& w) const;
    const std::map<Word, std::int64_t>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t word_length() const { return terms_.empty() ? 0 : terms_.begin()->first.size(); }
    std::int64_t mass() const;

    friend bool operator==(const WordCombination&, const WordCombination&) = default;

private:
    std::map<Word, std::int64_t> terms_;
};

WordCombination shuffle_words(const Word& a, const Word& b);
WordCombination shuffle(const WordCombination& a, const WordCombination& b);
// a_1 ⧢ a_2 ⧢ ... ⧢ a_r; the empty list gives the empty word.
WordCombination shuffle_all(const std::vector<Word>& words);

template <typename S>
S evaluate_form(const WordCombination& c, const LevelTensor<S>& t) {
    if (!c.empty() && c.word_length() != static_cast<std::size_t>(t.order())) {
        throw std::invalid_argument("form length does not match tensor order");
    }
    S sum = ScalarTraits<S>::zero();
    for (const auto& [w, k] : c.terms()) sum += ScalarTraits<S>::from_int(k) * t.at(w);
    return sum;
}

template <typename S>
S shuffle_form_eval(const Word& a, const Word& b, const LevelTensor<S>& t) {
    if (a.size() + b.size() != static_cast<std::size_t>(t.order())) {
        throw std::invalid_argument("|I|+|J| does not match tensor order");
    }
    return evaluate_form(shuffle_words(a, b), t);
}

struct ShufflePair {
    Word first;
    Word second;
};

namespace detail {

// Calls f(I, J) for non-empty I, J with |I|+|J| ≤ n, each unordered pair once,
// until f returns false.
template <typename F>
void for_each_shuffle_pair(int d, int n, F&& f) {
    for (int a = 1; 2 * a <= n; ++a) {
        const auto left = all_words(d, a);
        for (int b = a; a + b <= n; ++b) {
            const auto right = all_words(d, b);
            for (std::size_t i = 0; i < left.size(); ++i) {
                for (std::size_t j = (a == b ? i : 0); j < right.size(); ++j) {
                    if (!f(left[i], right[j])) return;
                }
            }
        }
    }
}

}  // namespace detail

template <typename S>
std::optional<ShufflePair> lie_violation(const TensorSeries<S>& s) {
    if (!ScalarTraits<S>::near_zero(s.scalar())) return ShufflePair{};
    std::optional<ShufflePair> bad;
    detail::for_each_shuffle_pair(s.dim(), s.trunc(), [&](const Word& a, const Word& b) {
        const S v = shuffle_form_eval(a, b, s[static_cast<int>(a.size() + b.size())]);
        if (ScalarTraits<S>::near_zero(v)) return true;
        bad = ShufflePair{a, b};
        return false;
    });
    return bad;
}

template <typename S>
bool is_lie(const TensorSeries<S>& s) {
    return !lie_violation(s).has_value();
}

template <typename S>
std::optional<ShufflePair> grouplike_violation(const TensorSeries<S>& s) {
    if (!ScalarTraits<S>::equal(s.scalar(), ScalarTraits<S>::one())) return ShufflePair{};
    std::optional<ShufflePair> bad;
    detail::for_each_shuffle_pair(s.dim(), s.trunc(), [&](const Word& a, const Word& b) {
        const S lhs = shuffle_form_eval(a, b, s[static_cast<int>(a.size() + b.size())]);
        if (ScalarTraits<S>::equal(lhs, s.coeff(a) * s.coeff(b))) return true;
        bad = ShufflePair{a, b};
        return false;
    });
    return bad;
}

template <typename S>
bool is_grouplike(const TensorSeries<S>& s) {
    return !grouplike_violation(s).has_value();
}

}  // namespace sigtensor
