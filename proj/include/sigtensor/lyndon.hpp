#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "sigtensor/shuffle.hpp"

namespace sigtensor {

struct LyndonBasis {
    int dim = 0;
    int trunc = 0;
    std::vector<Word> words;  // lexicographic order
    std::uint64_t count = 0;  // from the Möbius formula
};

bool is_lyndon(const Word& w);

// Duval enumeration of Lyndon words of length 1..n.
std::vector<Word> lyndon_words(int d, int n);
LyndonBasis lyndon_basis(int d, int n);

// Number of Lyndon words of length exactly k, and of length at most n.
std::uint64_t lyndon_count_length(int d, int k);
std::uint64_t lyndon_count(int d, int n);

// I = I1 I2 with I2 the longest proper right factor that is Lyndon.
std::pair<Word, Word> standard_factorization(const Word& lyndon);

// b(I) as an integer combination of words of length |I|.
WordCombination bracketing_combination(const Word& lyndon);

template <typename S>
TensorSeries<S> bracketing(const Word& lyndon, int d, int n) {
    if (static_cast<int>(lyndon.size()) > n) throw std::invalid_argument("bracket longer than truncation");
    TensorSeries<S> s(d, n);
    auto& level = s[static_cast<int>(lyndon.size())];
    const WordCombination b = bracketing_combination(lyndon);
    for (const auto& [w, c] : b.terms()) level.at(w) = ScalarTraits<S>::from_int(c);
    return s;
}

// Chen–Fox–Lyndon factorization into non-increasing Lyndon words.
std::vector<Word> cfl_factorization(const Word& w);

// A monomial in Lyndon variables is a sorted multiset of Lyndon words.
using Monomial = std::vector<Word>;
using LyndonPolynomial = std::map<Monomial, Rational>;

// φ_I for every word of length 1..n, built eagerly so lookups are read-only.
class NormalFormTable {
public:
    NormalFormTable(int d, int n);

    int dim() const { return dim_; }
    int trunc() const { return trunc_; }
    const LyndonPolynomial& phi(const Word& w) const;
    const std::vector<Word>& lyndon() const { return lyndon_; }

    template <typename S>
    S evaluate(const Word& w, const std::map<Word, S>& values) const {
        S sum = ScalarTraits<S>::zero();
        for (const auto& [mono, c] : phi(w)) {
            S term = ScalarTraits<S>::from_rational(c);
            for (const auto& v : mono) {
                const auto it = values.find(v);
                if (it == values.end()) throw std::invalid_argument("missing Lyndon value for " + v.str());
                term *= it->second;
            }
            sum += term;
        }
        return sum;
    }

private:
    int dim_;
    int trunc_;
    std::vector<Word> lyndon_;
    std::vector<std::vector<LyndonPolynomial>> table_;  // [length][word index]
};

LyndonPolynomial normal_form(const Word& w, int d, int n);

template <typename S>
std::map<Word, S> lyndon_coordinates(const TensorSeries<S>& s) {
    std::map<Word, S> out;
    for (const auto& w : lyndon_words(s.dim(), s.trunc())) out.emplace(w, s.coeff(w));
    return out;
}

template <typename S>
TensorSeries<S> expand_from_lyndon(const NormalFormTable& table, const std::map<Word, S>& values) {
    auto s = TensorSeries<S>::unit(table.dim(), table.trunc());
    for (int k = 1; k <= table.trunc(); ++k) {
        auto& level = s[k];
        for (std::size_t i = 0; i < level.size(); ++i) {
            level[i] = table.evaluate(index_word(i, table.dim(), k), values);
        }
    }
    return s;
}

template <typename S>
TensorSeries<S> expand_from_lyndon(const std::map<Word, S>& values, int d, int n) {
    return expand_from_lyndon(NormalFormTable(d, n), values);
}

}  // namespace sigtensor
