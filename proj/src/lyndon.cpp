#include "sigtensor/lyndon.hpp"

#include <algorithm>

namespace sigtensor {

bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    const auto& l = w.letters();
    for (std::size_t r = 1; r < l.size(); ++r) {
        std::vector<int> rot(l.begin() + static_cast<std::ptrdiff_t>(r), l.end());
        rot.insert(rot.end(), l.begin(), l.begin() + static_cast<std::ptrdiff_t>(r));
        if (!(l < rot)) return false;
    }
    return true;
}

std::vector<Word> lyndon_words(int d, int n) {
    std::vector<Word> out;
    if (d < 1 || n < 1) return out;
    std::vector<int> w{1};
    while (!w.empty()) {
        out.emplace_back(w);
        const std::size_t period = w.size();
        while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - period]);
        while (!w.empty() && w.back() == d) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

LyndonBasis lyndon_basis(int d, int n) {
    return LyndonBasis{d, n, lyndon_words(d, n), lyndon_count(d, n)};
}

namespace {

int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

}  // namespace

std::uint64_t lyndon_count_length(int d, int k) {
    __int128 sum = 0;
    for (int l = 1; l <= k; ++l) {
        if (k % l != 0) continue;
        sum += static_cast<__int128>(mobius(l)) * static_cast<__int128>(power(static_cast<std::size_t>(d), static_cast<std::size_t>(k / l)));
    }
    return static_cast<std::uint64_t>(sum / k);
}

std::uint64_t lyndon_count(int d, int n) {
    std::uint64_t total = 0;
    for (int k = 1; k <= n; ++k) total += lyndon_count_length(d, k);
    return total;
}

std::pair<Word, Word> standard_factorization(const Word& lyndon) {
    if (!is_lyndon(lyndon)) throw std::invalid_argument("not a Lyndon word: " + lyndon.str());
    if (lyndon.size() < 2) throw std::invalid_argument("single letters have no standard factorization");
    for (std::size_t pos = 1; pos < lyndon.size(); ++pos) {
        Word right = lyndon.suffix_from(pos);
        if (is_lyndon(right)) return {lyndon.prefix(pos), std::move(right)};
    }
    throw std::logic_error("Lyndon word without Lyndon suffix");
}

namespace {

WordCombination concat(const WordCombination& a, const WordCombination& b) {
    WordCombination r;
    for (const auto& [wa, ca] : a.terms()) {
        for (const auto& [wb, cb] : b.terms()) r.add(wa + wb, ca * cb);
    }
    return r;
}

}  // namespace

WordCombination bracketing_combination(const Word& lyndon) {
    if (lyndon.size() == 1) return WordCombination{lyndon};
    const auto [left, right] = standard_factorization(lyndon);
    const auto bl = bracketing_combination(left);
    const auto br = bracketing_combination(right);
    WordCombination r = concat(bl, br);
    const WordCombination swapped = concat(br, bl);
    for (const auto& [w, c] : swapped.terms()) r.add(w, -c);
    return r;
}

std::vector<Word> cfl_factorization(const Word& w) {
    // Duval's factorization algorithm.
    std::vector<Word> out;
    const auto& s = w.letters();
    const std::size_t n = s.size();
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        std::size_t k = i;
        while (j < n && s[k] <= s[j]) {
            k = (s[k] < s[j]) ? i : k + 1;
            ++j;
        }
        while (i <= k) {
            out.emplace_back(std::vector<int>(s.begin() + static_cast<std::ptrdiff_t>(i),
                                              s.begin() + static_cast<std::ptrdiff_t>(i + j - k)));
            i += j - k;
        }
    }
    return out;
}

NormalFormTable::NormalFormTable(int d, int n) : dim_(d), trunc_(n), lyndon_(lyndon_words(d, n)) {
    table_.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) {
        auto& row = table_[static_cast<std::size_t>(k)];
        const auto words = all_words(d, k);
        row.resize(words.size());
        // Index order is lexicographic, so every word the rewrite refers to is done.
        for (std::size_t idx = 0; idx < words.size(); ++idx) {
            const Word& w = words[idx];
            auto factors = cfl_factorization(w);
            if (factors.size() == 1) {
                row[idx][Monomial{w}] = Rational(1);
                continue;
            }
            const WordCombination expansion = shuffle_all(factors);
            const Rational lead(expansion.coeff(w));
            Monomial mono = factors;
            std::sort(mono.begin(), mono.end());
            LyndonPolynomial poly;
            poly[mono] = Rational(1) / lead;
            for (const auto& [v, c] : expansion.terms()) {
                if (v == w) continue;
                const std::size_t vi = word_index(v, d);
                if (vi >= idx) throw std::logic_error("normal form rewrite did not descend at " + w.str());
                const Rational scale = Rational(-c) / lead;
                for (const auto& [m, coef] : row[vi]) {
                    auto& slot = poly[m];
                    slot += scale * coef;
                    if (slot.is_zero()) poly.erase(m);
                }
            }
            row[idx] = std::move(poly);
        }
    }
}

const LyndonPolynomial& NormalFormTable::phi(const Word& w) const {
    if (w.empty() || static_cast<int>(w.size()) > trunc_) throw std::out_of_range("word length outside 1..n");
    return table_[w.size()][word_index(w, dim_)];
}

LyndonPolynomial normal_form(const Word& w, int d, int n) {
    return NormalFormTable(d, n).phi(w);
}

}  // namespace sigtensor
