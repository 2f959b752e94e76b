#include "sigtensor/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace sigtensor {

Word Word::parse(std::string_view digits) {
    std::vector<int> letters;
    letters.reserve(digits.size());
    for (char c : digits) {
        if (c < '1' || c > '9') throw std::invalid_argument("bad word: " + std::string(digits));
        letters.push_back(c - '0');
    }
    return Word(std::move(letters));
}

std::string Word::str() const {
    std::string s;
    s.reserve(letters_.size());
    for (int l : letters_) {
        if (l < 1 || l > 9) throw std::out_of_range("letter has no digit form: " + std::to_string(l));
        s.push_back(static_cast<char>('0' + l));
    }
    return s;
}

Word Word::prefix(std::size_t n) const {
    return Word(std::vector<int>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Word Word::suffix_from(std::size_t pos) const {
    return Word(std::vector<int>(letters_.begin() + static_cast<std::ptrdiff_t>(pos), letters_.end()));
}

int Word::max_letter() const {
    return letters_.empty() ? 0 : *std::max_element(letters_.begin(), letters_.end());
}

Word operator+(const Word& a, const Word& b) {
    std::vector<int> l = a.letters_;
    l.insert(l.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(l));
}

std::size_t power(std::size_t base, std::size_t exponent) {
    std::size_t r = 1;
    while (exponent-- > 0) r *= base;
    return r;
}

std::size_t word_index(const Word& w, int d) {
    std::size_t idx = 0;
    for (int l : w) {
        if (l < 1 || l > d) throw std::out_of_range("letter " + std::to_string(l) + " outside 1.." + std::to_string(d));
        idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(l - 1);
    }
    return idx;
}

Word index_word(std::size_t index, int d, int k) {
    if (d < 1 || k < 0 || index >= power(static_cast<std::size_t>(d), static_cast<std::size_t>(k))) {
        throw std::out_of_range("word index out of range");
    }
    std::vector<int> letters(static_cast<std::size_t>(k));
    for (int j = k - 1; j >= 0; --j) {
        letters[static_cast<std::size_t>(j)] = static_cast<int>(index % static_cast<std::size_t>(d)) + 1;
        index /= static_cast<std::size_t>(d);
    }
    return Word(std::move(letters));
}

std::vector<Word> all_words(int d, int k) {
    const std::size_t n = power(static_cast<std::size_t>(d), static_cast<std::size_t>(k));
    std::vector<Word> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(index_word(i, d, k));
    return out;
}

}  // namespace sigtensor
