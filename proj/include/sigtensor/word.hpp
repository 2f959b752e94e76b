#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sigtensor {

// A word over the alphabet {1..d}. Ordering is lexicographic with a proper
// prefix sorting before its extensions.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> letters) : letters_(letters) {}
    explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

    // Digit string such as "121"; only alphabets up to 9 letters have this form.
    static Word parse(std::string_view digits);
    std::string str() const;

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    int operator[](std::size_t i) const { return letters_[i]; }
    int back() const { return letters_.back(); }
    const std::vector<int>& letters() const { return letters_; }
    auto begin() const { return letters_.begin(); }
    auto end() const { return letters_.end(); }

    void push_back(int letter) { letters_.push_back(letter); }
    Word prefix(std::size_t n) const;
    Word suffix_from(std::size_t pos) const;
    int max_letter() const;

    friend Word operator+(const Word& a, const Word& b);
    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

private:
    std::vector<int> letters_;
};

std::size_t power(std::size_t base, std::size_t exponent);

// Dense index sum_j (w_j - 1) d^(k-j).
std::size_t word_index(const Word& w, int d);
Word index_word(std::size_t index, int d, int k);

// All words of length k in lexicographic (= index) order.
std::vector<Word> all_words(int d, int k);

}  // namespace sigtensor
