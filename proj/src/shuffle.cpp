#include "sigtensor/shuffle.hpp"

namespace sigtensor {

void WordCombination::add(const Word& w, std::int64_t c) {
    if (c == 0) return;
    if (!terms_.empty() && terms_.begin()->first.size() != w.size()) {
        throw std::invalid_argument("word combination mixes lengths");
    }
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

std::int64_t WordCombination::coeff(const Word& w) const {
    const auto it = terms_.find(w);
    return it == terms_.end() ? 0 : it->second;
}

std::int64_t WordCombination::mass() const {
    std::int64_t m = 0;
    for (const auto& [w, c] : terms_) m += c < 0 ? -c : c;
    return m;
}

namespace {

void interleave(const Word& a, const Word& b, std::size_t i, std::size_t j, std::vector<int>& buf,
                std::map<Word, std::int64_t>& out) {
    if (i == a.size() && j == b.size()) {
        ++out[Word(buf)];
        return;
    }
    if (i < a.size()) {
        buf.push_back(a[i]);
        interleave(a, b, i + 1, j, buf, out);
        buf.pop_back();
    }
    if (j < b.size()) {
        buf.push_back(b[j]);
        interleave(a, b, i, j + 1, buf, out);
        buf.pop_back();
    }
}

}  // namespace

WordCombination shuffle_words(const Word& a, const Word& b) {
    std::map<Word, std::int64_t> counts;
    std::vector<int> buf;
    buf.reserve(a.size() + b.size());
    interleave(a, b, 0, 0, buf, counts);
    WordCombination r;
    for (const auto& [w, c] : counts) r.add(w, c);
    return r;
}

WordCombination shuffle(const WordCombination& a, const WordCombination& b) {
    WordCombination r;
    for (const auto& [wa, ca] : a.terms()) {
        for (const auto& [wb, cb] : b.terms()) {
            const auto s = shuffle_words(wa, wb);
            for (const auto& [w, c] : s.terms()) r.add(w, ca * cb * c);
        }
    }
    return r;
}

WordCombination shuffle_all(const std::vector<Word>& words) {
    WordCombination r{Word{}};
    for (const auto& w : words) r = shuffle(r, WordCombination{w});
    return r;
}

}  // namespace sigtensor
