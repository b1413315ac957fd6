#include "richlab/word.hpp"

#include <algorithm>
#include <unordered_set>

#include "richlab/errors.hpp"

namespace richlab {

Alphabet::Alphabet(int q) : q_(q) {
    if (q < 2 || q > 255) {
        throw InputError("alphabet size must be in [2, 255], got " + std::to_string(q));
    }
}

Word::Word(Alphabet alphabet, std::vector<Letter> letters)
    : alphabet_(alphabet), letters_(std::move(letters)) {
    for (Letter a : letters_) {
        if (!alphabet_.contains(a)) {
            throw InputError("letter " + std::to_string(a) + " outside alphabet of size " +
                             std::to_string(alphabet_.size()));
        }
    }
}

Word Word::from_text(std::string_view text, Alphabet alphabet) {
    if (alphabet.size() > Alphabet::max_text_size) {
        throw InputError("text words support at most 26 letters");
    }
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (char ch : text) {
        if (ch < 'a' || ch > 'z') {
            throw InputError(std::string("invalid letter '") + ch + "', expected lowercase a-z");
        }
        letters.push_back(static_cast<Letter>(ch - 'a'));
    }
    return Word(alphabet, std::move(letters));
}

Word Word::from_text(std::string_view text) {
    int q = 2;
    for (char ch : text) {
        if (ch >= 'a' && ch <= 'z') q = std::max(q, ch - 'a' + 1);
    }
    return from_text(text, Alphabet(q));
}

std::string letters_to_text(std::span<const Letter> letters) {
    std::string s;
    s.reserve(letters.size());
    for (Letter a : letters) s.push_back(static_cast<char>('a' + a));
    return s;
}

std::string Word::to_text() const {
    if (alphabet_.size() > Alphabet::max_text_size) {
        throw InputError("text words support at most 26 letters");
    }
    return letters_to_text(letters_);
}

void Word::push_back(Letter a) {
    if (!alphabet_.contains(a)) {
        throw InputError("letter " + std::to_string(a) + " outside alphabet");
    }
    letters_.push_back(a);
}

bool is_palindrome(std::span<const Letter> w) {
    return std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(w.size() / 2), w.rbegin());
}

std::size_t naive_palindromic_factor_count(std::span<const Letter> w) {
    std::unordered_set<std::string> seen;
    seen.insert(std::string());
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t len = 1; i + len <= w.size(); ++len) {
            auto factor = w.subspan(i, len);
            if (is_palindrome(factor)) {
                seen.insert(std::string(factor.begin(), factor.end()));
            }
        }
    }
    return seen.size();
}

bool is_rich_naive(std::span<const Letter> w) {
    return naive_palindromic_factor_count(w) == w.size() + 1;
}

} // namespace richlab
