#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace richlab {

using Letter = std::uint8_t;

// Letters are 0..q-1.
class Alphabet {
public:
    explicit Alphabet(int q);
    int size() const noexcept { return q_; }
    bool contains(int letter) const noexcept { return letter >= 0 && letter < q_; }
    friend bool operator==(const Alphabet&, const Alphabet&) = default;

    static constexpr int max_text_size = 26;

private:
    int q_;
};

class Word {
public:
    explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}
    Word(Alphabet alphabet, std::vector<Letter> letters);

    // 'a' -> 0, 'b' -> 1, ...
    static Word from_text(std::string_view text, Alphabet alphabet);
    // Smallest alphabet (at least 2) that covers the text.
    static Word from_text(std::string_view text);

    std::string to_text() const;

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::span<const Letter> letters() const noexcept { return letters_; }
    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }

    void push_back(Letter a);
    void pop_back() { letters_.pop_back(); }

    friend bool operator==(const Word&, const Word&) = default;

private:
    Alphabet alphabet_;
    std::vector<Letter> letters_;
};

std::string letters_to_text(std::span<const Letter> letters);

bool is_palindrome(std::span<const Letter> w);
inline bool is_palindrome(const Word& w) { return is_palindrome(w.letters()); }

// Distinct palindromic factors including the empty word, by brute force over
// all substrings. Ground truth for the fast paths.
std::size_t naive_palindromic_factor_count(std::span<const Letter> w);
inline std::size_t naive_palindromic_factor_count(const Word& w) {
    return naive_palindromic_factor_count(w.letters());
}

bool is_rich_naive(std::span<const Letter> w);
inline bool is_rich_naive(const Word& w) { return is_rich_naive(w.letters()); }

} // namespace richlab
