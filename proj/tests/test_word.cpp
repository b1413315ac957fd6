#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "richlab/errors.hpp"
#include "richlab/word.hpp"
#include "support/oracles.hpp"

using namespace richlab;

namespace {
Word w(const char* text) { return Word::from_text(text); }
} // namespace

TEST_CASE("is_palindrome") {
    CHECK(is_palindrome(w("")));
    CHECK(is_palindrome(w("aba")));
    CHECK_FALSE(is_palindrome(w("aab")));
    CHECK(is_palindrome(w("abba")));
}

TEST_CASE("naive palindromic factor count") {
    CHECK(naive_palindromic_factor_count(w("")) == 1);
    CHECK(naive_palindromic_factor_count(w("abca")) == 4);   // ε a b c
    CHECK(naive_palindromic_factor_count(w("abacaba")) == 8); // ε a b c aba aca bacab abacaba
    CHECK(naive_palindromic_factor_count(w("aaaa")) == 5);
}

TEST_CASE("is_rich_naive") {
    CHECK(is_rich_naive(w("")));
    CHECK_FALSE(is_rich_naive(w("abca")));
    CHECK(is_rich_naive(w("abacaba")));
}

TEST_CASE("word construction and text mapping") {
    const Word x = Word::from_text("cab");
    CHECK(x.alphabet().size() == 3);
    CHECK(x[0] == 2);
    CHECK(x.to_text() == "cab");
    CHECK(Word::from_text("a").alphabet().size() == 2);
    CHECK_THROWS_AS(Word::from_text("abc", Alphabet(2)), InputError);
    CHECK_THROWS_AS(Word::from_text("aB"), InputError);
    CHECK_THROWS_AS(Alphabet(1), InputError);
    Word y(Alphabet(2));
    CHECK_THROWS_AS(y.push_back(2), InputError);
}

TEST_CASE("appending a letter adds at most one palindrome") {
    for (std::size_t n = 0; n <= 9; ++n) {
        oracle::for_each_word(3, n, [&](std::span<const Letter> prefix) {
            const auto base = naive_palindromic_factor_count(prefix);
            std::vector<Letter> ext(prefix.begin(), prefix.end());
            ext.push_back(0);
            for (Letter a = 0; a < 3; ++a) {
                ext.back() = a;
                const auto diff = naive_palindromic_factor_count(ext) - base;
                REQUIRE((diff == 0 || diff == 1));
            }
        });
    }
}

TEST_CASE("richness is prefix-closed (q=2, n <= 12)") {
    for (std::size_t n = 1; n <= 12; ++n) {
        oracle::for_each_word(2, n, [&](std::span<const Letter> word) {
            if (!is_rich_naive(word)) return;
            REQUIRE(is_rich_naive(word.first(n - 1)));
        });
    }
}

TEST_CASE("richness is invariant under letter permutations") {
    std::vector<Letter> perm{0, 1, 2};
    for (std::size_t n = 1; n <= 7; ++n) {
        oracle::for_each_word(3, n, [&](std::span<const Letter> word) {
            const bool rich = is_rich_naive(word);
            std::vector<Letter> p = {0, 1, 2};
            do {
                std::vector<Letter> image(word.size());
                std::transform(word.begin(), word.end(), image.begin(), [&](Letter a) { return p[a]; });
                REQUIRE(is_rich_naive(image) == rich);
            } while (std::next_permutation(p.begin(), p.end()));
        });
    }
}
