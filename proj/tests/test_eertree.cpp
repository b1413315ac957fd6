#include "doctest.h"

#include <random>

#include "richlab/eertree.hpp"
#include "richlab/errors.hpp"
#include "support/oracles.hpp"

using namespace richlab;

namespace {
Eertree built(const char* text, int q = 3) {
    Eertree t{Alphabet(q)};
    t.push_all(Word::from_text(text, Alphabet(q)).letters());
    return t;
}
} // namespace

TEST_CASE("push reports new palindromes") {
    Eertree t{Alphabet(3)};
    CHECK(t.push(0) == 1);

    Eertree u{Alphabet(3)};
    CHECK(u.push(0) == 1);
    CHECK(u.push(1) == 1);
    CHECK(u.push(2) == 1);
    CHECK(u.push(0) == 0); // "abca"

    Eertree v{Alphabet(2)};
    CHECK(v.push(0) == 1);
    CHECK(v.push(1) == 1);
    CHECK(v.push(0) == 1); // a, b, aba

    CHECK_THROWS_AS(v.push(2), InputError);
}

TEST_CASE("pop restores the previous state exactly") {
    const Eertree fresh{Alphabet(2)};
    Eertree t{Alphabet(2)};
    t.push(0);
    t.pop();
    CHECK(t == fresh);

    Eertree aba = built("aba", 2);
    aba.pop();
    CHECK(aba.distinct_palindrome_count() == 3); // ε a b
    CHECK(aba == built("ab", 2));

    CHECK_THROWS_AS(t.pop(), StateError);
}

TEST_CASE("distinct palindrome count and longest palindromic suffix") {
    CHECK(Eertree{Alphabet(2)}.distinct_palindrome_count() == 1);
    CHECK(built("abacaba").distinct_palindrome_count() == 8);
    CHECK(built("aaaa").distinct_palindrome_count() == 5);

    CHECK(built("aab").longest_pal_suffix_length() == 1);
    CHECK(built("aba").longest_pal_suffix_length() == 3);
    CHECK(Eertree{Alphabet(2)}.longest_pal_suffix_length() == 0);

    CHECK(built("abacaba").is_rich_prefix());
    CHECK_FALSE(built("abca").is_rich_prefix());
    CHECK(Eertree{Alphabet(2)}.is_rich_prefix());
}

TEST_CASE("suffix links point to strictly shorter palindromes") {
    const Eertree t = built("abacabadabacabaeabacab", 5);
    for (Eertree::NodeId v = 2; v < static_cast<Eertree::NodeId>(t.node_count()); ++v) {
        CHECK(t.node_length(t.suffix_link(v)) < t.node_length(v));
    }
}

TEST_CASE("oracle agreement on all short words with push/pop DFS") {
    for (int q : {2, 3}) {
        const std::size_t n_max = q == 2 ? 12 : 7;
        Eertree t{Alphabet(q)};
        std::function<void()> dfs = [&] {
            REQUIRE(t.distinct_palindrome_count() == naive_palindromic_factor_count(t.processed()));
            REQUIRE(t.is_rich_prefix() == is_rich_naive(t.processed()));
            REQUIRE(t.longest_pal_suffix_length() == oracle::brute_longest_pal_suffix(t.processed()));
            if (t.size() == n_max) return;
            for (int a = 0; a < q; ++a) {
                const int created = t.push(static_cast<Letter>(a));
                REQUIRE((created == 0 || created == 1));
                dfs();
                t.pop();
            }
        };
        dfs();
    }
}

TEST_CASE("random interleaved push/pop stays consistent with the oracle") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Eertree t{Alphabet(2)};
        std::vector<Eertree> history{t};
        for (int step = 0; step < 40; ++step) {
            if (!t.empty() && (rng() % 3 == 0 || t.size() == 10)) {
                t.pop();
                history.pop_back();
                REQUIRE(t == history.back());
            } else {
                t.push(static_cast<Letter>(rng() % 2));
                history.push_back(t);
            }
            REQUIRE(t.distinct_palindrome_count() == naive_palindromic_factor_count(t.processed()));
        }
        while (!t.empty()) t.pop();
        REQUIRE(t == Eertree{Alphabet(2)});
    }
}
