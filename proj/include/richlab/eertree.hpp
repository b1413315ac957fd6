#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "richlab/word.hpp"

namespace richlab {

// Palindromic tree (eertree) over a small integer alphabet with an undo journal.
//
// Node 0 is the imaginary root of length -1, node 1 the empty palindrome.
// Every other node is one distinct nonempty palindromic factor of the processed
// word. Transitions are a flat table with stride q; 0 means "no edge" since the
// imaginary root is never a transition target.
//
// pop() undoes exactly the latest push(), which is all that a depth-first
// enumeration needs.
class Eertree {
public:
    using NodeId = std::int32_t;

    explicit Eertree(Alphabet alphabet);

    // Appends a letter; returns the number of new distinct palindromes (0 or 1).
    int push(Letter a);
    void pop();

    void push_all(std::span<const Letter> w) {
        for (Letter a : w) push(a);
    }

    // Distinct palindromic factors of the processed word, counting the empty word.
    std::size_t distinct_palindrome_count() const noexcept { return lengths_.size() - 1; }
    std::size_t longest_pal_suffix_length() const noexcept {
        return static_cast<std::size_t>(lengths_[static_cast<std::size_t>(last_)]);
    }
    // True iff every push so far created a palindrome.
    bool is_rich_prefix() const noexcept { return defects_ == 0; }

    std::span<const Letter> processed() const noexcept { return processed_; }
    std::size_t size() const noexcept { return processed_.size(); }
    bool empty() const noexcept { return processed_.empty(); }
    const Alphabet& alphabet() const noexcept { return alphabet_; }

    std::size_t node_count() const noexcept { return lengths_.size(); }
    NodeId last() const noexcept { return last_; }
    std::int32_t node_length(NodeId v) const { return lengths_.at(static_cast<std::size_t>(v)); }
    NodeId suffix_link(NodeId v) const { return links_.at(static_cast<std::size_t>(v)); }
    NodeId transition(NodeId v, Letter a) const {
        return next_.at(static_cast<std::size_t>(v) * stride_ + a);
    }

    // Full structural equality, journal included.
    friend bool operator==(const Eertree&, const Eertree&) = default;

private:
    struct JournalEntry {
        NodeId prev_last;
        NodeId parent; // node that received the new edge, or -1 when nothing was created
        friend bool operator==(const JournalEntry&, const JournalEntry&) = default;
    };

    NodeId find_extendable(NodeId v, std::size_t pos, Letter a) const noexcept;

    Alphabet alphabet_;
    std::size_t stride_;
    std::vector<std::int32_t> lengths_;
    std::vector<NodeId> links_;
    std::vector<NodeId> next_;
    std::vector<Letter> processed_;
    std::vector<JournalEntry> journal_;
    NodeId last_ = 1;
    std::size_t defects_ = 0;
};

} // namespace richlab
