#include "richlab/eertree.hpp"

#include "richlab/errors.hpp"

namespace richlab {

Eertree::Eertree(Alphabet alphabet)
    : alphabet_(alphabet), stride_(static_cast<std::size_t>(alphabet.size())) {
    lengths_ = {-1, 0};
    links_ = {0, 0};
    next_.assign(2 * stride_, 0);
}

Eertree::NodeId Eertree::find_extendable(NodeId v, std::size_t pos, Letter a) const noexcept {
    // Walk suffix links until the palindrome at v can be wrapped by `a` on both sides.
    for (;;) {
        const auto len = static_cast<std::ptrdiff_t>(lengths_[static_cast<std::size_t>(v)]);
        const auto j = static_cast<std::ptrdiff_t>(pos) - len - 1;
        if (j >= 0 && processed_[static_cast<std::size_t>(j)] == a) return v;
        v = links_[static_cast<std::size_t>(v)];
    }
}

int Eertree::push(Letter a) {
    if (!alphabet_.contains(a)) {
        throw InputError("letter " + std::to_string(a) + " outside alphabet of size " +
                         std::to_string(alphabet_.size()));
    }
    const std::size_t pos = processed_.size();
    processed_.push_back(a);

    const NodeId parent = find_extendable(last_, pos, a);
    const std::size_t edge = static_cast<std::size_t>(parent) * stride_ + a;
    if (NodeId existing = next_[edge]; existing != 0) {
        journal_.push_back({last_, -1});
        last_ = existing;
        ++defects_;
        return 0;
    }

    const auto node = static_cast<NodeId>(lengths_.size());
    const std::int32_t len = lengths_[static_cast<std::size_t>(parent)] + 2;
    NodeId link = 1;
    if (len > 1) {
        const NodeId u = find_extendable(links_[static_cast<std::size_t>(parent)], pos, a);
        link = next_[static_cast<std::size_t>(u) * stride_ + a];
    }
    lengths_.push_back(len);
    links_.push_back(link);
    next_.resize(next_.size() + stride_, 0);
    next_[edge] = node;

    journal_.push_back({last_, parent});
    last_ = node;
    return 1;
}

void Eertree::pop() {
    if (processed_.empty()) {
        throw StateError("pop on empty eertree");
    }
    const JournalEntry entry = journal_.back();
    journal_.pop_back();
    const Letter a = processed_.back();
    if (entry.parent >= 0) {
        next_[static_cast<std::size_t>(entry.parent) * stride_ + a] = 0;
        lengths_.pop_back();
        links_.pop_back();
        next_.resize(next_.size() - stride_);
    } else {
        --defects_;
    }
    last_ = entry.prev_last;
    processed_.pop_back();
}

} // namespace richlab
