#include "richlab/ups.hpp"

#include <algorithm>

#include "richlab/eertree.hpp"
#include "richlab/errors.hpp"

namespace richlab {

std::vector<std::span<const Letter>> UpsFactorization::parts() const {
    std::vector<std::span<const Letter>> out;
    out.reserve(p());
    for (std::size_t k = 0; k < p(); ++k) out.push_back(part(k));
    return out;
}

std::vector<std::size_t> prefix_longest_pal_suffix(const Word& w) {
    Eertree tree(w.alphabet());
    std::vector<std::size_t> lps(w.size() + 1, 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        tree.push(w[i]);
        lps[i + 1] = tree.longest_pal_suffix_length();
    }
    return lps;
}

UpsFactorization ups_factorize(const Word& w) {
    if (w.empty()) throw InputError("UPS-factorization of the empty word is undefined");
    const auto lps = prefix_longest_pal_suffix(w);
    // Peel from the right; each recorded value stays valid for the shorter prefix.
    std::vector<std::size_t> cuts{w.size()};
    for (std::size_t end = w.size(); end > 0;) {
        end -= lps[end];
        cuts.push_back(end);
    }
    std::reverse(cuts.begin(), cuts.end());
    return {w, std::move(cuts)};
}

std::size_t luf(const Word& w) { return ups_factorize(w).p(); }

namespace {

std::size_t occurrences(std::span<const Letter> text, std::span<const Letter> pattern) {
    std::size_t count = 0;
    for (auto it = text.begin();; ++it) {
        it = std::search(it, text.end(), pattern.begin(), pattern.end());
        if (it == text.end()) return count;
        ++count;
    }
}

} // namespace

bool verify_unioccurrence(const UpsFactorization& f) {
    const auto parts = f.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            if (std::ranges::equal(parts[i], parts[j])) return false;
        }
    }
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const auto prefix = f.word.letters().first(f.cuts[k + 1]);
        if (occurrences(prefix, parts[k]) != 1) return false;
    }
    return true;
}

std::map<std::size_t, std::size_t> max_luf_table(int q, std::size_t n_max, const EnumOptions& options) {
    const RichCountTable table = count_rich(q, n_max, options);
    std::map<std::size_t, std::size_t> out;
    for (const auto& [n, entry] : table.entries) out.emplace(n, entry.max_luf);
    return out;
}

std::vector<LufBoundRow> compare_luf_bound(const std::map<std::size_t, std::size_t>& table,
                                           const FunctionSpec& phi) {
    if (table.empty()) throw InputError("LUF table is empty");
    std::vector<LufBoundRow> rows;
    for (const auto& [n, max_luf] : table) {
        LufBoundRow row{n, max_luf, std::nullopt, std::nullopt};
        try {
            const Real bound = static_cast<Real>(n) / phi.eval(static_cast<Real>(n));
            row.bound = bound;
            row.holds = static_cast<Real>(max_luf) <= bound;
        } catch (const DomainError&) {
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace richlab
