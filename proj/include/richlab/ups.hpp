#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "richlab/function_spec.hpp"
#include "richlab/rich_enum.hpp"
#include "richlab/word.hpp"

namespace richlab {

// Factorization w = w_p w_{p-1} ... w_1 where each w_i is the longest
// palindromic suffix of w_p ... w_i. `cuts` holds 0 = c_0 < c_1 < ... < c_p = |w|;
// part k (left to right, k = 0..p-1) is w[c_k, c_{k+1}), i.e. w_{p-k}.
struct UpsFactorization {
    Word word;
    std::vector<std::size_t> cuts;

    std::size_t p() const noexcept { return cuts.empty() ? 0 : cuts.size() - 1; }
    std::span<const Letter> part(std::size_t k) const {
        return word.letters().subspan(cuts[k], cuts[k + 1] - cuts[k]);
    }
    std::vector<std::span<const Letter>> parts() const;
};

// Length of the longest palindromic suffix of every prefix: result[i] for the
// prefix of length i (result[0] = 0). One eertree pass.
std::vector<std::size_t> prefix_longest_pal_suffix(const Word& w);

UpsFactorization ups_factorize(const Word& w);
std::size_t luf(const Word& w);

// Parts pairwise distinct and each w_i occurring exactly once in w_p ... w_i.
bool verify_unioccurrence(const UpsFactorization& f);

// Maximum LUF over all rich words of each length 1..n_max.
std::map<std::size_t, std::size_t> max_luf_table(int q, std::size_t n_max,
                                                 const EnumOptions& options = {});

struct LufBoundRow {
    std::size_t n = 0;
    std::size_t max_luf = 0;
    std::optional<Real> bound;  // n / phi(n); empty when phi is undefined at n
    std::optional<bool> holds;  // max_luf <= bound
};

// Observational comparison of the empirical maximum LUF with n / phi(n).
std::vector<LufBoundRow> compare_luf_bound(const std::map<std::size_t, std::size_t>& table,
                                           const FunctionSpec& phi);

} // namespace richlab
