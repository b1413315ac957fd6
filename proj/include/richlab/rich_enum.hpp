#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "richlab/word.hpp"

namespace richlab {

using BigInt = boost::multiprecision::cpp_int;

struct RichCountEntry {
    BigInt count;
    std::size_t max_luf = 0; // maximum UPS-factorization length over rich words of this length
    friend bool operator==(const RichCountEntry&, const RichCountEntry&) = default;
};

struct EnumProvenance {
    bool symmetric = false;
    std::string created; // YYYY-MM-DD, empty when suppressed
    std::string tool_version;
    friend bool operator==(const EnumProvenance&, const EnumProvenance&) = default;
};

struct RichCountTable {
    int q = 2;
    std::map<std::size_t, RichCountEntry> entries; // n -> entry, n = 1..n_max
    EnumProvenance provenance;

    std::size_t n_max() const { return entries.empty() ? 0 : entries.rbegin()->first; }
    const BigInt& count(std::size_t n) const { return entries.at(n).count; }
    friend bool operator==(const RichCountTable&, const RichCountTable&) = default;
};

struct EnumOptions {
    unsigned workers = 1;
    std::uint64_t node_budget = 1'000'000'000;
    // Rich prefixes of this length are generated serially and handed to workers.
    std::size_t shard_depth = 8;
    bool stamp_date = true;
};

// Exact R(n) for 1 <= n <= n_max by depth-first search over words, pruning at
// the first non-rich prefix.
RichCountTable count_rich(int q, std::size_t n_max, const EnumOptions& options = {});

// Same table, enumerating only words whose letters first appear in increasing
// order and scaling by the number of injective letter relabelings.
RichCountTable count_rich_symmetric(int q, std::size_t n_max, const EnumOptions& options = {});

// Serial visit of every rich word of length 1..n_max in lexicographic DFS order.
void for_each_rich_word(int q, std::size_t n_max,
                        const std::function<void(std::span<const Letter>)>& visit);

enum class CacheErrorCode { io, malformed, version_mismatch, q_mismatch };

class CacheError : public std::runtime_error {
public:
    CacheError(CacheErrorCode code, const std::string& what) : std::runtime_error(what), code(code) {}
    CacheErrorCode code;
};

inline constexpr int cache_schema_version = 1;

void save_cache(const RichCountTable& table, const std::filesystem::path& path);
// expected_q <= 0 accepts any alphabet size.
RichCountTable load_cache(const std::filesystem::path& path, int expected_q = 0);

} // namespace richlab
