#include "richlab/rich_enum.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>
#include <vector>

#include "json.hpp"

#include "richlab/eertree.hpp"
#include "richlab/errors.hpp"
#include "richlab/version.hpp"

namespace richlab {

namespace {

// Tallies indexed by length; for symmetric runs also by the number k of
// distinct letters used (k = 1..q), otherwise k is always 0.
struct Tally {
    Tally(std::size_t n_max, int q) : counts((n_max + 1) * static_cast<std::size_t>(q + 1), 0),
                                      max_luf(n_max + 1, 0), stride(static_cast<std::size_t>(q + 1)) {}

    std::vector<std::uint64_t> counts;
    std::vector<std::size_t> max_luf;
    std::size_t stride;

    void record(std::size_t n, int k, std::size_t luf) {
        ++counts[n * stride + static_cast<std::size_t>(k)];
        max_luf[n] = std::max(max_luf[n], luf);
    }
    void merge(const Tally& other) {
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
        for (std::size_t n = 0; n < max_luf.size(); ++n) max_luf[n] = std::max(max_luf[n], other.max_luf[n]);
    }
};

class BudgetGuard {
public:
    explicit BudgetGuard(std::uint64_t budget) : budget_(budget) {}

    void charge(std::uint64_t nodes) {
        if (used_.fetch_add(nodes, std::memory_order_relaxed) + nodes > budget_) {
            throw BudgetExceeded("rich-word enumeration exceeded node budget of " +
                                 std::to_string(budget_) + " DFS nodes");
        }
    }

private:
    std::uint64_t budget_;
    std::atomic<std::uint64_t> used_{0};
};

// Depth-first walker over rich words. The eertree holds the current prefix;
// prefix_luf[i] is the UPS-factorization length of the length-i prefix, via
// luf(i) = 1 + luf(i - longest palindromic suffix length of prefix i).
class Walker {
public:
    Walker(int q, std::size_t n_max, bool symmetric, BudgetGuard& guard)
        : tree_(Alphabet(q)), q_(q), n_max_(n_max), symmetric_(symmetric), guard_(guard),
          prefix_luf_(n_max + 1, 0), tally_(n_max, q) {}

    // Walks the subtree below `prefix`; records lengths > prefix.size() only,
    // and stops descending at `stop_depth`, handing each prefix there to `at_stop`.
    void walk(std::span<const Letter> prefix, std::size_t stop_depth,
              const std::function<void(std::span<const Letter>)>& at_stop) {
        for (Letter a : prefix) {
            if (!extend(a)) throw StateError("shard prefix is not rich");
        }
        stop_depth_ = stop_depth;
        at_stop_ = &at_stop;
        descend();
        while (!tree_.empty()) retract();
        flush();
    }

    const Tally& tally() const { return tally_; }

private:
    bool extend(Letter a) {
        if (tree_.push(a) == 0) {
            tree_.pop();
            return false;
        }
        const std::size_t len = tree_.size();
        prefix_luf_[len] = 1 + prefix_luf_[len - tree_.longest_pal_suffix_length()];
        if (symmetric_ && a == distinct_) ++distinct_;
        return true;
    }

    void retract() {
        const Letter a = tree_.processed().back();
        tree_.pop();
        if (symmetric_ && a + 1 == distinct_ &&
            std::find(tree_.processed().begin(), tree_.processed().end(), a) == tree_.processed().end()) {
            --distinct_;
        }
    }

    void descend() {
        const std::size_t depth = tree_.size();
        if (depth == stop_depth_ && depth < n_max_) {
            (*at_stop_)(tree_.processed());
            return;
        }
        if (depth == n_max_) return;
        const int limit = symmetric_ ? std::min(q_, distinct_ + 1) : q_;
        for (int a = 0; a < limit; ++a) {
            if (!extend(static_cast<Letter>(a))) continue;
            if (++pending_ == 4096) flush();
            tally_.record(depth + 1, symmetric_ ? distinct_ : 0, prefix_luf_[depth + 1]);
            descend();
            retract();
        }
    }

    void flush() {
        guard_.charge(pending_);
        pending_ = 0;
    }

    Eertree tree_;
    int q_;
    std::size_t n_max_;
    bool symmetric_;
    BudgetGuard& guard_;
    std::vector<std::size_t> prefix_luf_;
    Tally tally_;
    int distinct_ = 0;
    std::uint64_t pending_ = 0;
    std::size_t stop_depth_ = 0;
    const std::function<void(std::span<const Letter>)>* at_stop_ = nullptr;
};

std::string today() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[16];
    std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
    return buf;
}

BigInt falling_factorial(int q, int k) {
    BigInt r = 1;
    for (int i = 0; i < k; ++i) r *= q - i;
    return r;
}

RichCountTable enumerate(int q, std::size_t n_max, const EnumOptions& options, bool symmetric) {
    Alphabet alphabet(q); // validates q
    if (n_max < 1) throw InputError("n_max must be >= 1");
    if (options.workers < 1) throw InputError("worker count must be >= 1");

    BudgetGuard guard(options.node_budget);
    const std::size_t shard_depth = std::clamp<std::size_t>(options.shard_depth, 1, n_max);

    // Serial phase: all lengths up to the shard depth, collecting shard prefixes.
    std::vector<std::vector<Letter>> shards;
    const std::function<void(std::span<const Letter>)> collect = [&](std::span<const Letter> p) {
        shards.emplace_back(p.begin(), p.end());
    };
    Walker head(q, n_max, symmetric, guard);
    head.walk({}, shard_depth, collect);
    Tally total = head.tally();

    // Parallel phase: each worker owns a walker and takes shards by index.
    const std::function<void(std::span<const Letter>)> unreachable = [](std::span<const Letter>) {};
    const unsigned n_workers =
        static_cast<unsigned>(std::min<std::size_t>(options.workers, std::max<std::size_t>(shards.size(), 1)));
    std::vector<Tally> partial(n_workers, Tally(n_max, q));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&](unsigned id) {
        try {
            Walker walker(q, n_max, symmetric, guard);
            for (std::size_t i; (i = next.fetch_add(1)) < shards.size();) {
                walker.walk(shards[i], n_max + 1, unreachable);
            }
            partial[id] = walker.tally();
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(shards.size());
        }
    };
    if (n_workers <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        for (unsigned id = 0; id < n_workers; ++id) threads.emplace_back(work, id);
    }
    if (failure) std::rethrow_exception(failure);
    for (const Tally& t : partial) total.merge(t);

    RichCountTable table;
    table.q = q;
    table.provenance = {symmetric, options.stamp_date ? today() : std::string(), tool_version};
    for (std::size_t n = 1; n <= n_max; ++n) {
        RichCountEntry entry;
        if (symmetric) {
            for (int k = 1; k <= q; ++k) {
                entry.count += BigInt(total.counts[n * total.stride + static_cast<std::size_t>(k)]) *
                               falling_factorial(q, k);
            }
        } else {
            entry.count = total.counts[n * total.stride];
        }
        entry.max_luf = total.max_luf[n];
        table.entries.emplace(n, std::move(entry));
    }
    return table;
}

} // namespace

RichCountTable count_rich(int q, std::size_t n_max, const EnumOptions& options) {
    return enumerate(q, n_max, options, false);
}

RichCountTable count_rich_symmetric(int q, std::size_t n_max, const EnumOptions& options) {
    return enumerate(q, n_max, options, true);
}

void for_each_rich_word(int q, std::size_t n_max,
                        const std::function<void(std::span<const Letter>)>& visit) {
    Eertree tree{Alphabet(q)};
    const std::function<void()> descend = [&] {
        if (tree.size() == n_max) return;
        for (int a = 0; a < q; ++a) {
            if (tree.push(static_cast<Letter>(a)) == 1) {
                visit(tree.processed());
                descend();
            }
            tree.pop();
        }
    };
    descend();
}

// Cache file: JSON lines. Header {schema_version, tool_version, q, entries,
// provenance}, then one {schema_version, q, n, count, max_luf} per length.

void save_cache(const RichCountTable& table, const std::filesystem::path& path) {
    using nlohmann::ordered_json;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw CacheError(CacheErrorCode::io, "cannot write cache file " + path.string());
    ordered_json header = {{"schema_version", cache_schema_version},
                           {"tool_version", table.provenance.tool_version},
                           {"q", table.q},
                           {"entries", table.entries.size()},
                           {"provenance",
                            {{"symmetric", table.provenance.symmetric},
                             {"created", table.provenance.created}}}};
    out << header.dump() << '\n';
    for (const auto& [n, entry] : table.entries) {
        ordered_json rec = {{"schema_version", cache_schema_version},
                            {"q", table.q},
                            {"n", n},
                            {"count", entry.count.str()},
                            {"max_luf", entry.max_luf}};
        out << rec.dump() << '\n';
    }
    if (!out) throw CacheError(CacheErrorCode::io, "failed writing cache file " + path.string());
}

RichCountTable load_cache(const std::filesystem::path& path, int expected_q) {
    using nlohmann::json;
    std::ifstream in(path);
    if (!in) throw CacheError(CacheErrorCode::io, "cannot read cache file " + path.string());

    auto malformed = [&](const std::string& why) {
        return CacheError(CacheErrorCode::malformed, "malformed cache " + path.string() + ": " + why);
    };
    auto parse_line = [&](const std::string& line) {
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw malformed("invalid JSON record");
        if (!j.contains("schema_version") || !j["schema_version"].is_number_integer()) {
            throw malformed("missing schema_version");
        }
        if (j["schema_version"].get<int>() != cache_schema_version) {
            throw CacheError(CacheErrorCode::version_mismatch,
                             "cache schema version " + j["schema_version"].dump() + ", expected " +
                                 std::to_string(cache_schema_version));
        }
        return j;
    };

    std::string line;
    if (!std::getline(in, line)) throw malformed("empty file");
    RichCountTable table;
    std::size_t expected_entries = 0;
    try {
        const json header = parse_line(line);
        table.q = header.at("q").get<int>();
        table.provenance.tool_version = header.at("tool_version").get<std::string>();
        expected_entries = header.at("entries").get<std::size_t>();
        table.provenance.symmetric = header.at("provenance").at("symmetric").get<bool>();
        table.provenance.created = header.at("provenance").at("created").get<std::string>();
    } catch (const json::exception& e) {
        throw malformed(std::string("bad header: ") + e.what());
    }
    if (expected_q > 0 && table.q != expected_q) {
        throw CacheError(CacheErrorCode::q_mismatch, "cache holds q=" + std::to_string(table.q) +
                                                         ", requested q=" + std::to_string(expected_q));
    }

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json rec = parse_line(line);
        try {
            if (rec.at("q").get<int>() != table.q) throw malformed("record q differs from header");
            const auto n = rec.at("n").get<std::size_t>();
            const auto count_text = rec.at("count").get<std::string>();
            if (count_text.empty() ||
                !std::all_of(count_text.begin(), count_text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                throw malformed("count is not a decimal string");
            }
            RichCountEntry entry{BigInt(count_text), rec.at("max_luf").get<std::size_t>()};
            if (!table.entries.emplace(n, std::move(entry)).second) throw malformed("duplicate n");
        } catch (const json::exception& e) {
            throw malformed(std::string("bad record: ") + e.what());
        }
    }
    if (table.entries.size() != expected_entries) {
        throw malformed("expected " + std::to_string(expected_entries) + " records, found " +
                        std::to_string(table.entries.size()));
    }
    return table;
}

} // namespace richlab
