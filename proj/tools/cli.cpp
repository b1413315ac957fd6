#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "richlab/bootstrap.hpp"
#include "richlab/bound_engine.hpp"
#include "richlab/eertree.hpp"
#include "richlab/errors.hpp"
#include "richlab/hypotheses.hpp"
#include "richlab/rich_enum.hpp"
#include "richlab/ups.hpp"
#include "richlab/version.hpp"
#include "richlab/word.hpp"

namespace richlab::cli {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* cache_env = "RICHLAB_CACHE_DIR";

struct Report {
    ordered_json body = ordered_json::object();
    int exit_code = exit_ok;
    // Table-bearing commands fill these for CSV output.
    std::vector<std::string> csv_columns;
    std::vector<std::vector<std::string>> csv_rows;
};

struct Settings {
    std::string format = "json";
    bool deterministic = false;
};

// Shared option values; each subcommand binds the ones it uses.
struct Options {
    int q = 2;
    int word_q = 0; // 0: smallest alphabet covering the word
    std::int64_t n = 8;
    std::int64_t n_lo = 10;
    std::int64_t n_hi = 10000;
    std::int64_t seed_n = 10;
    std::int64_t L = 0;
    std::int64_t p_max = 0;
    std::int64_t iters = 1;
    std::int64_t trials = 1000;
    std::int64_t points = 8;
    std::uint64_t budget = 1'000'000'000;
    std::uint64_t rng_seed = 1;
    unsigned workers = 1;
    std::size_t shard_depth = 8;
    std::size_t grid = 1000;
    long double lo = 8;
    long double hi = 1e6L;
    long double c1 = 1, c2 = 1, c3 = 0.1L, d = 2;
    long double x = 0;
    std::string word;
    std::string phi = "identity";
    std::string psi = "identity";
    std::string f = "sqrt";
    std::string tau = "identity";
    std::string cache;
    bool symmetric = false;
    bool cache_only = false;
};

double num(Real x) { return static_cast<double>(x); }

ordered_json opt_num(const std::optional<Real>& x) {
    return x ? ordered_json(num(*x)) : ordered_json(nullptr);
}

ordered_json echo_config(const CLI::App& sub) {
    ordered_json config = ordered_json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        std::string name = opt->get_single_name();
        if (name == "help" || name == "workers") continue;
        if (opt->get_expected_min() == 0) {
            config[name] = opt->count() > 0;
            continue;
        }
        std::string value;
        if (opt->count() > 0) {
            const auto& results = opt->results();
            for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
        } else {
            value = opt->get_default_str();
        }
        if (!value.empty()) config[name] = value;
    }
    return config;
}

Word parse_word(const std::string& text, int q_flag) {
    if (q_flag > 0) return Word::from_text(text, Alphabet(q_flag));
    return Word::from_text(text);
}

fs::path resolve_cache(const Options& o) {
    if (!o.cache.empty()) return o.cache;
    if (const char* dir = std::getenv(cache_env); dir != nullptr && *dir != '\0') {
        return fs::path(dir) / ("rich-q" + std::to_string(o.q) + ".jsonl");
    }
    return {};
}

// Exact counts through the cache when one is configured.
RichCountTable obtain_counts(const Options& o, std::size_t n_max, bool stamp_date) {
    const fs::path cache = resolve_cache(o);
    if (!cache.empty() && fs::exists(cache)) {
        RichCountTable table = load_cache(cache, o.q);
        if (table.n_max() >= n_max) {
            table.entries.erase(table.entries.upper_bound(n_max), table.entries.end());
            return table;
        }
        if (o.cache_only) throw InputError("cache " + cache.string() + " covers only n <= " +
                                           std::to_string(table.n_max()));
    } else if (o.cache_only) {
        throw InputError("cache file missing: " + (cache.empty() ? std::string("(none configured)") : cache.string()));
    }
    EnumOptions eo;
    eo.workers = o.workers;
    eo.node_budget = o.budget;
    eo.shard_depth = o.shard_depth;
    eo.stamp_date = stamp_date;
    RichCountTable table = o.symmetric ? count_rich_symmetric(o.q, n_max, eo) : count_rich(o.q, n_max, eo);
    if (!cache.empty()) save_cache(table, cache);
    return table;
}

OmegaParams omega_params(const Options& o) {
    OmegaParams p{o.q, o.c1, o.c2, parse_function_spec(o.phi), parse_function_spec(o.psi)};
    p.validate();
    return p;
}

BootstrapState bootstrap_state(const Options& o) {
    BootstrapState s{o.q, o.d, o.c1, o.c2, o.c3, parse_function_spec(o.phi), parse_function_spec(o.psi)};
    s.validate();
    return s;
}

TauRule parse_tau(const std::string& text) {
    if (text == "identity") return TauRule::identity();
    if (text.rfind("const:", 0) == 0) {
        const long long k = std::stoll(text.substr(6));
        return TauRule::constant(k);
    }
    return TauRule::from_phi(parse_function_spec(text));
}

ordered_json delta_json(const DeltaReport& r) {
    return {{"function", r.function},
            {"range", {num(r.x_lo), num(r.x_hi)}},
            {"grid", r.grid},
            {"sampling", "log-spaced; verified on sampled range only"},
            {"ok", r.ok},
            {"first_violation", opt_num(r.first_violation)},
            {"violation", to_string(r.violation)}};
}

ordered_json range_json(const RangeCheck& r) {
    return {{"range", {num(r.x_lo), num(r.x_hi)}},
            {"grid", r.grid},
            {"ok", r.ok},
            {"first_violation", opt_num(r.first_violation)}};
}

// ---- command handlers ------------------------------------------------------

Report cmd_check(const Options& o) {
    const Word w = parse_word(o.word, o.word_q);
    Eertree tree(w.alphabet());
    tree.push_all(w.letters());
    Report r;
    r.body["word"] = w.to_text();
    r.body["q"] = w.alphabet().size();
    r.body["length"] = w.size();
    r.body["rich"] = tree.is_rich_prefix();
    r.body["palindromes"] = tree.distinct_palindrome_count();
    return r;
}

Report cmd_ups(const Options& o) {
    const Word w = parse_word(o.word, o.word_q);
    const UpsFactorization f = ups_factorize(w);
    Report r;
    r.body["word"] = w.to_text();
    ordered_json parts = ordered_json::array();
    for (auto part : f.parts()) parts.push_back(letters_to_text(part));
    r.body["parts"] = parts;
    r.body["p"] = f.p();
    Eertree tree(w.alphabet());
    tree.push_all(w.letters());
    r.body["rich"] = tree.is_rich_prefix();
    r.body["unioccurrent"] = verify_unioccurrence(f);
    return r;
}

Report cmd_count(const Options& o, const Settings& s) {
    if (o.n < 1) throw InputError("--n must be >= 1");
    const RichCountTable table = obtain_counts(o, static_cast<std::size_t>(o.n), !s.deterministic);
    Report r;
    r.body["q"] = table.q;
    r.body["n_max"] = table.n_max();
    r.body["symmetric"] = table.provenance.symmetric;
    if (!table.provenance.created.empty()) r.body["created"] = table.provenance.created;
    ordered_json rows = ordered_json::array();
    r.csv_columns = {"n", "count", "max_luf"};
    for (const auto& [n, e] : table.entries) {
        rows.push_back({{"n", n}, {"count", e.count.str()}, {"max_luf", e.max_luf}});
        r.csv_rows.push_back({std::to_string(n), e.count.str(), std::to_string(e.max_luf)});
    }
    r.body["table"] = rows;
    return r;
}

Report cmd_maxluf(const Options& o, const Settings& s, bool with_phi) {
    if (o.n < 1) throw InputError("--n must be >= 1");
    const RichCountTable table = obtain_counts(o, static_cast<std::size_t>(o.n), !s.deterministic);
    std::map<std::size_t, std::size_t> lufs;
    for (const auto& [n, e] : table.entries) lufs.emplace(n, e.max_luf);
    Report r;
    r.body["q"] = o.q;
    ordered_json rows = ordered_json::array();
    if (with_phi) {
        const FunctionSpec phi = parse_function_spec(o.phi);
        r.body["phi"] = phi.to_string();
        r.body["note"] = "observational comparison, not a proof";
        r.csv_columns = {"n", "max_luf", "bound", "holds"};
        for (const LufBoundRow& row : compare_luf_bound(lufs, phi)) {
            rows.push_back({{"n", row.n},
                            {"max_luf", row.max_luf},
                            {"bound", opt_num(row.bound)},
                            {"holds", row.holds ? ordered_json(*row.holds) : ordered_json(nullptr)}});
            r.csv_rows.push_back({std::to_string(row.n), std::to_string(row.max_luf),
                                  row.bound ? format_real(*row.bound) : "",
                                  row.holds ? (*row.holds ? "true" : "false") : ""});
        }
    } else {
        r.csv_columns = {"n", "max_luf"};
        for (const auto& [n, m] : lufs) {
            rows.push_back({{"n", n}, {"max_luf", m}});
            r.csv_rows.push_back({std::to_string(n), std::to_string(m)});
        }
    }
    r.body["table"] = rows;
    return r;
}

Report cmd_bound_recurrence(const Options& o, const Settings& s) {
    if (o.seed_n < 1) throw InputError("--seed-n must be >= 1");
    const RichCountTable counts = obtain_counts(o, static_cast<std::size_t>(o.seed_n), !s.deterministic);
    const BoundTable seeds = seeds_from_counts(counts, static_cast<std::size_t>(o.seed_n));
    const BoundTable table = recurrence_bound(seeds, parse_tau(o.tau), o.n);
    Report r;
    r.body["q"] = table.q;
    r.body["tau"] = table.tau_label;
    ordered_json rows = ordered_json::array();
    r.csv_columns = {"n", "exponent_log_q", "provenance"};
    std::stringstream csv;
    write_bound_csv(table, csv);
    std::string line;
    std::getline(csv, line); // header
    for (const auto& [n, e] : table.entries) {
        std::getline(csv, line);
        const auto first = line.find(',');
        const auto second = line.find(',', first + 1);
        r.csv_rows.push_back({std::to_string(n), line.substr(first + 1, second - first - 1), to_string(e.provenance)});
        rows.push_back({{"n", n}, {"exponent_log_q", num(e.value.exponent())}, {"provenance", to_string(e.provenance)}});
    }
    r.body["table"] = rows;
    return r;
}

Report cmd_verify_composition(const Options& o) {
    Report r;
    std::int64_t checked = 0;
    ordered_json witness = nullptr;
    auto one = [&](std::int64_t n, std::int64_t L) {
        const auto c = composition_bound_detail(n, L);
        ++checked;
        if (!c.holds && witness.is_null()) {
            witness = {{"n", n}, {"L", L}, {"lhs", c.lhs.str()}, {"rhs_floor", c.rhs_floor.str()}};
        }
    };
    if (o.L > 0) {
        one(o.n, o.L);
    } else {
        for (std::int64_t n = 1; n <= o.n; ++n) {
            for (std::int64_t L = 1; L <= n; ++L) one(n, L);
        }
    }
    r.body["checked"] = checked;
    r.body["holds"] = witness.is_null();
    r.body["counterexample"] = witness;
    r.exit_code = witness.is_null() ? exit_ok : exit_counterexample;
    return r;
}

Report cmd_verify_jensen(const Options& o) {
    const FunctionSpec spec = parse_function_spec(o.f);
    const AnalyticFunction f = AnalyticFunction::from(spec);
    std::mt19937_64 rng(o.rng_seed);
    std::uniform_real_distribution<double> xdist(static_cast<double>(o.lo), static_cast<double>(o.hi));
    std::uniform_int_distribution<std::int64_t> kdist(1, std::max<std::int64_t>(1, o.points));
    Report r;
    ordered_json witness = nullptr;
    for (std::int64_t t = 0; t < o.trials; ++t) {
        std::vector<Real> xs(static_cast<std::size_t>(kdist(rng)));
        for (Real& x : xs) x = xdist(rng);
        const auto c = check_jensen(f, xs);
        if (!c.holds) {
            ordered_json pts = ordered_json::array();
            for (Real x : xs) pts.push_back(num(x));
            witness = {{"trial", t}, {"xs", pts}, {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)}};
            break;
        }
    }
    r.body["function"] = spec.to_string();
    r.body["trials"] = o.trials;
    r.body["holds"] = witness.is_null();
    r.body["counterexample"] = witness;
    r.exit_code = witness.is_null() ? exit_ok : exit_counterexample;
    return r;
}

std::vector<std::int64_t> random_composition(std::int64_t n, std::int64_t p, std::mt19937_64& rng) {
    std::vector<std::int64_t> cuts(static_cast<std::size_t>(n - 1));
    std::iota(cuts.begin(), cuts.end(), 1);
    for (std::int64_t i = 0; i < p - 1; ++i) {
        std::uniform_int_distribution<std::int64_t> pick(i, n - 2);
        std::swap(cuts[static_cast<std::size_t>(i)], cuts[static_cast<std::size_t>(pick(rng))]);
    }
    cuts.resize(static_cast<std::size_t>(p - 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::int64_t> parts;
    std::int64_t prev = 0;
    for (std::int64_t c : cuts) {
        parts.push_back(c - prev);
        prev = c;
    }
    parts.push_back(n - prev);
    return parts;
}

Report cmd_verify_product(const Options& o) {
    const OmegaParams params = omega_params(o);
    std::mt19937_64 rng(o.rng_seed);
    std::uniform_int_distribution<std::int64_t> ndist(1, std::max<std::int64_t>(1, o.n));
    Report r;
    ordered_json witness = nullptr;
    for (std::int64_t t = 0; t < o.trials && witness.is_null(); ++t) {
        const std::int64_t n = ndist(rng);
        std::uniform_int_distribution<std::int64_t> pdist(1, n);
        const std::int64_t p = pdist(rng);
        const auto parts = random_composition(n, p, rng);
        const auto c = check_product_bound(n, p, parts, params);
        if (!c.holds) {
            witness = {{"n", n}, {"p", p}, {"parts", parts}, {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)}};
        }
    }
    r.body["trials"] = o.trials;
    r.body["holds"] = witness.is_null();
    r.body["counterexample"] = witness;
    r.exit_code = witness.is_null() ? exit_ok : exit_counterexample;
    return r;
}

Report cmd_verify_pmono(const Options& o) {
    const OmegaParams params = omega_params(o);
    const TauRule tau = TauRule::from_phi(params.phi);
    Report r;
    std::int64_t checked = 0;
    ordered_json witness = nullptr;
    for (std::int64_t n = o.n_lo; n <= o.n_hi && witness.is_null(); ++n) {
        const std::int64_t p_top = o.p_max > 0 ? std::min(o.p_max, n) : std::max<std::int64_t>(1, tau(n));
        for (std::int64_t p = 1; p <= p_top; ++p) {
            const auto c = check_p_monotonicity(n, p, params);
            ++checked;
            if (!c.holds) {
                witness = {{"n", n}, {"p", p}, {"lhs", num(c.lhs)}, {"rhs", num(c.rhs)}};
                break;
            }
        }
    }
    r.body["checked"] = checked;
    r.body["holds"] = witness.is_null();
    r.body["counterexample"] = witness;
    r.exit_code = witness.is_null() ? exit_ok : exit_counterexample;
    return r;
}

Report cmd_verify_delta(const Options& o) {
    const DeltaReport d = check_delta(parse_function_spec(o.f), o.lo, o.hi, o.grid);
    Report r;
    r.body = delta_json(d);
    r.exit_code = d.ok ? exit_ok : exit_counterexample;
    return r;
}

Report cmd_verify_psi_family(const Options& o) {
    const auto rep = check_psi_family(parse_function_spec(o.phi), parse_function_spec(o.psi), o.lo, o.hi, o.grid);
    Report r;
    r.body["phi"] = rep.phi.to_string();
    r.body["psi"] = rep.psi.to_string();
    r.body["psi_leq_x"] = range_json(*rep.psi_leq_x);
    r.body["combined_in_delta"] = delta_json(*rep.combined_in_delta);
    const bool ok = rep.psi_leq_x->ok && rep.combined_in_delta->ok;
    r.body["ok"] = ok;
    r.exit_code = ok ? exit_ok : exit_counterexample;
    return r;
}

Report cmd_verify_d_condition(const Options& o) {
    const auto rep = check_d_condition(parse_function_spec(o.phi), parse_function_spec(o.psi), o.d, o.lo, o.hi, o.grid);
    Report r;
    r.body["phi"] = rep.phi.to_string();
    r.body["psi"] = rep.psi.to_string();
    r.body["d"] = num(*rep.d);
    r.body["sampled"] = range_json(*rep.d_condition_range);
    r.body["ok"] = rep.d_condition_ok;
    r.body["n0"] = opt_num(rep.d_condition_n0);
    r.body["next_grid_point"] = opt_num(rep.d_condition_first);
    r.exit_code = rep.d_condition_ok ? exit_ok : exit_counterexample;
    return r;
}

Report cmd_verify_phi_composition(const Options& o) {
    const auto rep = check_phi_composition(parse_function_spec(o.phi), o.lo, o.hi, o.grid);
    auto variant = [](const PhiCompositionReport::Variant& v) {
        return ordered_json{{"ok", v.ok},
                            {"n0", opt_num(v.n0)},
                            {"failures", v.failures},
                            {"last_failure", opt_num(v.last_failure)}};
    };
    Report r;
    r.body["phi"] = rep.phi.to_string();
    r.body["range"] = {num(rep.n_lo), num(rep.n_hi)};
    r.body["grid"] = rep.grid;
    r.body["real_tau"] = variant(rep.real_tau);
    r.body["ceil_tau"] = variant(rep.ceil_tau);
    r.body["variants_agree"] = rep.real_tau.ok == rep.ceil_tau.ok && rep.real_tau.n0 == rep.ceil_tau.n0;
    r.exit_code = rep.real_tau.ok ? exit_ok : exit_counterexample;
    return r;
}

Report cmd_verify_crossover(const Options& o) {
    const auto rep = log_over_x_crossover(o.grid, o.hi);
    Report r;
    r.body["x0"] = num(rep.x0);
    r.body["max_value"] = num(rep.max_value);
    r.body["grid"] = rep.grid;
    r.body["grid_hi"] = num(rep.grid_hi);
    r.body["decreasing"] = rep.decreasing;
    r.body["first_violation"] = opt_num(rep.first_violation);
    r.exit_code = rep.decreasing ? exit_ok : exit_counterexample;
    return r;
}

Report cmd_bootstrap(const Options& o) {
    const BootstrapState s = bootstrap_state(o);
    const auto traj = bootstrap_iterate(s, static_cast<std::size_t>(o.iters));
    Report r;
    r.body["c1"] = num(traj.steps.back().c1);
    r.body["c2"] = num(traj.steps.back().c2);
    r.body["c1_fixed_point"] = num(traj.c1_fixed_point);
    r.body["note"] = "trajectory of the constant map; iterates are not claimed to be valid bounds";
    ordered_json steps = ordered_json::array();
    r.csv_columns = {"step", "c1", "c2"};
    for (std::size_t i = 0; i < traj.steps.size(); ++i) {
        steps.push_back({{"step", i}, {"c1", num(traj.steps[i].c1)}, {"c2", num(traj.steps[i].c2)}});
        r.csv_rows.push_back({std::to_string(i), format_real(traj.steps[i].c1), format_real(traj.steps[i].c2)});
    }
    r.body["trajectory"] = steps;
    return r;
}

Report cmd_compare(const Options& o) {
    const BootstrapState s = bootstrap_state(o);
    const auto c = exponent_compare(s, o.x);
    Report r;
    r.body["n"] = num(c.n);
    r.body["old_exponent"] = num(c.old_exponent);
    r.body["new_exponent"] = num(c.new_exponent);
    r.body["new_is_smaller"] = c.new_is_smaller;
    r.body["first_term_dominates"] = c.first_term_dominates;
    r.body["c1_shrinks"] = c.c1_shrinks;
    return r;
}

// ---- output ----------------------------------------------------------------

void emit(const Report& rep, const ordered_json& header, const Settings& s, std::ostream& out) {
    if (s.format == "csv") {
        out << "# tool_version=" << header["tool_version"].get<std::string>() << '\n';
        out << "# command=" << header["command"].get<std::string>() << '\n';
        out << "# config=" << header["config"].dump() << '\n';
        if (header.contains("duration_ms")) out << "# duration_ms=" << header["duration_ms"].dump() << '\n';
        for (std::size_t i = 0; i < rep.csv_columns.size(); ++i) out << (i ? "," : "") << rep.csv_columns[i];
        out << '\n';
        for (const auto& row : rep.csv_rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << '\n';
        }
        return;
    }
    ordered_json full = ordered_json::object();
    full["tool_version"] = header["tool_version"];
    full["command"] = header["command"];
    full["config"] = header["config"];
    for (const auto& [k, v] : rep.body.items()) full[k] = v;
    if (header.contains("duration_ms")) full["duration_ms"] = header["duration_ms"];
    if (s.format == "text") {
        for (const auto& [k, v] : full.items()) {
            out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        }
        return;
    }
    out << full.dump() << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"richlab: palindromic richness laboratory", "richlab"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings settings;
    app.add_option("--format", settings.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_flag("--deterministic", settings.deterministic,
                 "Omit wall-clock duration and dates so identical configs give identical bytes");

    // One Options instance per subcommand keeps defaults independent.
    std::deque<Options> store;
    auto fresh = [&store]() -> Options& { return store.emplace_back(); };

    auto add_q = [](CLI::App* c, Options& o) {
        c->add_option("--q", o.q, "Alphabet size")->capture_default_str()->check(CLI::Range(2, 26));
    };
    auto add_enum = [](CLI::App* c, Options& o) {
        c->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
        c->add_option("--budget", o.budget, "DFS node budget")->capture_default_str();
        c->add_option("--shard-depth", o.shard_depth, "Prefix depth for parallel sharding")->capture_default_str();
        c->add_option("--cache", o.cache, "Count cache file (JSON lines); default $RICHLAB_CACHE_DIR/rich-q<Q>.jsonl");
        c->add_flag("--cache-only", o.cache_only, "Fail instead of enumerating when the cache is missing");
        c->add_flag("--symmetric", o.symmetric, "Enumerate canonical words only (letter-permutation reduction)");
    };
    auto add_omega = [&add_q](CLI::App* c, Options& o) {
        add_q(c, o);
        c->add_option("--c1", o.c1)->capture_default_str();
        c->add_option("--c2", o.c2)->capture_default_str();
        c->add_option("--phi", o.phi, "phi as a*x^b*lnx^c*exp(u*lnx^v), a tuple a,b,c,u,v[,dmin], or alias")
            ->capture_default_str();
        c->add_option("--psi", o.psi, "psi, same syntax as --phi")->capture_default_str();
    };
    auto add_range = [](CLI::App* c, Options& o, long double lo, long double hi, std::size_t grid) {
        o.lo = lo;
        o.hi = hi;
        o.grid = grid;
        c->add_option("--lo", o.lo, "Range start")->capture_default_str();
        c->add_option("--hi", o.hi, "Range end")->capture_default_str();
        c->add_option("--grid", o.grid, "Log-spaced sample count")->capture_default_str()->check(CLI::PositiveNumber);
    };

    std::string command;
    std::function<Report()> handler;
    auto bind = [&command, &handler](CLI::App* c, std::string name, std::function<Report()> h) {
        c->callback([&command, &handler, name = std::move(name), h = std::move(h)] {
            command = name;
            handler = h;
        });
    };

    {
        auto& o = fresh();
        auto* c = app.add_subcommand("check", "Richness of one word");
        c->add_option("word", o.word, "Word over a..z")->required();
        c->add_option("--q", o.word_q, "Alphabet size (default: smallest covering the word)");
        bind(c, "check", [&o] { return cmd_check(o); });
    }
    {
        auto& o = fresh();
        auto* c = app.add_subcommand("ups", "UPS-factorization of one word");
        c->add_option("word", o.word, "Word over a..z")->required();
        c->add_option("--q", o.word_q, "Alphabet size (default: smallest covering the word)");
        bind(c, "ups", [&o] { return cmd_ups(o); });
    }
    {
        auto& o = fresh();
        auto* c = app.add_subcommand("count", "Exact R(n) table by enumeration");
        add_q(c, o);
        c->add_option("--n", o.n, "Largest length")->capture_default_str();
        add_enum(c, o);
        bind(c, "count", [&o, &settings] { return cmd_count(o, settings); });
    }
    {
        auto& o = fresh();
        auto* c = app.add_subcommand("maxluf", "Maximum UPS-factorization length over rich words");
        add_q(c, o);
        c->add_option("--n", o.n, "Largest length")->capture_default_str();
        auto* phi = c->add_option("--phi", o.phi, "Compare against n/phi(n)");
        add_enum(c, o);
        bind(c, "maxluf", [&o, &settings, phi] { return cmd_maxluf(o, settings, phi->count() > 0); });
    }
    {
        auto& o = fresh();
        o.n = 20;
        auto* c = app.add_subcommand("bound-recurrence", "Recurrence upper bound B(n) from exact seeds");
        add_q(c, o);
        c->add_option("--n-max,--n", o.n, "Largest n")->capture_default_str();
        c->add_option("--seed-n", o.seed_n, "Seeds R(1..seed_n) by enumeration")->capture_default_str();
        c->add_option("--tau", o.tau, "identity, const:K, or a phi spec giving ceil(n/phi(n))")->capture_default_str();
        add_enum(c, o);
        bind(c, "bound-recurrence", [&o, &settings] { return cmd_bound_recurrence(o, settings); });
    }

    auto* verify = app.add_subcommand("verify", "Numeric verification suites");
    verify->require_subcommand(1);
    {
        auto& o = fresh();
        o.n = 300;
        auto* c = verify->add_subcommand("composition-bound", "sum C(n-1,p-1) <= (e n/L)^L");
        c->add_option("--n-max,--n", o.n, "Sweep all 1 <= L <= n <= n-max (or the single n with --L)")
            ->capture_default_str();
        c->add_option("--L", o.L, "Check only this L");
        bind(c, "verify composition-bound", [&o] { return cmd_verify_composition(o); });
    }
    {
        auto& o = fresh();
        auto* c = verify->add_subcommand("jensen", "Jensen inequality on random points");
        c->add_option("--f", o.f, "Function spec")->capture_default_str();
        c->add_option("--trials", o.trials)->capture_default_str();
        c->add_option("--points", o.points, "Maximum points per trial")->capture_default_str();
        c->add_option("--seed", o.rng_seed)->capture_default_str();
        add_range(c, o, 1, 1e6L, 64);
        bind(c, "verify jensen", [&o] { return cmd_verify_jensen(o); });
    }
    {
        auto& o = fresh();
        o.n = 10000;
        auto* c = verify->add_subcommand("product-bound", "Product of Omega values on random compositions");
        add_omega(c, o);
        c->add_option("--n-max,--n", o.n, "Largest n")->capture_default_str();
        c->add_option("--trials", o.trials)->capture_default_str();
        c->add_option("--seed", o.rng_seed)->capture_default_str();
        bind(c, "verify product-bound", [&o] { return cmd_verify_product(o); });
    }
    {
        auto& o = fresh();
        auto* c = verify->add_subcommand("p-monotonicity", "Omega(n/(2p)+1)^p non-decreasing in p");
        add_omega(c, o);
        c->add_option("--n-lo", o.n_lo)->capture_default_str();
        c->add_option("--n-hi", o.n_hi)->capture_default_str();
        c->add_option("--p-max", o.p_max, "Check p up to this (default ceil(n/phi(n)))");
        bind(c, "verify p-monotonicity", [&o] { return cmd_verify_pmono(o); });
    }
    {
        auto& o = fresh();
        auto* c = verify->add_subcommand("delta", "f' > 0 and f'' < 0 on a sampled range");
        c->add_option("--f", o.f, "Function spec")->capture_default_str();
        add_range(c, o, 8, 1e6L, 1000);
        bind(c, "verify delta", [&o] { return cmd_verify_delta(o); });
    }
    {
        auto& o = fresh();
        auto* c = verify->add_subcommand("psi-family", "psi(x) <= x and x/psi + x ln(phi)/phi in Δ");
        c->add_option("--phi", o.phi)->capture_default_str();
        c->add_option("--psi", o.psi)->capture_default_str();
        add_range(c, o, 8, 1e6L, 1000);
        bind(c, "verify psi-family", [&o] { return cmd_verify_psi_family(o); });
    }
    {
        auto& o = fresh();
        o.d = 1.5L;
        auto* c = verify->add_subcommand("d-condition", "2 psi(phi(n)/2) >= d psi(n) beyond an empirical n0");
        c->add_option("--phi", o.phi)->capture_default_str();
        c->add_option("--psi", o.psi)->capture_default_str();
        c->add_option("--d", o.d)->capture_default_str();
        add_range(c, o, 100, 1e8L, 10000);
        bind(c, "verify d-condition", [&o] { return cmd_verify_d_condition(o); });
    }
    {
        auto& o = fresh();
        auto* c = verify->add_subcommand("phi-composition", "tau(phi(n)) ln(phi(phi(n))) <= ln(phi(n))");
        c->add_option("--phi", o.phi)->capture_default_str();
        add_range(c, o, 1000, 1e9L, 1000);
        bind(c, "verify phi-composition", [&o] { return cmd_verify_phi_composition(o); });
    }
    {
        auto& o = fresh();
        o.grid = 1000;
        o.hi = 1e6L;
        auto* c = verify->add_subcommand("crossover", "ln x / x peaks at e and decreases after");
        c->add_option("--grid", o.grid)->capture_default_str()->check(CLI::PositiveNumber);
        c->add_option("--hi", o.hi)->capture_default_str();
        bind(c, "verify crossover", [&o] { return cmd_verify_crossover(o); });
    }
    {
        auto& o = fresh();
        auto* c = app.add_subcommand("bootstrap", "Iterate the constant-improvement map");
        add_omega(c, o);
        c->add_option("--d", o.d)->capture_default_str();
        c->add_option("--c3", o.c3)->capture_default_str();
        c->add_option("--iters", o.iters)->capture_default_str()->check(CLI::PositiveNumber);
        bind(c, "bootstrap", [&o] { return cmd_bootstrap(o); });
    }
    {
        auto& o = fresh();
        auto* c = app.add_subcommand("compare-exponents", "Old vs improved bound exponent at one n");
        add_omega(c, o);
        c->add_option("--d", o.d)->capture_default_str();
        c->add_option("--c3", o.c3)->capture_default_str();
        c->add_option("--n", o.x, "Evaluation point")->required();
        bind(c, "compare-exponents", [&o] { return cmd_compare(o); });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    const CLI::App* invoked = nullptr;
    for (const CLI::App* sub : app.get_subcommands()) {
        invoked = sub;
        for (const CLI::App* leaf : sub->get_subcommands()) invoked = leaf;
    }

    const auto start = std::chrono::steady_clock::now();
    Report report;
    try {
        if (!handler) throw InputError("no subcommand");
        report = handler();
        if (settings.format == "csv" && report.csv_columns.empty()) {
            throw InputError("csv output is not available for '" + command + "'");
        }
    } catch (const CacheError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;

    ordered_json header;
    header["tool_version"] = tool_version;
    header["command"] = command;
    ordered_json config = invoked ? echo_config(*invoked) : ordered_json::object();
    config["format"] = settings.format;
    header["config"] = config;
    if (!settings.deterministic) {
        header["duration_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    emit(report, header, settings, out);
    return report.exit_code;
}

} // namespace richlab::cli
