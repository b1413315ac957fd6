#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "richlab/function_spec.hpp"
#include "richlab/log_value.hpp"
#include "richlab/rich_enum.hpp"

namespace richlab {

// Number of compositions of n into p positive parts, C(n-1, p-1); zero for p > n.
BigInt compositions_count(std::int64_t n, std::int64_t p);

struct CompositionBoundCheck {
    bool holds = false;
    BigInt lhs;       // sum_{p=1}^{L} C(n-1, p-1)
    BigInt rhs_floor; // floor of (e n / L)^L, evaluated at 100 digits and rounded down
};

CompositionBoundCheck composition_bound_detail(std::int64_t n, std::int64_t L);
inline bool check_composition_bound(std::int64_t n, std::int64_t L) {
    return composition_bound_detail(n, L).holds;
}

// Omega(x) = q^(c1 x/psi(x) + c2 tau(x) ln(phi(x))) with real tau(x) = x/phi(x).
struct OmegaParams {
    int q = 2;
    Real c1 = 1;
    Real c2 = 1;
    FunctionSpec phi = FunctionSpec::identity();
    FunctionSpec psi = FunctionSpec::identity();

    void validate() const;
    // The exponent as a function of x, with closed-form derivatives.
    AnalyticFunction exponent_function() const { return combined_function(phi, psi, c1, c2); }
};

Real omega_exponent(Real x, const OmegaParams& params);
LogValue omega(Real x, const OmegaParams& params, Rounding rounding = Rounding::nearest);

// Integer-valued cap on the number of parts in the recurrence.
struct TauRule {
    std::string label;
    std::function<std::int64_t(std::int64_t)> fn;

    std::int64_t operator()(std::int64_t n) const { return fn(n); }

    static TauRule identity();
    static TauRule constant(std::int64_t k);
    // ceil(n / phi(n))
    static TauRule from_phi(const FunctionSpec& phi);
};

enum class BoundProvenance { exact_seed, upper_bound_seed, recurrence };
std::string to_string(BoundProvenance p);

struct BoundEntry {
    LogValue value;
    BoundProvenance provenance;
};

struct BoundTable {
    int q = 2;
    std::map<std::int64_t, BoundEntry> entries;
    std::string tau_label = "identity";

    const LogValue& value(std::int64_t n) const { return entries.at(n).value; }
};

// Seeds from an exact enumeration table, entries 1..n_seed.
BoundTable seeds_from_counts(const RichCountTable& counts, std::size_t n_seed);

// B(n) = sum_{p=1}^{tau(n)} sum over compositions n = n_1 + ... + n_p of
// prod B(ceil(n_i / 2)), for every n above the contiguous seed range 1..n_seed
// up to n_max. All arithmetic rounds up.
BoundTable recurrence_bound(const BoundTable& seeds, const TauRule& tau, std::int64_t n_max);

// Columns n, exponent_log_q, provenance; exponents with 15 significant digits.
void write_bound_csv(const BoundTable& table, std::ostream& out);

struct InequalityCheck {
    bool holds = false;
    Real lhs = 0;
    Real rhs = 0;
};

// prod Omega(ceil(n_i/2)) <= Omega(n/(2p) + 1)^p in exponent space.
InequalityCheck check_product_bound(std::int64_t n, std::int64_t p,
                                    std::span<const std::int64_t> parts, const OmegaParams& params);

// Omega(n/(2p) + 1)^p <= Omega(n/(2(p+1)) + 1)^(p+1) in exponent space.
InequalityCheck check_p_monotonicity(std::int64_t n, std::int64_t p, const OmegaParams& params);

// sum f(x_i) <= k f(mean), after verifying f in Δ on [min xs, max xs].
InequalityCheck check_jensen(const AnalyticFunction& f, std::span<const Real> xs);

} // namespace richlab
