#include "richlab/bound_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "richlab/errors.hpp"
#include "richlab/hypotheses.hpp"

namespace richlab {

namespace {

// Grid used to verify the Δ hypothesis before an inequality check.
constexpr std::size_t hypothesis_grid = 16;

void require_delta(const AnalyticFunction& f, Real lo, Real hi) {
    const DeltaReport report = check_delta(f, lo, hi, hypothesis_grid);
    if (!report.ok) {
        throw HypothesisNotVerified(f.label + " not verified concave increasing on [" +
                                    format_real(lo) + ", " + format_real(hi) + "]: " +
                                    to_string(report.violation) + " at x = " +
                                    format_real(*report.first_violation));
    }
}

std::int64_t ceil_half(std::int64_t m) { return (m + 1) / 2; }

} // namespace

BigInt compositions_count(std::int64_t n, std::int64_t p) {
    if (p < 1) throw InputError("compositions_count requires p >= 1");
    if (n < 1) throw InputError("compositions_count requires n >= 1");
    if (p > n) return 0;
    // C(n-1, k) with k = min(p-1, n-p)
    const std::int64_t k = std::min(p - 1, n - p);
    BigInt r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= n - 1 - k + i;
        r /= i;
    }
    return r;
}

CompositionBoundCheck composition_bound_detail(std::int64_t n, std::int64_t L) {
    using Float = boost::multiprecision::cpp_bin_float_100;
    if (L < 1 || L > n) throw InputError("composition bound requires 1 <= L <= n");
    CompositionBoundCheck out;
    BigInt term = 1; // C(n-1, p-1)
    for (std::int64_t p = 1; p <= L; ++p) {
        out.lhs += term;
        term *= n - p;
        term /= p;
    }

    const Float ratio = Float(n) / Float(L);
    Float rhs = boost::multiprecision::exp(Float(L) * (1 + boost::multiprecision::log(ratio)));
    rhs *= 1 - Float("1e-80"); // round down well past the working precision's error
    out.rhs_floor = boost::multiprecision::floor(rhs).convert_to<BigInt>();
    out.holds = out.lhs <= out.rhs_floor;
    return out;
}

void OmegaParams::validate() const {
    if (q < 2) throw InputError("Omega requires q >= 2");
    if (!(c1 > 0) || !(c2 > 0)) throw InputError("Omega requires c1 > 0 and c2 > 0");
}

Real omega_exponent(Real x, const OmegaParams& params) {
    params.validate();
    if (!(x >= 1)) throw InputError("Omega is evaluated only for x >= 1");
    const Real psi_x = params.psi.eval(x);
    if (!leq_with_slack(psi_x, x)) {
        throw InputError("psi(x) > x at x = " + format_real(x));
    }
    const Real phi_x = params.phi.eval(x);
    return params.c1 * x / psi_x + params.c2 * (x / phi_x) * std::log(phi_x);
}

LogValue omega(Real x, const OmegaParams& params, Rounding rounding) {
    return LogValue(params.q, round_outward(omega_exponent(x, params), rounding, 4), rounding);
}

TauRule TauRule::identity() {
    return {"identity", [](std::int64_t n) { return n; }};
}

TauRule TauRule::constant(std::int64_t k) {
    return {"const:" + std::to_string(k), [k](std::int64_t) { return k; }};
}

TauRule TauRule::from_phi(const FunctionSpec& phi) {
    return {"ceil(n/phi(n)) with phi=" + phi.to_string(), [phi](std::int64_t n) {
                const Real t = static_cast<Real>(n) / phi.eval(static_cast<Real>(n));
                return static_cast<std::int64_t>(std::ceil(t));
            }};
}

std::string to_string(BoundProvenance p) {
    switch (p) {
    case BoundProvenance::exact_seed: return "exact-seed";
    case BoundProvenance::upper_bound_seed: return "upper-bound-seed";
    case BoundProvenance::recurrence: return "recurrence";
    }
    return "unknown";
}

BoundTable seeds_from_counts(const RichCountTable& counts, std::size_t n_seed) {
    BoundTable seeds;
    seeds.q = counts.q;
    for (std::size_t n = 1; n <= n_seed; ++n) {
        const auto it = counts.entries.find(n);
        if (it == counts.entries.end()) throw SeedGapError(n);
        seeds.entries.emplace(static_cast<std::int64_t>(n),
                              BoundEntry{LogValue::from_decimal(counts.q, it->second.count.str(), Rounding::up),
                                         BoundProvenance::exact_seed});
    }
    return seeds;
}

BoundTable recurrence_bound(const BoundTable& seeds, const TauRule& tau, std::int64_t n_max) {
    if (n_max < 1) throw InputError("recurrence_bound requires n_max >= 1");
    std::int64_t n_seed = 0;
    for (const auto& [n, entry] : seeds.entries) {
        if (n != n_seed + 1) throw SeedGapError(static_cast<std::size_t>(n_seed + 1));
        if (entry.value.base() != seeds.q) throw InputError("seed base differs from table q");
        n_seed = n;
    }
    if (n_seed == 0) throw SeedGapError(1);

    std::vector<std::int64_t> taus(static_cast<std::size_t>(n_max + 1), 0);
    std::int64_t p_max = 1;
    for (std::int64_t n = n_seed + 1; n <= n_max; ++n) {
        const std::int64_t t = tau(n);
        if (t < 1) throw InputError("tau(" + std::to_string(n) + ") = " + std::to_string(t) + " < 1");
        taus[static_cast<std::size_t>(n)] = std::min(t, n);
        p_max = std::max(p_max, taus[static_cast<std::size_t>(n)]);
    }

    BoundTable out;
    out.q = seeds.q;
    out.tau_label = tau.label;
    for (std::int64_t n = 1; n <= std::min(n_seed, n_max); ++n) out.entries.emplace(n, seeds.entries.at(n));

    auto up = [](const LogValue& v) { return v.with_rounding(Rounding::up); };
    // g[m] = B(ceil(m/2)); sums[p][m] = p-fold convolution of g at m, defined for m >= p.
    std::vector<std::optional<LogValue>> g(static_cast<std::size_t>(n_max + 1));
    std::vector<std::vector<std::optional<LogValue>>> sums(
        static_cast<std::size_t>(p_max + 1),
        std::vector<std::optional<LogValue>>(static_cast<std::size_t>(n_max + 1)));

    for (std::int64_t n = 1; n <= n_max; ++n) {
        const auto un = static_cast<std::size_t>(n);
        g[un] = up(out.entries.at(ceil_half(n)).value);
        sums[1][un] = g[un];
        for (std::int64_t p = 2; p <= std::min(p_max, n); ++p) {
            std::optional<LogValue> acc;
            for (std::int64_t m = 1; n - m >= p - 1; ++m) {
                const LogValue term = *g[static_cast<std::size_t>(m)] *
                                      *sums[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(n - m)];
                acc = acc ? *acc + term : term;
            }
            sums[static_cast<std::size_t>(p)][un] = acc;
        }
        if (n > n_seed) {
            std::optional<LogValue> b;
            for (std::int64_t p = 1; p <= taus[un]; ++p) {
                const LogValue& s = *sums[static_cast<std::size_t>(p)][un];
                b = b ? *b + s : s;
            }
            out.entries.emplace(n, BoundEntry{*b, BoundProvenance::recurrence});
        }
    }
    return out;
}

void write_bound_csv(const BoundTable& table, std::ostream& out) {
    out << "n,exponent_log_q,provenance\n";
    char buf[64];
    for (const auto& [n, entry] : table.entries) {
        std::snprintf(buf, sizeof buf, "%.15Lg", entry.value.exponent());
        out << n << ',' << buf << ',' << to_string(entry.provenance) << '\n';
    }
}

InequalityCheck check_product_bound(std::int64_t n, std::int64_t p, std::span<const std::int64_t> parts,
                                    const OmegaParams& params) {
    params.validate();
    if (p < 1 || n < p || static_cast<std::int64_t>(parts.size()) != p) {
        throw InputError("product bound needs a composition of n into p parts with n >= p");
    }
    if (std::any_of(parts.begin(), parts.end(), [](std::int64_t x) { return x < 1; }) ||
        std::accumulate(parts.begin(), parts.end(), std::int64_t{0}) != n) {
        throw InputError("parts must be positive and sum to n");
    }
    const auto [lo_it, hi_it] = std::minmax_element(parts.begin(), parts.end());
    const Real target = static_cast<Real>(n) / static_cast<Real>(2 * p) + 1;
    const Real lo = std::min(static_cast<Real>(ceil_half(*lo_it)), target);
    const Real hi = std::max(static_cast<Real>(ceil_half(*hi_it)), target);
    require_delta(params.exponent_function(), lo, hi);

    std::optional<LogValue> product;
    for (std::int64_t part : parts) {
        const LogValue w = omega(static_cast<Real>(ceil_half(part)), params);
        product = product ? *product * w : w;
    }
    InequalityCheck out;
    out.lhs = product->exponent();
    out.rhs = omega(target, params).pow(static_cast<Real>(p)).exponent();
    out.holds = leq_with_slack(out.lhs, out.rhs);
    return out;
}

InequalityCheck check_p_monotonicity(std::int64_t n, std::int64_t p, const OmegaParams& params) {
    params.validate();
    if (p < 1 || n < 1) throw InputError("p-monotonicity needs p >= 1 and n >= 1");
    const Real at_p = static_cast<Real>(n) / static_cast<Real>(2 * p) + 1;
    const Real at_next = static_cast<Real>(n) / static_cast<Real>(2 * (p + 1)) + 1;
    require_delta(params.exponent_function(), at_next, at_p);

    InequalityCheck out;
    out.lhs = omega(at_p, params).pow(static_cast<Real>(p)).exponent();
    out.rhs = omega(at_next, params).pow(static_cast<Real>(p + 1)).exponent();
    out.holds = leq_with_slack(out.lhs, out.rhs);
    return out;
}

InequalityCheck check_jensen(const AnalyticFunction& f, std::span<const Real> xs) {
    if (xs.empty()) throw InputError("check_jensen needs at least one point");
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    require_delta(f, *lo, *hi);
    InequalityCheck out;
    Real total = 0;
    for (Real x : xs) {
        out.lhs += f(x);
        total += x;
    }
    const auto k = static_cast<Real>(xs.size());
    out.rhs = k * f(total / k);
    out.holds = leq_with_slack(out.lhs, out.rhs);
    return out;
}

} // namespace richlab
