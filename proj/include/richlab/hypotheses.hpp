#pragma once

#include <optional>
#include <string>
#include <vector>

#include "richlab/function_spec.hpp"

namespace richlab {

// Log-spaced grid of `count` points from lo to hi inclusive.
std::vector<Real> log_grid(Real lo, Real hi, std::size_t count);

// Relative slack used by every "holds" comparison in the reports below.
inline constexpr Real comparison_slack = 1e-9L;
bool leq_with_slack(Real lhs, Real rhs, Real slack = comparison_slack);

enum class DeltaViolation { none, not_increasing, not_concave, undefined };
std::string to_string(DeltaViolation v);

// Sampled check of f' > 0 and f'' < 0. `ok` only ever means "no violation on
// the sampled grid".
struct DeltaReport {
    std::string function;
    Real x_lo = 0;
    Real x_hi = 0;
    std::size_t grid = 0;
    bool ok = true;
    std::optional<Real> first_violation;
    DeltaViolation violation = DeltaViolation::none;
};

DeltaReport check_delta(const AnalyticFunction& f, Real x_lo, Real x_hi, std::size_t grid_n);
inline DeltaReport check_delta(const FunctionSpec& f, Real x_lo, Real x_hi, std::size_t grid_n) {
    return check_delta(AnalyticFunction::from(f), x_lo, x_hi, grid_n);
}

struct RangeCheck {
    Real x_lo = 0;
    Real x_hi = 0;
    std::size_t grid = 0;
    bool ok = true;
    std::optional<Real> first_violation;
};

struct HypothesisReport {
    FunctionSpec phi;
    FunctionSpec psi;
    std::optional<Real> d;
    std::optional<RangeCheck> psi_leq_x;
    std::optional<DeltaReport> combined_in_delta;

    // d-condition 2 psi(phi(n)/2) >= d psi(n), sampled on a log grid.
    std::optional<RangeCheck> d_condition_range;
    bool d_condition_ok = false;
    std::optional<Real> d_condition_n0;    // holds at every sampled n > n0
    std::optional<Real> d_condition_first; // smallest grid point above n0
};

// psi(x) <= x and x/psi(x) + x ln(phi(x))/phi(x) in Δ, on a sampled range.
HypothesisReport check_psi_family(const FunctionSpec& phi, const FunctionSpec& psi, Real x_lo,
                                  Real x_hi, std::size_t grid_n);

HypothesisReport check_d_condition(const FunctionSpec& phi, const FunctionSpec& psi, Real d,
                                   Real n_lo, Real n_hi, std::size_t grid_n);

// tau(phi(n)) ln(phi(phi(n))) <= ln(phi(n)), reported with the real-valued
// tau(x) = x/phi(x) and with the ceiling variant ceil(x/phi(x)).
struct PhiCompositionReport {
    FunctionSpec phi;
    Real n_lo = 0;
    Real n_hi = 0;
    std::size_t grid = 0;

    struct Variant {
        bool ok = false;               // holds at the largest sampled n
        std::optional<Real> n0;        // holds at every sampled n > n0
        std::optional<Real> last_failure;
        std::size_t failures = 0;
    };
    Variant real_tau;
    Variant ceil_tau;
};

PhiCompositionReport check_phi_composition(const FunctionSpec& phi, Real n_lo, Real n_hi,
                                           std::size_t grid_n);

struct CrossoverReport {
    Real x0 = 0;         // maximizer of ln x / x
    Real max_value = 0;  // ln(x0) / x0
    Real grid_hi = 0;
    std::size_t grid = 0;
    bool decreasing = false;
    std::optional<Real> first_violation;
};

// ln x / x peaks at x = e and decreases beyond; the decrease is verified on a
// grid of `grid_n` points over (e, grid_hi].
CrossoverReport log_over_x_crossover(std::size_t grid_n = 1000, Real grid_hi = 1e6L);

} // namespace richlab
