#include "richlab/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "richlab/errors.hpp"

namespace richlab {

std::vector<Real> log_grid(Real lo, Real hi, std::size_t count) {
    if (!(lo > 0) || !(hi >= lo)) throw InputError("log grid needs 0 < lo <= hi");
    if (count == 0) throw InputError("log grid needs at least one point");
    std::vector<Real> grid(count);
    if (count == 1) {
        grid[0] = lo;
        return grid;
    }
    const Real llo = std::log(lo);
    const Real step = (std::log(hi) - llo) / static_cast<Real>(count - 1);
    for (std::size_t i = 0; i < count; ++i) grid[i] = std::exp(llo + step * static_cast<Real>(i));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

bool leq_with_slack(Real lhs, Real rhs, Real slack) {
    return lhs <= rhs + slack * std::max(std::fabs(lhs), std::fabs(rhs));
}

std::string to_string(DeltaViolation v) {
    switch (v) {
    case DeltaViolation::none: return "none";
    case DeltaViolation::not_increasing: return "f'(x) <= 0";
    case DeltaViolation::not_concave: return "f''(x) >= 0";
    case DeltaViolation::undefined: return "f undefined";
    }
    return "unknown";
}

DeltaReport check_delta(const AnalyticFunction& f, Real x_lo, Real x_hi, std::size_t grid_n) {
    if (x_lo < std::max<Real>(1, f.domain_min)) {
        throw InputError("check_delta range starts below the domain of " + f.label);
    }
    DeltaReport report{f.label, x_lo, x_hi, grid_n, true, std::nullopt, DeltaViolation::none};
    for (Real x : log_grid(x_lo, x_hi, grid_n)) {
        DeltaViolation violation = DeltaViolation::none;
        try {
            const Jet j = f.jet(x);
            if (!(j.d1 > 0)) {
                violation = DeltaViolation::not_increasing;
            } else if (!(j.d2 < 0)) {
                violation = DeltaViolation::not_concave;
            }
        } catch (const DomainError&) {
            violation = DeltaViolation::undefined;
        }
        if (violation != DeltaViolation::none) {
            report.ok = false;
            report.first_violation = x;
            report.violation = violation;
            break;
        }
    }
    return report;
}

HypothesisReport check_psi_family(const FunctionSpec& phi, const FunctionSpec& psi, Real x_lo,
                                  Real x_hi, std::size_t grid_n) {
    if (x_lo < std::max({Real(1), phi.domain_min, psi.domain_min})) {
        throw InputError("check_psi_family range starts below the domain of phi or psi");
    }
    HypothesisReport report{phi, psi, std::nullopt, std::nullopt, std::nullopt, std::nullopt, false,
                            std::nullopt, std::nullopt};
    RangeCheck range{x_lo, x_hi, grid_n, true, std::nullopt};
    for (Real x : log_grid(x_lo, x_hi, grid_n)) {
        if (!leq_with_slack(psi.eval(x), x, 0)) {
            range.ok = false;
            range.first_violation = x;
            break;
        }
    }
    report.psi_leq_x = range;
    report.combined_in_delta = check_delta(combined_function(phi, psi), x_lo, x_hi, grid_n);
    return report;
}

HypothesisReport check_d_condition(const FunctionSpec& phi, const FunctionSpec& psi, Real d,
                                   Real n_lo, Real n_hi, std::size_t grid_n) {
    if (!(d > 1)) throw InputError("d-condition requires d > 1");
    HypothesisReport report{phi, psi, d, std::nullopt, std::nullopt, std::nullopt, false,
                            std::nullopt, std::nullopt};
    const auto grid = log_grid(n_lo, n_hi, grid_n);
    std::optional<std::size_t> last_failure;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Real n = grid[i];
        const Real half_phi = phi.eval(n) / 2;
        if (half_phi < psi.domain_min) {
            throw DomainError("phi(n)/2 = " + format_real(half_phi) + " at n = " + format_real(n) +
                              " falls below the domain of psi");
        }
        const Real lhs = 2 * psi.eval(half_phi);
        const Real rhs = d * psi.eval(n);
        if (!leq_with_slack(rhs, lhs)) last_failure = i;
    }
    RangeCheck range{n_lo, n_hi, grid_n, true, std::nullopt};
    if (!last_failure) {
        report.d_condition_ok = true;
        report.d_condition_n0 = grid.front();
        report.d_condition_first = grid.size() > 1 ? grid[1] : grid.front();
    } else if (*last_failure + 1 < grid.size()) {
        report.d_condition_ok = true;
        report.d_condition_n0 = grid[*last_failure];
        report.d_condition_first = grid[*last_failure + 1];
        range.first_violation = grid[*last_failure];
    } else {
        range.ok = false;
        range.first_violation = grid.back();
    }
    range.ok = report.d_condition_ok;
    report.d_condition_range = range;
    return report;
}

PhiCompositionReport check_phi_composition(const FunctionSpec& phi, Real n_lo, Real n_hi,
                                           std::size_t grid_n) {
    PhiCompositionReport report{phi, n_lo, n_hi, grid_n, {}, {}};
    const auto grid = log_grid(n_lo, n_hi, grid_n);

    auto tally = [](PhiCompositionReport::Variant& v, Real n, bool holds) {
        if (!holds) {
            ++v.failures;
            v.last_failure = n;
        }
    };
    bool real_last = false;
    bool ceil_last = false;
    for (Real n : grid) {
        const Real inner = phi.eval(n);
        if (inner < phi.domain_min) {
            throw DomainError("phi(n) = " + format_real(inner) + " at n = " + format_real(n) +
                              " falls below the domain of phi");
        }
        const Real outer = phi.eval(inner);
        const Real rhs = std::log(inner);
        const Real tau_real = inner / outer;
        const Real tau_ceil = std::ceil(tau_real);
        real_last = leq_with_slack(tau_real * std::log(outer), rhs);
        ceil_last = leq_with_slack(tau_ceil * std::log(outer), rhs);
        tally(report.real_tau, n, real_last);
        tally(report.ceil_tau, n, ceil_last);
    }
    auto finish = [&](PhiCompositionReport::Variant& v, bool holds_at_end) {
        v.ok = holds_at_end;
        if (holds_at_end) v.n0 = v.last_failure.value_or(grid.front());
    };
    finish(report.real_tau, real_last);
    finish(report.ceil_tau, ceil_last);
    return report;
}

CrossoverReport log_over_x_crossover(std::size_t grid_n, Real grid_hi) {
    const Real e = std::numbers::e_v<Real>;
    CrossoverReport report{e, 1 / e, grid_hi, grid_n, true, std::nullopt};
    auto h = [](Real x) { return std::log(x) / x; };
    const auto grid = log_grid(e, grid_hi, grid_n + 1); // grid[0] = e is excluded from the count
    Real previous = h(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const Real value = h(grid[i]);
        if (!(value < previous)) {
            report.decreasing = false;
            report.first_violation = grid[i];
            break;
        }
        previous = value;
    }
    return report;
}

} // namespace richlab
