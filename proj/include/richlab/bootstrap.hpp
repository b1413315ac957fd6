#pragma once

#include <vector>

#include "richlab/function_spec.hpp"

namespace richlab {

// Constants of an upper bound R(n) <= q^(c1 n/psi(n) + c2 n ln(phi(n))/phi(n))
// together with the improvement parameters d > 1 and c3 > 0.
struct BootstrapState {
    int q = 2;
    Real d = 2;
    Real c1 = 1;
    Real c2 = 1;
    Real c3 = 0.1L;
    FunctionSpec phi = FunctionSpec::identity();
    FunctionSpec psi = FunctionSpec::identity();

    void validate() const;
};

struct BootstrapConstants {
    Real c1 = 0;
    Real c2 = 0;
};

// c1' = (c1 + c3) / d,  c2' = c2 (1 + 1/(c2 ln q) + c3).
BootstrapConstants bootstrap_step(const BootstrapState& s);

struct BootstrapTrajectory {
    std::vector<BootstrapConstants> steps; // steps[0] is the starting point
    Real c1_fixed_point = 0;               // c3 / (d - 1)
};

BootstrapTrajectory bootstrap_iterate(const BootstrapState& s, std::size_t k);

struct ExponentComparison {
    Real n = 0;
    Real old_exponent = 0;
    Real new_exponent = 0;
    bool new_is_smaller = false;
    bool first_term_dominates = false; // c1 n/psi(n) > c2 n ln(phi(n))/phi(n)
    bool c1_shrinks = false;           // (c1 + c3)/d < c1
};

ExponentComparison exponent_compare(const BootstrapState& s, Real n);

} // namespace richlab
