#include "richlab/bootstrap.hpp"

#include <cmath>

#include "richlab/errors.hpp"

namespace richlab {

void BootstrapState::validate() const {
    if (q < 2) throw InputError("bootstrap requires q >= 2");
    if (!(d > 1)) throw InputError("bootstrap requires d > 1");
    if (!(c3 > 0)) throw InputError("bootstrap requires c3 > 0");
    if (!(c2 > 0)) throw InputError("bootstrap requires c2 > 0");
    if (!std::isfinite(c1) || !std::isfinite(c2) || !std::isfinite(c3) || !std::isfinite(d)) {
        throw InputError("bootstrap constants must be finite");
    }
}

BootstrapConstants bootstrap_step(const BootstrapState& s) {
    s.validate();
    const Real ln_q = std::log(static_cast<Real>(s.q));
    return {(s.c1 + s.c3) / s.d, s.c2 * (1 + s.c3) + 1 / ln_q};
}

BootstrapTrajectory bootstrap_iterate(const BootstrapState& s, std::size_t k) {
    if (k < 1) throw InputError("bootstrap_iterate needs at least one step");
    s.validate();
    BootstrapTrajectory out;
    out.c1_fixed_point = s.c3 / (s.d - 1);
    out.steps.push_back({s.c1, s.c2});
    BootstrapState cur = s;
    for (std::size_t i = 0; i < k; ++i) {
        const auto next = bootstrap_step(cur);
        out.steps.push_back(next);
        cur.c1 = next.c1;
        cur.c2 = next.c2;
    }
    return out;
}

ExponentComparison exponent_compare(const BootstrapState& s, Real n) {
    s.validate();
    const Real ln_q = std::log(static_cast<Real>(s.q));
    const Real first = n / s.psi.eval(n);
    const Real phi_n = s.phi.eval(n);
    const Real second = n * std::log(phi_n) / phi_n;

    ExponentComparison out;
    out.n = n;
    out.old_exponent = s.c1 * first + s.c2 * second;
    out.new_exponent = (s.c1 + s.c3) * first / s.d + s.c2 * second * (1 + 1 / (s.c2 * ln_q) + s.c3);
    out.new_is_smaller = out.new_exponent < out.old_exponent;
    out.first_term_dominates = s.c1 * first > s.c2 * second;
    out.c1_shrinks = (s.c1 + s.c3) / s.d < s.c1;
    return out;
}

} // namespace richlab
