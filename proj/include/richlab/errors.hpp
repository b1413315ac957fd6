#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace richlab {

// Bad argument or violated precondition supplied by the caller.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Evaluation point outside a function's domain (or a non-finite result).
class DomainError : public InputError {
public:
    using InputError::InputError;
};

// Operation not valid in the current object state (e.g. pop on empty eertree).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numeric check was requested but its analytic precondition did not verify
// on the sampled range; distinct from a `false` verdict.
class HypothesisNotVerified : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SeedGapError : public InputError {
public:
    explicit SeedGapError(std::size_t missing)
        : InputError("recurrence seeds have a gap: missing index " + std::to_string(missing)),
          missing_index(missing) {}
    std::size_t missing_index;
};

} // namespace richlab
