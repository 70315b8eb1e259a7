#pragma once

#include <stdexcept>
#include <string>

namespace ptlab {

// Bad user input or a precondition violated by the caller.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A quantity left its mathematical domain (NaN density, pole hit, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A numerical routine failed to reach its tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ptlab
