// Exception types shared by all qhp modules

#pragma once

#include <stdexcept>
#include <string>

namespace qhp {

/// Input or configuration violates a documented precondition or physical invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to meet its accuracy contract (non-convergence,
/// singular matrices, ambiguous mode labels, ill-posed steady states).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed; the message names the path and cause.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qhp
