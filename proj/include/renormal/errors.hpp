#pragma once

#include <stdexcept>
#include <string>

namespace renormal {

/// Experiment configuration that violates the schema.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical precondition (resolution, stability) does not hold.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mollifier width not resolvable on the grid or too wide for the torus.
class KernelResolutionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Time step above the explicit stability bound.
class CflViolation : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

}  // namespace renormal
