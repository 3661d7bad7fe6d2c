#pragma once

#include <stdexcept>
#include <string>

namespace fluxjac {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct SingularMatrixError : Error {
    using Error::Error;
};

// Raised when a state leaves the admissible set (negative density,
// pressure, or water height). Carries the first offending location.
struct InadmissibleStateError : Error {
    int node = -1;
    explicit InadmissibleStateError(const std::string& what, int node_ = -1)
        : Error(what), node(node_) {}
};

struct DomainError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace fluxjac
