#pragma once

#include <stdexcept>
#include <string>

namespace nbldpc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad parameters or malformed inputs.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Requested construction is infeasible (degrees, rank, capacity).
class ConstructionError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace nbldpc
