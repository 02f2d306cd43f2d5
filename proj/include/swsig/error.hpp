#pragma once

#include <stdexcept>
#include <string>

namespace swsig {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed configuration, unknown vertex ids.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A vertex/delta sequence that is not a valid cycle of the graph.
class InvalidCycleError : public Error {
public:
    using Error::Error;
};

/// The random walk reached a vertex with no stable outneighbor at all,
/// so the closing step of the cycle detector cannot be taken.
class DeadEndError : public Error {
public:
    using Error::Error;
};

/// File read/write failure or unparseable input.
class IoError : public Error {
public:
    using Error::Error;
};

/// Non-finite value produced during simulation.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace swsig
