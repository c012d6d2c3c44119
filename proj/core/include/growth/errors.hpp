#pragma once

#include <stdexcept>
#include <string>

namespace growth {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed family spec, matrix file, or vertex key.
class InvalidPresentation : public Error {
public:
    using Error::Error;
};

/// Lazy expansion touched more vertices than the configured cap allows.
class ExpansionCapExceeded : public Error {
public:
    ExpansionCapExceeded(std::size_t cap, const std::string& context)
        : Error("vertex cap of " + std::to_string(cap) + " exceeded while " + context),
          cap_(cap) {}
    std::size_t cap() const { return cap_; }

private:
    std::size_t cap_;
};

/// Iterative eigenvalue computation failed to reach the requested tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Requested eigendata does not exist or cannot be normalized.
class EigendataError : public Error {
public:
    using Error::Error;
};

/// A filtration schedule violated its contract (nesting, unit membership).
class ScheduleError : public Error {
public:
    using Error::Error;
};

/// Operation requires structure the problem does not have
/// (e.g. an asymptotic fit on a problem without a stable final basic class).
class StructureError : public Error {
public:
    using Error::Error;
};

}  // namespace growth
