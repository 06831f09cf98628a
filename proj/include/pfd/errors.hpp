#pragma once

#include <stdexcept>
#include <string>

namespace pfd {

/// Input failed a domain invariant (bad dimensions, weights, schema, guards).
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File system or parse failure.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical routine failed to converge or produced an inconsistent result.
class computation_error : public std::runtime_error {
public:
    explicit computation_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pfd
