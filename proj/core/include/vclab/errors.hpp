#pragma once

#include <stdexcept>
#include <string>

namespace vclab {

// Domain errors: bad arguments or parameters outside a documented domain.
// Mapped to exit code 1 by the CLI.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Resource errors: caps or budgets exceeded. Mapped to exit code 2.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A proved property failed to hold on concrete data. This is a test-failure
// signal, never an expected runtime outcome.
class PropertyViolation : public std::logic_error {
public:
    explicit PropertyViolation(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace vclab
