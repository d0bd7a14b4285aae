#pragma once

#include <stdexcept>
#include <string>

namespace meanders {

// Violated mathematical precondition or malformed value (wrong domain,
// mixed pi exponents, odd zeta argument, ...).
struct math_error : std::domain_error {
    explicit math_error(const std::string& what) : std::domain_error(what) {}
};

// Request exceeds a configured enumeration budget. Distinct from math_error
// so callers can tell "you asked for too much" from "this is nonsense".
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace meanders
