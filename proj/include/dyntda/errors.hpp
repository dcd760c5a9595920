#pragma once

#include <stdexcept>
#include <string>

namespace dyntda {

// Thrown when a stored structure fails one of its representation
// invariants (e.g. a module support that is not order-convex).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a brute-force computation would exceed its operation budget.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dyntda
