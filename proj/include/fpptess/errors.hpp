#pragma once

#include <stdexcept>
#include <string>

namespace fpptess {

// Bad user-supplied parameters or config strings. CLI maps this to exit 2.
class invalid_parameter : public std::invalid_argument {
public:
    explicit invalid_parameter(const std::string& msg)
        : std::invalid_argument(msg) {}
};

// A numeric routine could not reach its accuracy target. CLI maps to exit 3.
class numeric_failure : public std::runtime_error {
public:
    explicit numeric_failure(const std::string& msg)
        : std::runtime_error(msg) {}
};

// Query point outside the sampled window; result would depend on unsampled
// geometry.
class out_of_window : public std::runtime_error {
public:
    explicit out_of_window(const std::string& msg)
        : std::runtime_error(msg) {}
};

// Window parameters violate a safety margin precondition.
class construction_unsafe : public std::runtime_error {
public:
    explicit construction_unsafe(const std::string& msg)
        : std::runtime_error(msg) {}
};

// File output failed (unwritable path, rename failure, empty payload).
class io_failure : public std::runtime_error {
public:
    explicit io_failure(const std::string& msg)
        : std::runtime_error(msg) {}
};

} // namespace fpptess
