#pragma once

#include <stdexcept>
#include <string>

namespace lqreg {

// Bad user input: malformed files, unknown columns, invalid parameters.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: degenerate moments, zero variance, undefined ratios.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace lqreg
