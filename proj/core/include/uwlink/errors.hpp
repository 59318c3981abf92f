#pragma once

#include <stdexcept>
#include <string>

namespace uwlink {

// Bad inputs: malformed scenario, inconsistent plan, out-of-range parameters.
// CLI maps this family to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failures during computation: integrator blow-up, non-finite values.
// CLI maps this family to exit code 2.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace uwlink
