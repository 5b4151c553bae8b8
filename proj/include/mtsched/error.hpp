#pragma once

#include <stdexcept>
#include <string>

namespace mtsched {

// Exit-code contract shared by the library and the CLI:
//   2 = input/schema error, 3 = constraint error, 4 = capacity error.
class Error : public std::runtime_error {
public:
    Error(const std::string& message, int exit_code)
        : std::runtime_error(message), exit_code_(exit_code) {}

    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

// Malformed documents, bad shapes, out-of-range indices.
class InputError : public Error {
public:
    explicit InputError(const std::string& message) : Error(message, 2) {}
};

// Zero-variance vectors and other statistically degenerate inputs.
class DegenerateInputError : public InputError {
public:
    explicit DegenerateInputError(const std::string& message) : InputError(message) {}
};

// Violated or unsatisfiable ordering constraints (e.g. cyclic precedence).
class ConstraintError : public Error {
public:
    explicit ConstraintError(const std::string& message) : Error(message, 3) {}
};

// Problem sizes beyond a configured cap (enumeration, exact solver).
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& message) : Error(message, 4) {}
};

} // namespace mtsched
