#pragma once

#include <stdexcept>
#include <string>

namespace csl {

// Input data violates a documented invariant (bad file, bad dataset).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A computation produced a non-finite value or otherwise broke down.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace csl
