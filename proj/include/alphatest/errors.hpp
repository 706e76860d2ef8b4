#pragma once

#include <stdexcept>
#include <string>

namespace alphatest {

// Base class for all library failures so callers can distinguish
// bad inputs (usage) from numerical breakdown (runtime).
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid arguments, malformed files, dimension mismatches.
struct input_error : error {
    using error::error;
};

// Numerical failures: singular designs, unstable variance estimates,
// degenerate statistics.
struct numeric_error : error {
    using error::error;
};

struct singular_design_error : numeric_error {
    using numeric_error::numeric_error;
};

struct degrees_of_freedom_error : input_error {
    using input_error::input_error;
};

struct unstable_variance_error : numeric_error {
    using numeric_error::numeric_error;
};

}  // namespace alphatest
