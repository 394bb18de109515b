#pragma once

#include <stdexcept>

namespace convlab {

// Numeric failures (divergence, stagnation, instability) map to CLI exit
// code 2; filesystem failures map to exit code 3. Bad arguments reuse the
// standard logic-error types and map to the usage exit code 1.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace convlab
