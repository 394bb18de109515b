#pragma once

#include <cstdint>
#include <vector>

namespace convlab {

// Reference value used for every error in the ratio series; kept as the
// printed 16-digit constant rather than recomputed from (1+sqrt(5))/2 so
// the series is reproducible digit for digit.
inline constexpr double kGoldenRatio = 1.618033988749895;

// Largest index whose Fibonacci value fits in 64 unsigned bits under the
// F_0 = F_1 = 1 convention.
inline constexpr int kMaxFibIndex = 91;

struct FibTable {
    std::vector<std::uint64_t> values;  // F_0 .. F_n
};

struct RatioSeries {
    std::vector<int> index;             // k = 1 .. n_max
    std::vector<double> approximations; // F_{k+1} / F_k
    std::vector<double> errors;         // |kGoldenRatio - approximations[k-1]|
};

FibTable fib_sequence(int n);
RatioSeries golden_series(int n_max);

// Number of sequence terms needed before successive ratio approximations
// agree within tol (clamped below at 1e-16, the double-precision floor).
int terms_for_tolerance(double tol);

// Upper bound 1/F_{m-1} on the ratio error at index m.
double geometric_bound(int m);

}  // namespace convlab
