#include "convlab/golden.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace convlab {

FibTable fib_sequence(int n) {
    if (n < 0 || n > kMaxFibIndex)
        throw std::out_of_range("fib_sequence: index " + std::to_string(n) +
                                " outside [0, " + std::to_string(kMaxFibIndex) + "]");
    FibTable t;
    t.values.reserve(static_cast<std::size_t>(n) + 1);
    t.values.push_back(1);
    if (n >= 1) t.values.push_back(1);
    for (int k = 2; k <= n; ++k)
        t.values.push_back(t.values[k - 1] + t.values[k - 2]);
    return t;
}

RatioSeries golden_series(int n_max) {
    if (n_max < 1 || n_max > kMaxFibIndex - 1)
        throw std::out_of_range("golden_series: n_max " + std::to_string(n_max) +
                                " outside [1, " + std::to_string(kMaxFibIndex - 1) + "]");
    const FibTable fib = fib_sequence(n_max + 1);
    RatioSeries s;
    s.index.reserve(n_max);
    s.approximations.reserve(n_max);
    s.errors.reserve(n_max);
    for (int k = 1; k <= n_max; ++k) {
        const double phi = static_cast<double>(fib.values[k + 1]) /
                           static_cast<double>(fib.values[k]);
        s.index.push_back(k);
        s.approximations.push_back(phi);
        s.errors.push_back(std::abs(kGoldenRatio - phi));
    }
    return s;
}

int terms_for_tolerance(double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("terms_for_tolerance: tolerance must be positive");
    const double clamped = std::max(tol, 1e-16);
    const RatioSeries s = golden_series(kMaxFibIndex - 1);
    for (std::size_t i = 1; i < s.approximations.size(); ++i) {
        if (std::abs(s.approximations[i] - s.approximations[i - 1]) <= clamped) {
            // approximations[i] is ratio index i+1 and consumes i+3 sequence
            // terms counted from F_0; successive agreement is first reached
            // at ratio index n = i+1, giving n+2 terms.
            return static_cast<int>(i) + 3;
        }
    }
    throw std::logic_error("terms_for_tolerance: agreement never reached");
}

double geometric_bound(int m) {
    if (m < 2 || m > kMaxFibIndex)
        throw std::out_of_range("geometric_bound: index " + std::to_string(m) +
                                " outside [2, " + std::to_string(kMaxFibIndex) + "]");
    const FibTable fib = fib_sequence(m - 1);
    return 1.0 / static_cast<double>(fib.values[m - 1]);
}

}  // namespace convlab
