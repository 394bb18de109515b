#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <utility>
#include <vector>

namespace convlab {

enum class ResolutionKind { grid_points, time_step, term_count };

struct ConvergenceSeries {
    ResolutionKind kind = ResolutionKind::grid_points;
    // True when refining means growing the resolution value (grid points),
    // false when refining means shrinking it (time step).
    bool refine_grows_resolution = true;
    std::vector<double> resolution;
    std::vector<double> error;
    std::vector<double> wall_time;  // empty, or one entry per point
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t window_begin = 0;  // [begin, end) index range actually fitted
    std::size_t window_end = 0;
    double max_residual = 0.0;     // in log10 units
    int excluded_floor_points = 0;
};

struct AbsRel {
    double absolute = 0.0;
    double relative = 0.0;          // meaningful only when relative_defined
    bool relative_defined = true;   // false when |fine| < 1e-300
};

AbsRel abs_rel_error(double fine, double coarse);

// Nodal injection from an n_fine x n_fine field (row major, x fastest) onto
// the nested coarse grid; grids share node 0 and wrap periodically.
std::vector<double> restrict_field(const std::vector<double>& fine, int n_fine, int ratio);

// L^p norm of (restrict(fine) - coarse) on the coarse grid; p is 1, 2, or
// infinity. h_coarse scales the finite-p sums by cell area.
double field_error(const std::vector<double>& fine, int n_fine,
                   const std::vector<double>& coarse, int n_coarse,
                   double p, double h_coarse);

// Pointwise-relative max norm; entries where |fine| < 1e-300 are skipped.
// The flag is false when every entry was skipped.
std::pair<double, bool> field_error_rel_inf(const std::vector<double>& fine, int n_fine,
                                            const std::vector<double>& coarse, int n_coarse);

RateFit fit_rate(const ConvergenceSeries& series, double floor = 1e-14);

double time_scaling(double factor, int dimension);

// Wall time of the body alone on the monotonic clock. The body runs once.
template <class F>
auto timed(F&& body) {
    const auto start = std::chrono::steady_clock::now();
    auto result = body();
    const auto stop = std::chrono::steady_clock::now();
    return std::make_pair(std::move(result),
                          std::chrono::duration<double>(stop - start).count());
}

// Median of five timings of the body; each sample batches repeats until it
// is long enough for the clock to resolve, then divides by the batch size.
template <class F>
auto timed_median5(F&& body) {
    auto result = body();  // warm up and capture the value once
    std::vector<double> samples;
    samples.reserve(5);
    for (int s = 0; s < 5; ++s) {
        long reps = 1;
        for (;;) {
            const auto start = std::chrono::steady_clock::now();
            for (long r = 0; r < reps; ++r) (void)body();
            const auto stop = std::chrono::steady_clock::now();
            const double total = std::chrono::duration<double>(stop - start).count();
            if (total >= 2e-4 || reps >= (1L << 22)) {
                samples.push_back(total / static_cast<double>(reps));
                break;
            }
            reps *= 4;
        }
    }
    std::sort(samples.begin(), samples.end());
    return std::make_pair(std::move(result), samples[2]);
}

}  // namespace convlab
