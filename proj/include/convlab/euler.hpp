#pragma once

#include <functional>
#include <vector>

#include "convlab/convergence.hpp"

namespace convlab {

struct IvpProblem {
    std::function<double(double, double)> rhs;  // (t, y) -> dy/dt
    double y0 = 0.0;
    double t0 = 0.0;
    double t1 = 1.0;
    std::function<double(double)> exact;        // empty when unknown
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> values;
    double dt = 0.0;
};

// Forward Euler over [t0, t1]. The final node lands exactly on t1; when the
// span is not an integral number of steps the last step is shortened.
Trajectory euler_solve(const IvpProblem& p, double dt);

// Max-norm error against p.exact over all trajectory nodes.
double euler_error(const IvpProblem& p, double dt);

// Error and wall time per dt; the timed region is the stepping loop alone
// (one preallocated buffer, no I/O), median of five repetitions.
ConvergenceSeries euler_timing_study(const IvpProblem& p, const std::vector<double>& dt_list);

// Built-in problem: dy/dt = 2 pi cos(2 pi t), y(0) = 1 on [0, 2], whose
// solution is 1 + sin(2 pi t).
IvpProblem cosine_drive_problem();

}  // namespace convlab
