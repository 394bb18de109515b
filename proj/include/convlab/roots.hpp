#pragma once

#include <functional>
#include <vector>

namespace convlab {

struct RootRun {
    std::vector<double> iterates;   // x_0, x_1, ...
    std::vector<double> residuals;  // |f(x_k)|, same length as iterates
    bool converged = false;
    double root_estimate = 0.0;
    double tolerance = 0.0;
};

RootRun secant(const std::function<double(double)>& f, double x0, double x1,
               double tol, int max_iter);

RootRun newton(const std::function<double(double)>& f,
               const std::function<double(double)>& fprime, double x0,
               double tol, int max_iter);

// Median of per-triple order estimates log(e_{n+1}/e_n) / log(e_n/e_{n-1})
// over triples whose errors all lie in (1e-13, 0.5]. Requires at least five
// iterates with errors above the floor.
double empirical_order(const RootRun& run, double true_root);

}  // namespace convlab
