#include "convlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "convlab/errors.hpp"

namespace convlab {

namespace {

double value_checked(const std::function<double(double)>& f, double x, const char* who) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << who << ": function value not finite at x = " << x;
        throw NumericError(msg.str());
    }
    return y;
}

void record(RootRun& run, double x, double fx) {
    run.iterates.push_back(x);
    run.residuals.push_back(std::abs(fx));
}

}  // namespace

RootRun secant(const std::function<double(double)>& f, double x0, double x1,
               double tol, int max_iter) {
    if (x0 == x1) throw std::invalid_argument("secant: initial guesses coincide");
    if (!(tol > 0.0)) throw std::invalid_argument("secant: tolerance must be positive");
    if (max_iter < 1) throw std::invalid_argument("secant: max_iter must be >= 1");

    RootRun run;
    run.tolerance = tol;
    double fa = value_checked(f, x0, "secant");
    double fb = value_checked(f, x1, "secant");
    record(run, x0, fa);
    record(run, x1, fb);
    double a = x0, b = x1;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::abs(fb) <= tol) break;
        if (fb == fa) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "secant: stagnation, f(" << a << ") = f(" << b << ")";
            throw NumericError(msg.str());
        }
        const double next = b - fb * (b - a) / (fb - fa);
        if (!std::isfinite(next)) throw NumericError("secant: iterate diverged");
        a = b;
        fa = fb;
        b = next;
        fb = value_checked(f, b, "secant");
        record(run, b, fb);
    }
    run.converged = std::abs(fb) <= tol;
    run.root_estimate = b;
    return run;
}

RootRun newton(const std::function<double(double)>& f,
               const std::function<double(double)>& fprime, double x0,
               double tol, int max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("newton: tolerance must be positive");
    if (max_iter < 1) throw std::invalid_argument("newton: max_iter must be >= 1");
    if (!std::isfinite(fprime(x0)))
        throw std::invalid_argument("newton: derivative not finite at the starting point");

    RootRun run;
    run.tolerance = tol;
    double x = x0;
    double fx = value_checked(f, x, "newton");
    record(run, x, fx);
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::abs(fx) <= tol) break;
        const double d = fprime(x);
        if (d == 0.0 || !std::isfinite(d)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "newton: zero or non-finite derivative at x = " << x;
            throw NumericError(msg.str());
        }
        x -= fx / d;
        if (!std::isfinite(x)) throw NumericError("newton: iterate diverged");
        fx = value_checked(f, x, "newton");
        record(run, x, fx);
    }
    run.converged = std::abs(fx) <= tol;
    run.root_estimate = x;
    return run;
}

double empirical_order(const RootRun& run, double true_root) {
    const double floor = 1e-13;
    const double cap = 0.5;
    std::vector<double> e;
    e.reserve(run.iterates.size());
    for (double x : run.iterates) e.push_back(std::abs(x - true_root));

    int above_floor = 0;
    for (double ek : e)
        if (ek > floor) ++above_floor;
    if (above_floor < 5)
        throw NumericError("empirical_order: fewer than 5 iterates above the error floor");

    std::vector<double> estimates;
    for (std::size_t n = 1; n + 1 < e.size(); ++n) {
        const bool admissible =
            e[n - 1] > floor && e[n - 1] <= cap &&
            e[n] > floor && e[n] <= cap &&
            e[n + 1] > floor && e[n + 1] <= cap;
        if (!admissible) continue;
        const double num = std::log(e[n + 1] / e[n]);
        const double den = std::log(e[n] / e[n - 1]);
        if (den == 0.0) continue;
        const double p = num / den;
        if (std::isfinite(p)) estimates.push_back(p);
    }
    if (estimates.empty())
        throw NumericError("empirical_order: no admissible error triples");

    std::sort(estimates.begin(), estimates.end());
    const std::size_t m = estimates.size();
    return m % 2 == 1 ? estimates[m / 2]
                      : 0.5 * (estimates[m / 2 - 1] + estimates[m / 2]);
}

}  // namespace convlab
