#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "convlab/errors.hpp"
#include "convlab/roots.hpp"

using namespace convlab;

namespace {

double f_parabola(double x) { return x * x - 2.0; }
double fp_parabola(double x) { return 2.0 * x; }
double f_cosine_gap(double x) { return std::cos(x) - x; }
double fp_cosine_gap(double x) { return -std::sin(x) - 1.0; }
double f_exp_level(double x) { return std::exp(x) - 2.0; }
double fp_exp_level(double x) { return std::exp(x); }

constexpr double kTol = 1e-14;
constexpr int kMaxIter = 60;
constexpr double kCosineRoot = 0.7390851332151607;

// A run whose error sequence squares at every step: e_{k+1} = e_k^2.
RootRun synthetic_squaring_run(double root, int n_points) {
    RootRun run;
    double e = 0.5;
    for (int i = 0; i < n_points; ++i) {
        run.iterates.push_back(root + e);
        run.residuals.push_back(e);
        e *= e;
    }
    run.converged = true;
    run.root_estimate = run.iterates.back();
    run.tolerance = kTol;
    return run;
}

}  // namespace

TEST_CASE("secant on the parabola reproduces the hand-computed iterate") {
    const RootRun run = secant(f_parabola, 1.0, 2.0, kTol, kMaxIter);
    REQUIRE(run.iterates.size() >= 3);
    CHECK(run.iterates[0] == 1.0);
    CHECK(run.iterates[1] == 2.0);
    // x_2 = 2 - f(2) * (2 - 1) / (f(2) - f(1)) = 4/3, reproduced here with
    // the same floating-point operation order the update uses.
    CHECK(run.iterates[2] == 2.0 - 2.0 * 1.0 / 3.0);
    CHECK(run.iterates[2] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

    CHECK(run.converged);
    CHECK(run.residuals.size() == run.iterates.size());
    CHECK(run.residuals.back() <= kTol);
    CHECK(run.tolerance == kTol);
    CHECK(std::abs(run.root_estimate - std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("secant order estimates land near the golden exponent") {
    const RootRun parabola = secant(f_parabola, 1.0, 2.0, kTol, kMaxIter);
    CHECK(empirical_order(parabola, std::sqrt(2.0)) == doctest::Approx(1.6666).epsilon(1e-3));

    const RootRun cosine = secant(f_cosine_gap, 0.0, 1.0, kTol, kMaxIter);
    CHECK(cosine.converged);
    CHECK(empirical_order(cosine, kCosineRoot) == doctest::Approx(1.6378).epsilon(1e-3));

    const RootRun expo = secant(f_exp_level, 0.0, 1.0, kTol, kMaxIter);
    CHECK(expo.converged);
    CHECK(std::abs(expo.root_estimate - std::log(2.0)) <= 1e-13);
    CHECK(empirical_order(expo, std::log(2.0)) == doctest::Approx(1.6355).epsilon(1e-3));

    for (double order : {empirical_order(parabola, std::sqrt(2.0)),
                         empirical_order(cosine, kCosineRoot),
                         empirical_order(expo, std::log(2.0))}) {
        CHECK(order > 1.52);
        CHECK(order < 1.72);
    }
}

TEST_CASE("newton order estimates land near two") {
    const RootRun parabola = newton(f_parabola, fp_parabola, 2.0, kTol, kMaxIter);
    CHECK(parabola.converged);
    CHECK(empirical_order(parabola, std::sqrt(2.0)) == doctest::Approx(1.9918).epsilon(1e-3));

    // Starting far from the root keeps enough slow early steps to estimate.
    const RootRun cosine = newton(f_cosine_gap, fp_cosine_gap, 3.0, kTol, kMaxIter);
    CHECK(cosine.converged);
    CHECK(std::abs(cosine.root_estimate - kCosineRoot) <= 1e-13);
    CHECK(empirical_order(cosine, kCosineRoot) == doctest::Approx(2.0117).epsilon(1e-3));

    const RootRun expo = newton(f_exp_level, fp_exp_level, 2.0, kTol, kMaxIter);
    CHECK(empirical_order(expo, std::log(2.0)) == doctest::Approx(1.9919).epsilon(1e-3));

    for (double order : {empirical_order(parabola, std::sqrt(2.0)),
                         empirical_order(cosine, kCosineRoot),
                         empirical_order(expo, std::log(2.0))}) {
        CHECK(order > 1.85);
        CHECK(order < 2.15);
    }
}

TEST_CASE("secant solves an affine function in one corrected step") {
    const RootRun run = secant([](double x) { return 2.0 * x - 6.0; }, 0.0, 1.0, kTol, kMaxIter);
    REQUIRE(run.iterates.size() == 3);
    CHECK(run.iterates[2] == 3.0);
    CHECK(run.converged);
    CHECK(run.root_estimate == 3.0);
    CHECK(run.residuals.back() == 0.0);
}

TEST_CASE("degenerate inputs are reported, not looped on") {
    SUBCASE("coincident secant starts") {
        CHECK_THROWS_AS((void)secant(f_parabola, 1.0, 1.0, kTol, kMaxIter),
                        std::invalid_argument);
    }
    SUBCASE("symmetric bracket stalls the secant slope") {
        CHECK_THROWS_AS((void)secant([](double x) { return x * x; }, -1.0, 1.0, kTol, kMaxIter),
                        NumericError);
    }
    SUBCASE("newton from a stationary point") {
        CHECK_THROWS_AS((void)newton(f_parabola, fp_parabola, 0.0, kTol, kMaxIter),
                        NumericError);
    }
}

TEST_CASE("an exhausted iteration budget is a clean non-convergence") {
    const RootRun run = secant(f_parabola, 1.0, 2.0, 1e-30, 3);
    CHECK_FALSE(run.converged);
    CHECK(run.iterates.size() >= 3);
    CHECK(run.residuals.size() == run.iterates.size());
}

TEST_CASE("order estimation refuses runs with too few usable errors") {
    // From a nearby start Newton hits the floor after only four usable steps.
    const RootRun cosine = newton(f_cosine_gap, fp_cosine_gap, 1.0, kTol, kMaxIter);
    CHECK(cosine.converged);
    CHECK_THROWS_AS((void)empirical_order(cosine, kCosineRoot), NumericError);

    const RootRun short_run = synthetic_squaring_run(0.25, 4);
    CHECK_THROWS_AS((void)empirical_order(short_run, 0.25), NumericError);
}

TEST_CASE("order estimation is exact on a synthetic squaring sequence") {
    const RootRun run = synthetic_squaring_run(0.25, 6);
    CHECK(empirical_order(run, 0.25) == doctest::Approx(2.0).epsilon(1e-12));
}
