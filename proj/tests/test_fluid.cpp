#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "convlab/errors.hpp"
#include "convlab/fluid.hpp"

using namespace convlab;

namespace {

constexpr double kLength = 8.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Discrete first-harmonic vortex array: u = A sin(kx) cos(ky),
// v = -A cos(kx) sin(ky) on the node grid x_i = i h.
FluidState vortex_array_state(int n, double amplitude) {
    FluidState state(n, kLength);
    const double h = state.h();
    const double k = kTwoPi / kLength;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double x = i * h;
            const double y = j * h;
            state.u.at(i, j) = amplitude * std::sin(k * x) * std::cos(k * y);
            state.v.at(i, j) = -amplitude * std::cos(k * x) * std::sin(k * y);
        }
    }
    return state;
}

// A few fixed low-wavenumber modes with pseudo-random coefficients.
void fill_random_modes(Field2D& f, double scale, std::mt19937& rng, int n, double length) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> wave(1, 3);
    const double h = length / n;
    struct Mode { int p, q; double a, phase; };
    std::vector<Mode> modes;
    for (int m = 0; m < 6; ++m)
        modes.push_back({wave(rng), wave(rng), coeff(rng), std::numbers::pi * coeff(rng)});
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (const Mode& m : modes)
                s += m.a * std::sin(kTwoPi * (m.p * i * h + m.q * j * h) / length + m.phase);
            f.at(i, j) = scale * s;
        }
    }
}

double max_abs(const Field2D& f) {
    double m = 0.0;
    for (double v : f.v) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("the rest state is an exact fixed point") {
    FluidState state(32, kLength);
    FluidSolver solver(32, kLength);
    FluidParams prm;
    prm.rho = 1000.0;
    prm.mu = 5.0;
    prm.dt = 1e-3;
    for (int it = 0; it < 3; ++it) solver.step(state, nullptr, prm);
    for (double v : state.u.v) CHECK(v == 0.0);
    for (double v : state.v.v) CHECK(v == 0.0);
    for (double v : state.p.v) CHECK(v == 0.0);
}

TEST_CASE("the vortex array decays by the implicit diffusion symbol") {
    const int n = 64;
    FluidState state = vortex_array_state(n, 0.7);
    const FluidState initial = state;
    FluidParams prm;
    prm.rho = 1000.0;
    prm.mu = 1000.0 * 0.8 / 150.0;
    prm.dt = 1e-3;
    const double h = state.h();
    const double nu_dt = prm.mu * prm.dt / prm.rho;
    const double s = std::sin(std::numbers::pi / n);
    const double factor = 1.0 / (1.0 + nu_dt * 2.0 * (4.0 / (h * h)) * s * s);

    FluidSolver solver(n, kLength);
    solver.step(state, nullptr, prm);

    double worst = 0.0;
    for (std::size_t i = 0; i < state.u.v.size(); ++i) {
        worst = std::max(worst, std::abs(state.u.v[i] - factor * initial.u.v[i]));
        worst = std::max(worst, std::abs(state.v.v[i] - factor * initial.v.v[i]));
    }
    CHECK(worst <= 1e-9);

    // Amplitude ratio at a probe node, pinned tighter than the field bound.
    const double probe = state.u.at(5, 9) / initial.u.at(5, 9);
    CHECK(std::abs(probe - factor) <= 1e-10);
}

TEST_CASE("projected velocities stay discretely divergence free under forcing") {
    const int n = 64;
    std::mt19937 rng(31337u);
    FluidState state(n, kLength);
    fill_random_modes(state.u, 0.1, rng, n, kLength);
    fill_random_modes(state.v, 0.1, rng, n, kLength);
    FluidSolver solver(n, kLength);
    FluidParams prm;
    prm.rho = 1000.0;
    prm.mu = 5.0;
    prm.dt = 1e-3;
    const double h = state.h();
    for (int it = 0; it < 5; ++it) {
        ForceField force;
        force.fx = Field2D(n);
        force.fy = Field2D(n);
        force.h = h;
        fill_random_modes(force.fx, 50.0, rng, n, kLength);
        fill_random_modes(force.fy, 50.0, rng, n, kLength);
        solver.step(state, &force, prm);
        const double div_max = max_abs(divergence(state));
        const double gate = 1e-10 * std::max(1.0, max_speed(state)) / h;
        CHECK(div_max <= gate);
    }
}

TEST_CASE("unforced kinetic energy never grows") {
    const int n = 48;
    FluidState state = vortex_array_state(n, 0.2);
    FluidSolver solver(n, kLength);
    FluidParams prm;
    prm.rho = 1000.0;
    prm.mu = 2.0;
    prm.dt = 2e-3;
    double previous = kinetic_energy(state);
    const double slack = 1e-12 * previous;
    for (int it = 0; it < 10; ++it) {
        solver.step(state, nullptr, prm);
        const double current = kinetic_energy(state);
        CHECK(current <= previous + slack);
        previous = current;
    }
    CHECK(previous < kinetic_energy(vortex_array_state(n, 0.2)));
}

TEST_CASE("a step past the advective stability limit aborts") {
    const int n = 32;
    FluidState state(n, kLength);  // h = 0.25
    for (double& v : state.u.v) v = 100.0;
    FluidSolver solver(n, kLength);
    FluidParams prm;
    prm.rho = 1000.0;
    prm.mu = 5.0;
    prm.dt = 1e-2;
    CHECK_THROWS_AS(solver.step(state, nullptr, prm), NumericError);
}

TEST_CASE("non-finite inputs abort instead of propagating") {
    const int n = 32;
    FluidState state(n, kLength);
    state.u.at(3, 4) = std::numeric_limits<double>::quiet_NaN();
    FluidSolver solver(n, kLength);
    FluidParams prm;
    prm.rho = 1000.0;
    prm.mu = 5.0;
    prm.dt = 1e-3;
    CHECK_THROWS_AS(solver.step(state, nullptr, prm), NumericError);
}

TEST_CASE("centered first differences reproduce known derivatives") {
    const int n = 32;
    const double h = kLength / n;
    const double k = kTwoPi / kLength;

    SUBCASE("shear flow vorticity") {
        FluidState state(n, kLength);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) state.u.at(i, j) = std::sin(k * j * h);
        const Field2D omega = vorticity(state);
        for (int j = 0; j < n; ++j) {
            const double expected = -std::cos(k * j * h) * std::sin(k * h) / h;
            for (int i = 0; i < n; ++i)
                CHECK(omega.at(i, j) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("compressive flow divergence") {
        FluidState state(n, kLength);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) state.u.at(i, j) = std::sin(k * i * h);
        const Field2D div = divergence(state);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                const double expected = std::cos(k * i * h) * std::sin(k * h) / h;
                CHECK(div.at(i, j) == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("kinetic energy is quadratic in the velocity scale") {
    FluidState state = vortex_array_state(32, 0.3);
    const double base = kinetic_energy(state);
    CHECK(base > 0.0);
    for (double& v : state.u.v) v *= 2.0;
    for (double& v : state.v.v) v *= 2.0;
    CHECK(kinetic_energy(state) == doctest::Approx(4.0 * base).epsilon(1e-12));

    FluidState rest(32, kLength);
    CHECK(kinetic_energy(rest) == 0.0);
    CHECK(max_speed(rest) == 0.0);
}

TEST_CASE("the throwaway wrapper matches a persistent solver step") {
    const int n = 32;
    FluidState a = vortex_array_state(n, 0.4);
    FluidState b = a;
    FluidParams prm;
    prm.rho = 1000.0;
    prm.mu = 3.0;
    prm.dt = 1e-3;
    ForceField zero;
    zero.fx = Field2D(n);
    zero.fy = Field2D(n);
    zero.h = a.h();

    FluidSolver solver(n, kLength);
    solver.step(a, &zero, prm);
    const FluidState c = ns_step(b, zero, prm);
    for (std::size_t i = 0; i < a.u.v.size(); ++i) {
        CHECK(a.u.v[i] == c.u.v[i]);
        CHECK(a.v.v[i] == c.v.v[i]);
    }
}
