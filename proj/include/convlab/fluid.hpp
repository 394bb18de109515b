#pragma once

#include <memory>
#include <vector>

#include "convlab/field.hpp"
#include "convlab/ib.hpp"

namespace convlab {

struct FluidParams {
    double rho = 1.0;
    double mu = 1.0;
    double dt = 1.0;
};

struct FluidState {
    Field2D u, v, p;
    int n = 0;
    double length = 0.0;

    FluidState() = default;
    FluidState(int n_, double length_)
        : u(n_), v(n_), p(n_), n(n_), length(length_) {}
    double h() const { return length / n; }
};

// One grid's spectral machinery: FFT plans, centered-difference symbols,
// and scratch buffers, reusable across many steps.
class FluidSolver {
public:
    FluidSolver(int n, double length);
    ~FluidSolver();
    FluidSolver(const FluidSolver&) = delete;
    FluidSolver& operator=(const FluidSolver&) = delete;

    // Semi-implicit step: explicit skew-symmetric advection, implicit
    // diffusion, pressure projection with centered-difference symbols.
    // Aborts with a stability error when max speed * dt / h exceeds 1.
    void step(FluidState& state, const ForceField* force, const FluidParams& prm);

    int n() const;
    double length() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Convenience wrapper building a throwaway solver.
FluidState ns_step(const FluidState& state, const ForceField& force, const FluidParams& prm);

// Centered periodic first differences.
Field2D divergence(const FluidState& state);
Field2D vorticity(const FluidState& state);

double max_speed(const FluidState& state);
double kinetic_energy(const FluidState& state);

}  // namespace convlab
