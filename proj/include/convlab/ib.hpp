#pragma once

#include <vector>

#include "convlab/field.hpp"

namespace convlab {

struct Spring {
    int master = 0;
    int slave = 0;
    double stiffness = 0.0;
    double rest_length = 0.0;
};

struct Beam {
    int left = 0;
    int middle = 0;
    int right = 0;
    double stiffness = 0.0;
    double cx = 0.0;  // preferred second difference of positions
    double cy = 0.0;
};

struct Target {
    int node = 0;
    double stiffness = 0.0;
    double ax = 0.0;  // anchor position
    double ay = 0.0;
};

struct LagrangianMesh {
    std::vector<double> x, y;
    double ds = 0.0;
    std::vector<Spring> springs;
    std::vector<Beam> beams;
    std::vector<Target> targets;
    std::vector<Spring> muscles;  // rest lengths rescaled by the activation signal
};

struct ForceField {
    Field2D fx, fy;
    double h = 0.0;
};

// Four-point regularized kernel; support |r| < 2, unit sum over the integer
// shifts of any offset.
double delta_phi(double r);

// Spread per-length node force densities onto the grid:
// F(x_ij) += sum_s f_s phi(dx/h) phi(dy/h) ds / h^2, periodic wrapping.
void spread(const LagrangianMesh& mesh,
            const std::vector<double>& fx_node, const std::vector<double>& fy_node,
            int n, double length, ForceField& out);

// Interpolate grid velocities at the nodes with the same kernel:
// U_s = sum_ij u(x_ij) phi(dx/h) phi(dy/h); the h^2 weights cancel.
void interp(const Field2D& u, const Field2D& v, double length,
            const LagrangianMesh& mesh,
            std::vector<double>& u_node, std::vector<double>& v_node);

// Accumulate one spring's force pair using an explicit rest length; shared
// by the spring and muscle paths.
void accumulate_spring(const std::vector<double>& x, const std::vector<double>& y,
                       const Spring& s, double rest_length,
                       std::vector<double>& fx, std::vector<double>& fy);

// Fiber force laws; each accumulates into per-node force densities.
void spring_force(const LagrangianMesh& mesh, std::vector<double>& fx, std::vector<double>& fy);
void beam_force(const LagrangianMesh& mesh, std::vector<double>& fx, std::vector<double>& fy);
void target_force(const LagrangianMesh& mesh, std::vector<double>& fx, std::vector<double>& fy);

// Muscle springs with every rest length scaled by factor (the activation
// state maps factor from 1 at rest to the contraction fraction at peak).
void muscle_force(const LagrangianMesh& mesh, double factor,
                  std::vector<double>& fx, std::vector<double>& fy);

}  // namespace convlab
