#include "convlab/ib.hpp"

#include <cmath>
#include <stdexcept>

#include "convlab/errors.hpp"

namespace convlab {

double delta_phi(double r) {
    const double a = std::abs(r);
    if (a < 1.0) {
        const double arg = 1.0 + 4.0 * a - 4.0 * a * a;
        return 0.125 * (3.0 - 2.0 * a + std::sqrt(std::max(arg, 0.0)));
    }
    if (a < 2.0) {
        const double arg = -7.0 + 12.0 * a - 4.0 * a * a;
        return 0.125 * (5.0 - 2.0 * a - std::sqrt(std::max(arg, 0.0)));
    }
    return 0.0;
}

namespace {

// 4x4 stencil around one node: wrapped indices and kernel weights per axis.
struct Stencil {
    int ix[4], iy[4];
    double wx[4], wy[4];
};

inline int wrap(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

Stencil make_stencil(double px, double py, int n, double h, double length) {
    // Wrap positions into [0, L) first; the grid is periodic.
    double sx = std::fmod(px, length);
    if (sx < 0.0) sx += length;
    double sy = std::fmod(py, length);
    if (sy < 0.0) sy += length;
    const double ax = sx / h;
    const double ay = sy / h;
    const int bx = static_cast<int>(std::floor(ax));
    const int by = static_cast<int>(std::floor(ay));
    Stencil st;
    for (int d = 0; d < 4; ++d) {
        const int gx = bx - 1 + d;
        const int gy = by - 1 + d;
        st.ix[d] = wrap(gx, n);
        st.iy[d] = wrap(gy, n);
        st.wx[d] = delta_phi(static_cast<double>(gx) - ax);
        st.wy[d] = delta_phi(static_cast<double>(gy) - ay);
    }
    return st;
}

}  // namespace

void spread(const LagrangianMesh& mesh,
            const std::vector<double>& fx_node, const std::vector<double>& fy_node,
            int n, double length, ForceField& out) {
    if (fx_node.size() != mesh.x.size() || fy_node.size() != mesh.x.size())
        throw std::invalid_argument("spread: node force lengths do not match the mesh");
    const double h = length / n;
    if (out.fx.n != n) out.fx = Field2D(n);
    if (out.fy.n != n) out.fy = Field2D(n);
    out.h = h;
    const double scale = mesh.ds / (h * h);
    for (std::size_t s = 0; s < mesh.x.size(); ++s) {
        const Stencil st = make_stencil(mesh.x[s], mesh.y[s], n, h, length);
        const double fx = fx_node[s] * scale;
        const double fy = fy_node[s] * scale;
        for (int dy = 0; dy < 4; ++dy) {
            for (int dx = 0; dx < 4; ++dx) {
                const double w = st.wx[dx] * st.wy[dy];
                out.fx.at(st.ix[dx], st.iy[dy]) += fx * w;
                out.fy.at(st.ix[dx], st.iy[dy]) += fy * w;
            }
        }
    }
}

void interp(const Field2D& u, const Field2D& v, double length,
            const LagrangianMesh& mesh,
            std::vector<double>& u_node, std::vector<double>& v_node) {
    const int n = u.n;
    if (v.n != n) throw std::invalid_argument("interp: velocity fields differ in size");
    const double h = length / n;
    u_node.assign(mesh.x.size(), 0.0);
    v_node.assign(mesh.x.size(), 0.0);
    for (std::size_t s = 0; s < mesh.x.size(); ++s) {
        const Stencil st = make_stencil(mesh.x[s], mesh.y[s], n, h, length);
        double us = 0.0, vs = 0.0;
        for (int dy = 0; dy < 4; ++dy) {
            for (int dx = 0; dx < 4; ++dx) {
                const double w = st.wx[dx] * st.wy[dy];
                us += u.at(st.ix[dx], st.iy[dy]) * w;
                vs += v.at(st.ix[dx], st.iy[dy]) * w;
            }
        }
        u_node[s] = us;
        v_node[s] = vs;
    }
}

void accumulate_spring(const std::vector<double>& x, const std::vector<double>& y,
                       const Spring& s, double rest_length,
                       std::vector<double>& fx, std::vector<double>& fy) {
    const double dx = x[s.slave] - x[s.master];
    const double dy = y[s.slave] - y[s.master];
    const double r = std::hypot(dx, dy);
    if (r == 0.0)
        throw NumericError("spring_force: connected nodes coincide");
    const double scale = s.stiffness * (1.0 - rest_length / r);
    fx[s.master] += scale * dx;
    fy[s.master] += scale * dy;
    fx[s.slave] -= scale * dx;
    fy[s.slave] -= scale * dy;
}

void spring_force(const LagrangianMesh& mesh, std::vector<double>& fx, std::vector<double>& fy) {
    for (const Spring& s : mesh.springs)
        accumulate_spring(mesh.x, mesh.y, s, s.rest_length, fx, fy);
}

void beam_force(const LagrangianMesh& mesh, std::vector<double>& fx, std::vector<double>& fy) {
    for (const Beam& b : mesh.beams) {
        const double dx = (mesh.x[b.left] - 2.0 * mesh.x[b.middle] + mesh.x[b.right]) - b.cx;
        const double dy = (mesh.y[b.left] - 2.0 * mesh.y[b.middle] + mesh.y[b.right]) - b.cy;
        // Energy gradient of k/2 |D|^2: the pattern (-1, +2, -1) k D sums to
        // zero for every triple.
        fx[b.left] -= b.stiffness * dx;
        fy[b.left] -= b.stiffness * dy;
        fx[b.middle] += 2.0 * b.stiffness * dx;
        fy[b.middle] += 2.0 * b.stiffness * dy;
        fx[b.right] -= b.stiffness * dx;
        fy[b.right] -= b.stiffness * dy;
    }
}

void target_force(const LagrangianMesh& mesh, std::vector<double>& fx, std::vector<double>& fy) {
    for (const Target& t : mesh.targets) {
        fx[t.node] += t.stiffness * (t.ax - mesh.x[t.node]);
        fy[t.node] += t.stiffness * (t.ay - mesh.y[t.node]);
    }
}

void muscle_force(const LagrangianMesh& mesh, double factor,
                  std::vector<double>& fx, std::vector<double>& fy) {
    for (const Spring& m : mesh.muscles)
        accumulate_spring(mesh.x, mesh.y, m, m.rest_length * factor, fx, fy);
}

}  // namespace convlab
