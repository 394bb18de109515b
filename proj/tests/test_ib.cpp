#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "convlab/errors.hpp"
#include "convlab/field.hpp"
#include "convlab/ib.hpp"

using namespace convlab;

namespace {

constexpr int kN = 16;
constexpr double kLength = 3.2;
constexpr double kH = kLength / kN;

LagrangianMesh ring_mesh(int n_nodes, std::mt19937& rng) {
    std::uniform_real_distribution<double> pos(0.0, kLength);
    LagrangianMesh mesh;
    for (int i = 0; i < n_nodes; ++i) {
        mesh.x.push_back(pos(rng));
        mesh.y.push_back(pos(rng));
    }
    mesh.ds = 0.05;
    return mesh;
}

double field_sum(const Field2D& f) {
    double s = 0.0;
    for (double v : f.v) s += v;
    return s;
}

}  // namespace

TEST_CASE("kernel point values, support, and symmetry") {
    CHECK(delta_phi(0.0) == 0.5);
    CHECK(delta_phi(1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(delta_phi(-1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(delta_phi(2.0) == 0.0);
    CHECK(delta_phi(-2.0) == 0.0);
    CHECK(delta_phi(2.5) == 0.0);
    CHECK(delta_phi(-17.0) == 0.0);
    for (double r : {0.1, 0.37, 0.9, 1.2, 1.75}) CHECK(delta_phi(r) == delta_phi(-r));
    CHECK(delta_phi(0.3) > 0.0);
    CHECK(delta_phi(1.5) > 0.0);
}

TEST_CASE("kernel partitions unity and reproduces the first moment") {
    for (int k = 0; k <= 996; ++k) {
        const double r = static_cast<double>(k) / 997.0;  // offsets across one cell
        double sum = 0.0;
        double moment = 0.0;
        for (int j = -2; j <= 3; ++j) {
            const double w = delta_phi(r - j);
            sum += w;
            moment += j * w;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        CHECK(std::abs(moment - r) <= 1e-12);
    }
}

TEST_CASE("spread and interpolation are adjoint under the grid/fiber inner products") {
    std::mt19937 rng(20260822u);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        LagrangianMesh mesh = ring_mesh(12, rng);
        std::vector<double> fxn(mesh.x.size()), fyn(mesh.x.size());
        for (auto& f : fxn) f = unit(rng);
        for (auto& f : fyn) f = unit(rng);
        Field2D u(kN), v(kN);
        for (auto& val : u.v) val = unit(rng);
        for (auto& val : v.v) val = unit(rng);

        ForceField grid_force;
        spread(mesh, fxn, fyn, kN, kLength, grid_force);
        CHECK(grid_force.h == doctest::Approx(kH).epsilon(1e-15));

        std::vector<double> un, vn;
        interp(u, v, kLength, mesh, un, vn);

        double grid_side = 0.0;
        for (std::size_t i = 0; i < u.v.size(); ++i)
            grid_side += grid_force.fx.v[i] * u.v[i] + grid_force.fy.v[i] * v.v[i];
        grid_side *= kH * kH;

        double fiber_side = 0.0;
        for (std::size_t s = 0; s < mesh.x.size(); ++s)
            fiber_side += fxn[s] * un[s] + fyn[s] * vn[s];
        fiber_side *= mesh.ds;

        const double scale = std::max({std::abs(grid_side), std::abs(fiber_side), 1e-30});
        CHECK(std::abs(grid_side - fiber_side) / scale <= 1e-12);
    }
}

TEST_CASE("spreading conserves the total force") {
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    LagrangianMesh mesh = ring_mesh(9, rng);
    std::vector<double> fxn(mesh.x.size()), fyn(mesh.x.size());
    double fx_total = 0.0, fy_total = 0.0;
    for (std::size_t s = 0; s < fxn.size(); ++s) {
        fxn[s] = unit(rng);
        fyn[s] = unit(rng);
        fx_total += fxn[s] * mesh.ds;
        fy_total += fyn[s] * mesh.ds;
    }
    ForceField out;
    spread(mesh, fxn, fyn, kN, kLength, out);
    CHECK(field_sum(out.fx) * kH * kH == doctest::Approx(fx_total).epsilon(1e-12));
    CHECK(field_sum(out.fy) * kH * kH == doctest::Approx(fy_total).epsilon(1e-12));
}

TEST_CASE("spreading accumulates into an existing force field") {
    LagrangianMesh mesh;
    mesh.x = {1.0};
    mesh.y = {1.7};
    mesh.ds = 0.1;
    const std::vector<double> fxn = {2.0}, fyn = {-1.0};
    ForceField out;
    spread(mesh, fxn, fyn, kN, kLength, out);
    const Field2D once_fx = out.fx, once_fy = out.fy;
    spread(mesh, fxn, fyn, kN, kLength, out);
    for (std::size_t i = 0; i < out.fx.v.size(); ++i) {
        CHECK(out.fx.v[i] == 2.0 * once_fx.v[i]);
        CHECK(out.fy.v[i] == 2.0 * once_fy.v[i]);
    }
}

TEST_CASE("periodic wrapping treats shifted coordinates identically") {
    LagrangianMesh left, wrapped;
    left.x = {-0.25};
    left.y = {kLength + 0.4};
    left.ds = 0.1;
    wrapped.x = {kLength - 0.25};
    wrapped.y = {0.4};
    wrapped.ds = 0.1;
    const std::vector<double> fxn = {1.0}, fyn = {0.5};
    ForceField a, b;
    spread(left, fxn, fyn, kN, kLength, a);
    spread(wrapped, fxn, fyn, kN, kLength, b);
    for (std::size_t i = 0; i < a.fx.v.size(); ++i) {
        CHECK(std::abs(a.fx.v[i] - b.fx.v[i]) <= 1e-12);
        CHECK(std::abs(a.fy.v[i] - b.fy.v[i]) <= 1e-12);
    }
}

TEST_CASE("interpolating a constant field returns the constant") {
    std::mt19937 rng(99u);
    LagrangianMesh mesh = ring_mesh(7, rng);
    Field2D u(kN), v(kN);
    for (auto& val : u.v) val = 3.25;
    for (auto& val : v.v) val = -1.5;
    std::vector<double> un, vn;
    interp(u, v, kLength, mesh, un, vn);
    REQUIRE(un.size() == mesh.x.size());
    for (std::size_t s = 0; s < un.size(); ++s) {
        CHECK(un[s] == doctest::Approx(3.25).epsilon(1e-12));
        CHECK(vn[s] == doctest::Approx(-1.5).epsilon(1e-12));
    }
}

TEST_CASE("spring force pair on a 3-4-5 configuration") {
    const std::vector<double> x = {0.0, 3.0};
    const std::vector<double> y = {0.0, 4.0};
    Spring s;
    s.master = 0;
    s.slave = 1;
    s.stiffness = 10.0;
    std::vector<double> fx(2, 0.0), fy(2, 0.0);

    SUBCASE("stretched spring pulls the pair together") {
        accumulate_spring(x, y, s, 2.5, fx, fy);
        CHECK(fx[0] == 15.0);
        CHECK(fy[0] == 20.0);
        CHECK(fx[1] == -15.0);
        CHECK(fy[1] == -20.0);
    }
    SUBCASE("compressed spring pushes the pair apart") {
        accumulate_spring(x, y, s, 10.0, fx, fy);
        CHECK(fx[0] == -30.0);
        CHECK(fy[0] == -40.0);
        CHECK(fx[1] == 30.0);
        CHECK(fy[1] == 40.0);
    }
    SUBCASE("a spring at its rest length is silent") {
        accumulate_spring(x, y, s, 5.0, fx, fy);
        for (double f : {fx[0], fy[0], fx[1], fy[1]}) CHECK(f == 0.0);
    }
    SUBCASE("coincident endpoints are rejected") {
        const std::vector<double> same = {1.0, 1.0};
        CHECK_THROWS_AS(accumulate_spring(same, same, s, 1.0, fx, fy), NumericError);
    }
}

TEST_CASE("stored springs use their own rest lengths") {
    LagrangianMesh mesh;
    mesh.x = {0.0, 3.0};
    mesh.y = {0.0, 4.0};
    Spring s;
    s.master = 0;
    s.slave = 1;
    s.stiffness = 10.0;
    s.rest_length = 2.5;
    mesh.springs.push_back(s);

    std::vector<double> fx(2, 0.0), fy(2, 0.0);
    spring_force(mesh, fx, fy);
    std::vector<double> gx(2, 0.0), gy(2, 0.0);
    accumulate_spring(mesh.x, mesh.y, s, 2.5, gx, gy);
    for (int i = 0; i < 2; ++i) {
        CHECK(fx[i] == gx[i]);
        CHECK(fy[i] == gy[i]);
    }
}

TEST_CASE("bending force follows the (-1, +2, -1) energy gradient") {
    LagrangianMesh mesh;
    mesh.x = {0.0, 1.0, 2.0};
    mesh.y = {0.0, 0.3, 0.0};
    Beam b;
    b.left = 0;
    b.middle = 1;
    b.right = 2;
    b.stiffness = 7.0;
    mesh.beams.push_back(b);

    std::vector<double> fx(3, 0.0), fy(3, 0.0);
    beam_force(mesh, fx, fy);
    const double dy = (0.0 - 2.0 * 0.3 + 0.0) - 0.0;
    CHECK(fy[0] == doctest::Approx(-7.0 * dy).epsilon(1e-15));
    CHECK(fy[1] == doctest::Approx(14.0 * dy).epsilon(1e-15));
    CHECK(fy[2] == doctest::Approx(-7.0 * dy).epsilon(1e-15));
    for (int i = 0; i < 3; ++i) CHECK(fx[i] == 0.0);
    // The pattern sums to zero: bending transmits no net force.
    CHECK(std::abs(fy[0] + fy[1] + fy[2]) <= 1e-14);

    // Matching the preferred curvature silences the beam.
    mesh.beams[0].cy = -0.6;
    std::vector<double> gx(3, 0.0), gy(3, 0.0);
    beam_force(mesh, gx, gy);
    for (int i = 0; i < 3; ++i) {
        CHECK(gx[i] == 0.0);
        CHECK(gy[i] == doctest::Approx(0.0).epsilon(1e-15));
    }
}

TEST_CASE("tether force is proportional to the anchor offset") {
    LagrangianMesh mesh;
    mesh.x = {1.0};
    mesh.y = {2.0};
    Target t;
    t.node = 0;
    t.stiffness = 3.0;
    t.ax = 1.5;
    t.ay = 1.0;
    mesh.targets.push_back(t);

    std::vector<double> fx(1, 0.0), fy(1, 0.0);
    target_force(mesh, fx, fy);
    CHECK(fx[0] == 1.5);
    CHECK(fy[0] == -3.0);

    // A node sitting on its anchor feels nothing.
    mesh.x[0] = 1.5;
    mesh.y[0] = 1.0;
    std::vector<double> gx(1, 0.0), gy(1, 0.0);
    target_force(mesh, gx, gy);
    CHECK(gx[0] == 0.0);
    CHECK(gy[0] == 0.0);
}

TEST_CASE("actuated springs rescale their rest lengths by the factor") {
    LagrangianMesh mesh;
    mesh.x = {0.0, 3.0};
    mesh.y = {0.0, 4.0};
    Spring m;
    m.master = 0;
    m.slave = 1;
    m.stiffness = 10.0;
    m.rest_length = 5.0;
    mesh.muscles.push_back(m);

    // At factor 1 the muscle sits exactly at rest.
    std::vector<double> fx(2, 0.0), fy(2, 0.0);
    muscle_force(mesh, 1.0, fx, fy);
    for (double f : {fx[0], fy[0], fx[1], fy[1]}) CHECK(f == 0.0);

    // At factor 1/2 it behaves like a plain spring with half the rest length.
    std::vector<double> gx(2, 0.0), gy(2, 0.0);
    muscle_force(mesh, 0.5, gx, gy);
    std::vector<double> hx(2, 0.0), hy(2, 0.0);
    accumulate_spring(mesh.x, mesh.y, m, 2.5, hx, hy);
    for (int i = 0; i < 2; ++i) {
        CHECK(gx[i] == hx[i]);
        CHECK(gy[i] == hy[i]);
    }
}

TEST_CASE("mismatched node force arrays are rejected") {
    LagrangianMesh mesh;
    mesh.x = {1.0, 2.0};
    mesh.y = {1.0, 2.0};
    mesh.ds = 0.1;
    ForceField out;
    const std::vector<double> ok = {0.0, 0.0}, bad = {0.0};
    CHECK_THROWS_AS(spread(mesh, bad, ok, kN, kLength, out), std::invalid_argument);
    CHECK_THROWS_AS(spread(mesh, ok, bad, kN, kLength, out), std::invalid_argument);
}
