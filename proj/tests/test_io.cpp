#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "convlab/cli.hpp"
#include "convlab/errors.hpp"
#include "convlab/geometry_io.hpp"
#include "convlab/study_io.hpp"
#include "convlab/vtk.hpp"

using namespace convlab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* leaf) {
    const fs::path dir = fs::temp_directory_path() / "convlab-io-tests" / leaf;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void put_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double parse_reported_slope(const fs::path& fit_file) {
    const std::string text = slurp(fit_file);
    const auto pos = text.find("slope=");
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + 6));
}

LagrangianMesh sample_mesh() {
    LagrangianMesh mesh;
    mesh.x = {4.5, 1.25, 2.0};
    mesh.y = {3.35, 0.5, 7.5};
    mesh.ds = 0.4;
    Spring s;
    s.master = 0;
    s.slave = 1;
    s.stiffness = 10.0;
    s.rest_length = 1.0 / 3.0;
    mesh.springs.push_back(s);
    Beam b;
    b.left = 0;
    b.middle = 1;
    b.right = 2;
    b.stiffness = 3.5;
    b.cx = 0.1;
    b.cy = -0.2;
    mesh.beams.push_back(b);
    Target t;
    t.node = 2;
    t.stiffness = 1e5;
    t.ax = 42.0;  // stale anchor; loading must rebind to the node position
    t.ay = 43.0;
    mesh.targets.push_back(t);
    return mesh;
}

}  // namespace

TEST_CASE("doubles round-trip through their printed form") {
    const std::vector<double> values = {0.0,
                                        1.0,
                                        -1.0,
                                        std::numbers::pi,
                                        0.1,
                                        1.0 / 3.0,
                                        0.455122322888408,
                                        6.283185e-4,
                                        1e-300,
                                        -7.540113804746346e18};
    for (double v : values) {
        const std::string text = format_g17(v);
        CHECK(std::stod(text) == v);
    }
    CHECK(format_g17(1.0) == "1");
}

TEST_CASE("CSV writer enforces the header width") {
    const fs::path dir = fresh_dir("csv");
    const fs::path file = dir / "table.csv";
    {
        CsvWriter csv(file, {"alpha", "beta", "gamma"});
        csv.row({"1", "2", "3"});
        csv.row({format_g17(0.5), "x", "y"});
        CHECK_THROWS_AS(csv.row({"only", "two"}), std::invalid_argument);
        csv.close();
    }
    CHECK(slurp(file) == "alpha,beta,gamma\n1,2,3\n0.5,x,y\n");
}

TEST_CASE("manifest lists produced files sorted with their sizes") {
    const fs::path dir = fresh_dir("manifest");
    fs::create_directories(dir / "sub");
    put_text(dir / "sub" / "b.txt", "hello");
    put_text(dir / "a.txt", "abc");
    Manifest manifest(dir);
    manifest.record(dir / "sub" / "b.txt");
    manifest.record(dir / "a.txt");
    const fs::path written = manifest.write();
    CHECK(written == dir / "manifest.txt");
    CHECK(slurp(written) == "a.txt 3\nsub/b.txt 5\n");
}

TEST_CASE("key=value files tolerate comments and reject malformed lines") {
    const fs::path dir = fresh_dir("kv");
    const fs::path good = dir / "good.txt";
    put_text(good,
             "# leading comment\n"
             "\n"
             "alpha = 1.5\n"
             "label = two words\n"
             "  beta=7  \n");
    const auto map = read_key_value_file(good);
    CHECK(map.size() == 3);
    CHECK(map.at("alpha") == "1.5");
    CHECK(map.at("label") == "two words");
    CHECK(map.at("beta") == "7");

    const fs::path bad = dir / "bad.txt";
    put_text(bad, "alpha = 1\njust words\n");
    CHECK_THROWS_AS((void)read_key_value_file(bad), std::invalid_argument);
    CHECK_THROWS_AS((void)read_key_value_file(dir / "absent.txt"), IoError);
}

TEST_CASE("range lists accept comma and start:step:stop forms") {
    CHECK(parse_range_list("10,20,40") == std::vector<double>{10.0, 20.0, 40.0});
    CHECK(parse_range_list("1:1:5") == std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0});
    const auto half = parse_range_list("2:0.5:4");
    REQUIRE(half.size() == 5);
    CHECK(half.front() == 2.0);
    CHECK(half.back() == 4.0);  // overshoot from accumulation clamps to stop
    CHECK(parse_range_list("7") == std::vector<double>{7.0});

    for (const char* bad : {"1,2,", "1:2", "1:1:2:3", "5:1:2", "1:0:5", "0,1", "-3",
                            "5:1:hello", "", ","}) {
        CAPTURE(bad);
        CHECK_THROWS_AS((void)parse_range_list(bad), std::invalid_argument);
    }
}

TEST_CASE("geometry files round-trip every section exactly") {
    const fs::path dir = fresh_dir("geometry");
    const LagrangianMesh mesh = sample_mesh();
    write_vertex_file(dir / "m.vertex", mesh);
    write_spring_file(dir / "m.spring", mesh);
    write_beam_file(dir / "m.beam", mesh);
    write_target_file(dir / "m.target", mesh);

    LagrangianMesh loaded = read_vertex_file(dir / "m.vertex");
    REQUIRE(loaded.x.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(loaded.x[i] == mesh.x[i]);
        CHECK(loaded.y[i] == mesh.y[i]);
    }

    read_spring_file(dir / "m.spring", loaded);
    REQUIRE(loaded.springs.size() == 1);
    CHECK(loaded.springs[0].master == 0);
    CHECK(loaded.springs[0].slave == 1);
    CHECK(loaded.springs[0].stiffness == 10.0);
    CHECK(loaded.springs[0].rest_length == 1.0 / 3.0);

    read_beam_file(dir / "m.beam", loaded);
    REQUIRE(loaded.beams.size() == 1);
    CHECK(loaded.beams[0].left == 0);
    CHECK(loaded.beams[0].middle == 1);
    CHECK(loaded.beams[0].right == 2);
    CHECK(loaded.beams[0].stiffness == 3.5);
    CHECK(loaded.beams[0].cx == 0.1);
    CHECK(loaded.beams[0].cy == -0.2);

    read_target_file(dir / "m.target", loaded);
    REQUIRE(loaded.targets.size() == 1);
    CHECK(loaded.targets[0].node == 2);
    CHECK(loaded.targets[0].stiffness == 1e5);
    // Anchors bind to the node position at load time, not to stale values.
    CHECK(loaded.targets[0].ax == loaded.x[2]);
    CHECK(loaded.targets[0].ay == loaded.y[2]);
}

TEST_CASE("geometry readers validate one-based indices") {
    const fs::path dir = fresh_dir("geometry-bad");
    const LagrangianMesh mesh = sample_mesh();
    write_vertex_file(dir / "m.vertex", mesh);
    LagrangianMesh loaded = read_vertex_file(dir / "m.vertex");

    put_text(dir / "bad.spring", "1\n0 2 10 0.4\n");  // node 0 under 1-based naming
    CHECK_THROWS_AS(read_spring_file(dir / "bad.spring", loaded), IoError);
    put_text(dir / "big.spring", "1\n1 4 10 0.4\n");  // node 4 of 3
    CHECK_THROWS_AS(read_spring_file(dir / "big.spring", loaded), IoError);
    CHECK_THROWS_AS((void)read_vertex_file(dir / "absent.vertex"), IoError);
}

TEST_CASE("scalar snapshots round-trip values, name, and spacing") {
    const fs::path dir = fresh_dir("vtk");
    Field2D f(4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) f.at(i, j) = i + 10.0 * j + 0.125;
    write_scalar_vtk(dir / "u.vtk", "uVel", f, 0.25);

    std::string name;
    double spacing = 0.0;
    const Field2D g = read_scalar_vtk(dir / "u.vtk", &name, &spacing);
    CHECK(name == "uVel");
    CHECK(spacing == 0.25);
    REQUIRE(g.n == 4);
    for (std::size_t i = 0; i < g.v.size(); ++i) CHECK(g.v[i] == f.v[i]);

    write_points_vtk(dir / "nodes.vtk", {1.0, 2.0}, {0.5, 0.25});
    CHECK(fs::exists(dir / "nodes.vtk"));
    CHECK(fs::file_size(dir / "nodes.vtk") > 0);
}

TEST_CASE("command driver maps outcomes to exit codes") {
    SUBCASE("success and help") {
        const fs::path dir = fresh_dir("cli-ok");
        CHECK(run_cli({"golden", "--n-max", "12", "--out", (dir / "g").string()}) == 0);
        CHECK(fs::exists(dir / "g" / "golden.csv"));
        CHECK(fs::exists(dir / "g" / "manifest.txt"));
        CHECK(run_cli({"--help"}) == 0);
    }
    SUBCASE("usage errors") {
        CHECK(run_cli({}) == 1);
        CHECK(run_cli({"golden", "--bogus-flag"}) == 1);
        CHECK(run_cli({"trapezoid", "--example", "nonsense"}) == 1);
    }
    SUBCASE("numeric failure") {
        const fs::path dir = fresh_dir("cli-numeric");
        put_text(dir / "short.csv", "n,abs_error\n10,1\n20,0.5\n");
        CHECK(run_cli({"report", "--csv", (dir / "short.csv").string(),
                       "--out", (dir / "r").string()}) == 2);
    }
    SUBCASE("filesystem failure") {
        const fs::path dir = fresh_dir("cli-io");
        put_text(dir / "blocker", "x");
        CHECK(run_cli({"golden", "--out", (dir / "blocker" / "sub").string()}) == 3);
    }
}

TEST_CASE("stored study tables feed the rate report") {
    const fs::path dir = fresh_dir("cli-report");
    put_text(dir / "steps.csv",
             "dt,abs_error\n"
             "0.1,0.01\n"
             "0.05,0.0025\n"
             "0.025,0.000625\n"
             "0.0125,0.00015625\n");
    CHECK(run_cli({"report", "--csv", (dir / "steps.csv").string(),
                   "--out", (dir / "r").string()}) == 0);
    const double slope = parse_reported_slope(dir / "r" / "fit.txt");
    CHECK(slope == doctest::Approx(2.0).epsilon(1e-12));
}
