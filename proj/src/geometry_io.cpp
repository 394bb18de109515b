#include "convlab/geometry_io.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include "convlab/errors.hpp"

namespace convlab {

namespace {

std::string g17(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path, const char* who) {
    std::ofstream out(path);
    if (!out) throw IoError(std::string(who) + ": cannot open " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path, const char* who) {
    std::ifstream in(path);
    if (!in) throw IoError(std::string(who) + ": cannot open " + path.string());
    return in;
}

int to_zero_based(long long index, std::size_t node_count, const char* who,
                  const std::filesystem::path& path) {
    if (index < 1 || static_cast<std::size_t>(index) > node_count)
        throw IoError(std::string(who) + ": node index " + std::to_string(index) +
                      " out of range in " + path.string());
    return static_cast<int>(index - 1);
}

}  // namespace

void write_vertex_file(const std::filesystem::path& path, const LagrangianMesh& mesh) {
    auto out = open_out(path, "write_vertex_file");
    out << mesh.x.size() << "\n";
    for (std::size_t s = 0; s < mesh.x.size(); ++s)
        out << g17(mesh.x[s]) << " " << g17(mesh.y[s]) << "\n";
    if (!out) throw IoError("write_vertex_file: write failed for " + path.string());
}

void write_spring_file(const std::filesystem::path& path, const LagrangianMesh& mesh) {
    auto out = open_out(path, "write_spring_file");
    out << mesh.springs.size() << "\n";
    for (const Spring& s : mesh.springs)
        out << s.master + 1 << " " << s.slave + 1 << " "
            << g17(s.stiffness) << " " << g17(s.rest_length) << "\n";
    if (!out) throw IoError("write_spring_file: write failed for " + path.string());
}

void write_beam_file(const std::filesystem::path& path, const LagrangianMesh& mesh) {
    auto out = open_out(path, "write_beam_file");
    out << mesh.beams.size() << "\n";
    for (const Beam& b : mesh.beams)
        out << b.left + 1 << " " << b.middle + 1 << " " << b.right + 1 << " "
            << g17(b.stiffness) << " " << g17(b.cx) << " " << g17(b.cy) << "\n";
    if (!out) throw IoError("write_beam_file: write failed for " + path.string());
}

void write_target_file(const std::filesystem::path& path, const LagrangianMesh& mesh) {
    auto out = open_out(path, "write_target_file");
    out << mesh.targets.size() << "\n";
    for (const Target& t : mesh.targets)
        out << t.node + 1 << " " << g17(t.stiffness) << "\n";
    if (!out) throw IoError("write_target_file: write failed for " + path.string());
}

LagrangianMesh read_vertex_file(const std::filesystem::path& path) {
    auto in = open_in(path, "read_vertex_file");
    std::size_t count = 0;
    if (!(in >> count)) throw IoError("read_vertex_file: missing count in " + path.string());
    LagrangianMesh mesh;
    mesh.x.resize(count);
    mesh.y.resize(count);
    for (std::size_t s = 0; s < count; ++s)
        if (!(in >> mesh.x[s] >> mesh.y[s]))
            throw IoError("read_vertex_file: truncated data in " + path.string());
    return mesh;
}

void read_spring_file(const std::filesystem::path& path, LagrangianMesh& mesh) {
    auto in = open_in(path, "read_spring_file");
    std::size_t count = 0;
    if (!(in >> count)) throw IoError("read_spring_file: missing count in " + path.string());
    mesh.springs.clear();
    mesh.springs.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        long long master, slave;
        double k, rest;
        if (!(in >> master >> slave >> k >> rest))
            throw IoError("read_spring_file: truncated data in " + path.string());
        Spring spring;
        spring.master = to_zero_based(master, mesh.x.size(), "read_spring_file", path);
        spring.slave = to_zero_based(slave, mesh.x.size(), "read_spring_file", path);
        spring.stiffness = k;
        spring.rest_length = rest;
        mesh.springs.push_back(spring);
    }
}

void read_beam_file(const std::filesystem::path& path, LagrangianMesh& mesh) {
    auto in = open_in(path, "read_beam_file");
    std::size_t count = 0;
    if (!(in >> count)) throw IoError("read_beam_file: missing count in " + path.string());
    mesh.beams.clear();
    mesh.beams.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        long long left, middle, right;
        double k, cx, cy;
        if (!(in >> left >> middle >> right >> k >> cx >> cy))
            throw IoError("read_beam_file: truncated data in " + path.string());
        Beam beam;
        beam.left = to_zero_based(left, mesh.x.size(), "read_beam_file", path);
        beam.middle = to_zero_based(middle, mesh.x.size(), "read_beam_file", path);
        beam.right = to_zero_based(right, mesh.x.size(), "read_beam_file", path);
        beam.stiffness = k;
        beam.cx = cx;
        beam.cy = cy;
        mesh.beams.push_back(beam);
    }
}

void read_target_file(const std::filesystem::path& path, LagrangianMesh& mesh) {
    auto in = open_in(path, "read_target_file");
    std::size_t count = 0;
    if (!(in >> count)) throw IoError("read_target_file: missing count in " + path.string());
    mesh.targets.clear();
    mesh.targets.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        long long node;
        double k;
        if (!(in >> node >> k))
            throw IoError("read_target_file: truncated data in " + path.string());
        Target target;
        target.node = to_zero_based(node, mesh.x.size(), "read_target_file", path);
        target.stiffness = k;
        // Anchors start at the node's current position, the usual convention
        // for target files that carry no anchor columns.
        target.ax = mesh.x[target.node];
        target.ay = mesh.y[target.node];
        mesh.targets.push_back(target);
    }
}

}  // namespace convlab
