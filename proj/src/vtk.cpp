#include "convlab/vtk.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "convlab/errors.hpp"

namespace convlab {

namespace {

std::string g17(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

}  // namespace

void write_scalar_vtk(const std::filesystem::path& path, const std::string& field_name,
                      const Field2D& field, double spacing) {
    std::ofstream out(path);
    if (!out) throw IoError("write_scalar_vtk: cannot open " + path.string());
    const int n = field.n;
    out << "# vtk DataFile Version 2.0\n"
        << field_name << "\n"
        << "ASCII\n"
        << "DATASET STRUCTURED_POINTS\n"
        << "DIMENSIONS " << n << " " << n << " 1\n"
        << "ORIGIN 0 0 0\n"
        << "SPACING " << g17(spacing) << " " << g17(spacing) << " 1\n"
        << "POINT_DATA " << static_cast<long long>(n) * n << "\n"
        << "SCALARS " << field_name << " double\n"
        << "LOOKUP_TABLE default\n";
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            out << g17(field.at(i, j));
            out << (i + 1 == n ? '\n' : ' ');
        }
    }
    if (!out) throw IoError("write_scalar_vtk: write failed for " + path.string());
}

void write_points_vtk(const std::filesystem::path& path,
                      const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("write_points_vtk: coordinate lengths differ");
    std::ofstream out(path);
    if (!out) throw IoError("write_points_vtk: cannot open " + path.string());
    const std::size_t n = x.size();
    out << "# vtk DataFile Version 2.0\n"
        << "lagrangian points\n"
        << "ASCII\n"
        << "DATASET POLYDATA\n"
        << "POINTS " << n << " double\n";
    for (std::size_t s = 0; s < n; ++s)
        out << g17(x[s]) << " " << g17(y[s]) << " 0\n";
    out << "VERTICES " << n << " " << 2 * n << "\n";
    for (std::size_t s = 0; s < n; ++s) out << "1 " << s << "\n";
    if (!out) throw IoError("write_points_vtk: write failed for " + path.string());
}

Field2D read_scalar_vtk(const std::filesystem::path& path,
                        std::string* field_name, double* spacing) {
    std::ifstream in(path);
    if (!in) throw IoError("read_scalar_vtk: cannot open " + path.string());
    std::string line;
    int nx = -1, ny = -1;
    double sp = 0.0;
    std::string name;
    long long count = -1;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string key;
        row >> key;
        if (key == "DIMENSIONS") {
            int nz;
            if (!(row >> nx >> ny >> nz) || nz != 1 || nx != ny)
                throw IoError("read_scalar_vtk: unsupported dimensions in " + path.string());
        } else if (key == "SPACING") {
            double sy, sz;
            row >> sp >> sy >> sz;
        } else if (key == "POINT_DATA") {
            row >> count;
        } else if (key == "SCALARS") {
            row >> name;
        } else if (key == "LOOKUP_TABLE") {
            break;
        }
    }
    if (nx < 1 || count != static_cast<long long>(nx) * ny)
        throw IoError("read_scalar_vtk: malformed header in " + path.string());
    Field2D field(nx);
    for (std::size_t k = 0; k < field.v.size(); ++k)
        if (!(in >> field.v[k]))
            throw IoError("read_scalar_vtk: truncated data in " + path.string());
    if (field_name) *field_name = name;
    if (spacing) *spacing = sp;
    return field;
}

}  // namespace convlab
