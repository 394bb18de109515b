#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "convlab/field.hpp"

namespace convlab {

// Legacy ASCII structured-points file with one scalar field named like the
// usual immersed-boundary outputs (uVel, vVel, P, Omega).
void write_scalar_vtk(const std::filesystem::path& path, const std::string& field_name,
                      const Field2D& field, double spacing);

// Lagrangian node positions as legacy ASCII polydata vertices.
void write_points_vtk(const std::filesystem::path& path,
                      const std::vector<double>& x, const std::vector<double>& y);

// Reader for the structured-points files written above.
Field2D read_scalar_vtk(const std::filesystem::path& path,
                        std::string* field_name = nullptr, double* spacing = nullptr);

}  // namespace convlab
