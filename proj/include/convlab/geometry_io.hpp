#pragma once

#include <filesystem>

#include "convlab/ib.hpp"

namespace convlab {

// Plain-text geometry files: a count line, then whitespace-delimited records.
// Node indices are 1-based on disk (the established immersed-boundary file
// convention) and 0-based in memory.
void write_vertex_file(const std::filesystem::path& path, const LagrangianMesh& mesh);
void write_spring_file(const std::filesystem::path& path, const LagrangianMesh& mesh);
void write_beam_file(const std::filesystem::path& path, const LagrangianMesh& mesh);
void write_target_file(const std::filesystem::path& path, const LagrangianMesh& mesh);

// Reads positions into a fresh mesh (ds is left for the caller).
LagrangianMesh read_vertex_file(const std::filesystem::path& path);
// Each reader fills its section of an existing mesh and validates indices.
void read_spring_file(const std::filesystem::path& path, LagrangianMesh& mesh);
void read_beam_file(const std::filesystem::path& path, LagrangianMesh& mesh);
void read_target_file(const std::filesystem::path& path, LagrangianMesh& mesh);

}  // namespace convlab
