#pragma once

// Output plumbing shared by the CLI studies: CSV writing with stable
// formatting, a manifest of produced files, key=value config parsing,
// and the "start:step:stop" / comma-list range syntax.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace convlab {

// Shortest round-trip decimal representation used in every CSV cell
// (printf %.17g), so identical doubles always print identically.
std::string format_g17(double value);

// Line-oriented CSV writer.  The header row is written on construction;
// each row must carry exactly as many cells as the header.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    void close();
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::size_t columns_;
    std::ofstream out_;
};

// Collects every file a study produces and writes "manifest.txt" in the
// output root: one "<relative-path> <bytes>" line per file, sorted by path.
class Manifest {
public:
    explicit Manifest(std::filesystem::path root);
    void record(const std::filesystem::path& file);
    // Writes manifest.txt (itself excluded) and returns its path.
    std::filesystem::path write() const;
    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
    std::vector<std::filesystem::path> files_;
};

// Reads a file of "key = value" lines ('#' starts a comment, blank lines
// ignored) into a map.  Throws IoError when the file cannot be read and
// std::invalid_argument on a malformed line.
std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& path);

// Parses a resolution/step list: either a comma list ("10,20,40") or an
// inclusive range "start:step:stop".  Values must be positive and finite;
// throws std::invalid_argument otherwise.
std::vector<double> parse_range_list(const std::string& text);

// Output root for study artifacts: $CONVLAB_OUT when set, else "./out".
std::filesystem::path default_out_root();

}  // namespace convlab
