#include "convlab/study_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "convlab/errors.hpp"

namespace convlab {

std::string format_g17(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
    if (header.empty()) throw std::invalid_argument("CsvWriter: empty header");
    out_.open(path);
    if (!out_) throw IoError("CsvWriter: cannot open " + path.string());
    for (std::size_t c = 0; c < header.size(); ++c)
        out_ << (c ? "," : "") << header[c];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw std::invalid_argument("CsvWriter: row width " + std::to_string(cells.size()) +
                                    " != header width " + std::to_string(columns_));
    for (std::size_t c = 0; c < cells.size(); ++c)
        out_ << (c ? "," : "") << cells[c];
    out_ << "\n";
    if (!out_) throw IoError("CsvWriter: write failed for " + path_.string());
}

void CsvWriter::close() {
    if (out_.is_open()) {
        out_.close();
        if (out_.fail()) throw IoError("CsvWriter: close failed for " + path_.string());
    }
}

Manifest::Manifest(std::filesystem::path root) : root_(std::move(root)) {}

void Manifest::record(const std::filesystem::path& file) {
    files_.push_back(file);
}

std::filesystem::path Manifest::write() const {
    std::vector<std::pair<std::string, std::uintmax_t>> rows;
    rows.reserve(files_.size());
    for (const auto& file : files_) {
        std::error_code ec;
        auto rel = std::filesystem::relative(file, root_, ec);
        std::string name = (ec || rel.empty()) ? file.generic_string() : rel.generic_string();
        auto size = std::filesystem::file_size(file, ec);
        if (ec) throw IoError("Manifest: cannot stat " + file.string());
        rows.emplace_back(std::move(name), size);
    }
    std::sort(rows.begin(), rows.end());
    auto path = root_ / "manifest.txt";
    std::ofstream out(path);
    if (!out) throw IoError("Manifest: cannot open " + path.string());
    for (const auto& [name, size] : rows) out << name << " " << size << "\n";
    out.close();
    if (out.fail()) throw IoError("Manifest: write failed for " + path.string());
    return path;
}

std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_key_value_file: cannot open " + path.string());
    std::map<std::string, std::string> result;
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("read_key_value_file: line " + std::to_string(lineno) +
                                        " of " + path.string() + " has no '='");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("read_key_value_file: line " + std::to_string(lineno) +
                                        " of " + path.string() + " has an empty key");
        result[key] = value;
    }
    return result;
}

namespace {

double parse_positive(const std::string& token, const std::string& context) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_range_list: bad number '" + token + "' in " + context);
    }
    if (used != token.size())
        throw std::invalid_argument("parse_range_list: trailing characters in '" + token + "'");
    if (!std::isfinite(value) || value <= 0.0)
        throw std::invalid_argument("parse_range_list: value '" + token + "' must be positive");
    return value;
}

}  // namespace

std::vector<double> parse_range_list(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_range_list: empty specification");
    std::vector<std::string> parts;
    {
        std::string token;
        std::istringstream stream(text);
        char sep = text.find(':') != std::string::npos ? ':' : ',';
        while (std::getline(stream, token, sep)) parts.push_back(token);
        if (!text.empty() && text.back() == sep)
            throw std::invalid_argument("parse_range_list: trailing separator in '" + text + "'");
        if (sep == ':' && parts.size() != 3)
            throw std::invalid_argument("parse_range_list: range form needs start:step:stop");
    }
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        double start = parse_positive(parts[0], text);
        double step = parse_positive(parts[1], text);
        double stop = parse_positive(parts[2], text);
        if (stop < start)
            throw std::invalid_argument("parse_range_list: stop precedes start in '" + text + "'");
        // Half-step slack so "1:1:5" lands on 5 despite rounding.
        for (double v = start; v <= stop + 0.5 * step; v += step) values.push_back(v);
        if (!values.empty() && values.back() > stop) values.back() = stop;
    } else {
        for (const auto& part : parts) values.push_back(parse_positive(part, text));
    }
    if (values.empty()) throw std::invalid_argument("parse_range_list: no values in '" + text + "'");
    return values;
}

std::filesystem::path default_out_root() {
    if (const char* env = std::getenv("CONVLAB_OUT"); env && *env) return env;
    return "out";
}

}  // namespace convlab
