#pragma once

#include <cstddef>
#include <vector>

namespace convlab {

// Square scalar field, row major with x fastest: v[j*n + i] is node (i, j).
struct Field2D {
    int n = 0;
    std::vector<double> v;

    Field2D() = default;
    explicit Field2D(int n_) : n(n_), v(static_cast<std::size_t>(n_) * n_, 0.0) {}

    double& at(int i, int j) { return v[static_cast<std::size_t>(j) * n + i]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(j) * n + i]; }
    std::size_t size() const { return v.size(); }
};

}  // namespace convlab
