#pragma once
// Minimal dense row-major matrix for the m x K0 selector logits and small
// side tables. Deliberately tiny; nothing here is performance-critical.

#include <cstddef>
#include <vector>

namespace altkit {

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double* row(std::size_t r) { return data.data() + r * cols; }
    const double* row(std::size_t r) const { return data.data() + r * cols; }
    bool empty() const { return data.empty(); }
};

}  // namespace altkit
