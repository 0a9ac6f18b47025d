#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gssl {

/// Dense row-major N x K matrix: one row per node (graph row order), one
/// column per class. Used for the classification function F and for the
/// label indicator Y.
class FeatureMatrix {
public:
    FeatureMatrix() = default;
    FeatureMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<double> column(std::size_t c) const;

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    void append_zero_row() {
        data_.resize(data_.size() + cols_, 0.0);
        ++rows_;
    }

    void erase_row(std::size_t r);

    bool all_finite() const;

    friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// max |a - b| over all entries; dimensions must agree.
double max_abs_difference(const FeatureMatrix& a, const FeatureMatrix& b);

}  // namespace gssl
