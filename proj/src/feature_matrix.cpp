#include "gssl/feature_matrix.hpp"

#include "gssl/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gssl {

std::vector<double> FeatureMatrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

void FeatureMatrix::erase_row(std::size_t r) {
    if (r >= rows_) {
        throw DimensionError("erase_row: row out of range");
    }
    const auto first = data_.begin() + static_cast<std::ptrdiff_t>(r * cols_);
    data_.erase(first, first + static_cast<std::ptrdiff_t>(cols_));
    --rows_;
}

bool FeatureMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double max_abs_difference(const FeatureMatrix& a, const FeatureMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_difference: shape mismatch");
    }
    double worst = 0.0;
    const auto x = a.data();
    const auto y = b.data();
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::abs(x[i] - y[i]));
    }
    return worst;
}

}  // namespace gssl
