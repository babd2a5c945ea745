#include "csirad/grid.hpp"

#include <algorithm>

namespace csirad {

ComplexGrid ComplexGrid::slice_rows(std::size_t first, std::size_t count) const {
    if (first + count > rows_)
        throw std::out_of_range("slice_rows: range exceeds grid");
    ComplexGrid out(count, cols_);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_), count * cols_, out.data_.begin());
    return out;
}

void ComplexGrid::append_row(std::span<const cplx> row) {
    if (rows_ == 0 && cols_ == 0)
        cols_ = row.size();
    if (row.size() != cols_)
        throw std::invalid_argument("append_row: column count mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

double ComplexGrid::energy() const noexcept {
    double e = 0.0;
    for (const auto& v : data_)
        e += std::norm(v);
    return e;
}

double max_abs_diff(const ComplexGrid& a, const ComplexGrid& b) {
    require_same_shape(a, b, "max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
    return worst;
}

}  // namespace csirad
