#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace csirad {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Rows are frames (slow time), columns are
/// subcarriers (fast time) unless a type documents otherwise.
class ComplexGrid {
public:
    ComplexGrid() = default;
    ComplexGrid(std::size_t rows, std::size_t cols, cplx fill = {})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<cplx> values() noexcept { return data_; }
    std::span<const cplx> values() const noexcept { return data_; }

    /// Copy of rows [first, first + count).
    ComplexGrid slice_rows(std::size_t first, std::size_t count) const;

    /// Appends one row; the first append on an empty grid fixes the column count.
    void append_row(std::span<const cplx> row);

    double energy() const noexcept;

    bool operator==(const ComplexGrid&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Received symbols, CSI estimates and DC-removed CSI all share this layout.
using CsiGrid = ComplexGrid;

inline void require_same_shape(const ComplexGrid& a, const ComplexGrid& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

double max_abs_diff(const ComplexGrid& a, const ComplexGrid& b);

}  // namespace csirad
