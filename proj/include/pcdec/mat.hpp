#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pcdec {

/// Dense row-major matrix, just enough for n x n soft values and bits.
template <typename T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, T fill = T{}) : rows_(rows), cols_(cols), v_(static_cast<size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& at(int i, int j) { return v_[static_cast<size_t>(i) * cols_ + j]; }
    const T& at(int i, int j) const { return v_[static_cast<size_t>(i) * cols_ + j]; }

    std::span<T> row(int i) { return {v_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)}; }
    std::span<const T> row(int i) const {
        return {v_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)};
    }

    std::span<T> data() { return v_; }
    std::span<const T> data() const { return v_; }

    void transpose_inplace() {
        if (rows_ == cols_) {
            for (int i = 0; i < rows_; ++i)
                for (int j = i + 1; j < cols_; ++j) std::swap(at(i, j), at(j, i));
        } else {
            Mat t(cols_, rows_);
            for (int i = 0; i < rows_; ++i)
                for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
            *this = std::move(t);
        }
    }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && v_ == o.v_; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> v_;
};

using SoftMatrix = Mat<double>;
using BitMatrix = Mat<uint8_t>;

}  // namespace pcdec
