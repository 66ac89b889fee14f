#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ldpcgm::gf2 {

/// Dense GF(2) matrix, rows packed into 64-bit words.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words() const { return words_; }

    bool get(std::size_t r, std::size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1U; }
    void set(std::size_t r, std::size_t c, bool v);
    void flip(std::size_t r, std::size_t c) { row(r)[c >> 6] ^= std::uint64_t{1} << (c & 63); }

    std::uint64_t* row(std::size_t r) { return data_.data() + r * words_; }
    const std::uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }
    void xor_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

private:
    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> data_;
};

/// In-place reduced row echelon form over the first `pivot_cols` columns.
/// Returns the pivot column of each leading row (size = rank); rows past the rank are zero
/// on those columns.
std::vector<std::size_t> reduce(DenseMatrix& m, std::size_t pivot_cols);

}  // namespace ldpcgm::gf2
