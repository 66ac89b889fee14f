#include "ldpcgm/gf2.hpp"

#include <algorithm>

namespace ldpcgm::gf2 {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

void DenseMatrix::set(std::size_t r, std::size_t c, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    if (v) row(r)[c >> 6] |= bit;
    else row(r)[c >> 6] &= ~bit;
}

void DenseMatrix::xor_row(std::size_t dst, std::size_t src) {
    std::uint64_t* d = row(dst);
    const std::uint64_t* s = row(src);
    for (std::size_t w = 0; w < words_; ++w) d[w] ^= s[w];
}

void DenseMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a), row(a) + words_, row(b));
}

std::vector<std::size_t> reduce(DenseMatrix& m, std::size_t pivot_cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && !m.get(p, c)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        const std::size_t w = c >> 6;
        const std::uint64_t bit = std::uint64_t{1} << (c & 63);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && (m.row(i)[w] & bit)) m.xor_row(i, r);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace ldpcgm::gf2
