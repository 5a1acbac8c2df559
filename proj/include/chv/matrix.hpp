#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace chv {

/// Dense exact matrix over QQ with row echelon reduction (partial pivoting
/// by first nonzero entry; no scaling concerns in exact arithmetic).
class QMatrix {
public:
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpq_class& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const mpq_class& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    /// In-place reduction to row echelon form; returns the pivot columns in
    /// strictly increasing order.
    std::vector<std::size_t> row_echelon()
    {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && at(p, c) == 0) ++p;
            if (p == rows_) continue;
            if (p != r)
                for (std::size_t k = c; k < cols_; ++k) std::swap(at(p, k), at(r, k));
            for (std::size_t i = r + 1; i < rows_; ++i) {
                if (at(i, c) == 0) continue;
                mpq_class factor = at(i, c) / at(r, c);
                at(i, c) = 0;
                for (std::size_t k = c + 1; k < cols_; ++k) at(i, k) -= factor * at(r, k);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const
    {
        QMatrix copy = *this;
        return copy.row_echelon().size();
    }

private:
    std::size_t rows_, cols_;
    std::vector<mpq_class> a_;
};

} // namespace chv
