#ifndef FILLVOL_MATRIX_HPP
#define FILLVOL_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "fillvol/numeric.hpp"

namespace fillvol {

// Dense arbitrary-precision integer matrix, row major.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static IntMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    IntMat transposed() const;
    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void scale_row(std::size_t i, const Int& s);
    void scale_col(std::size_t j, const Int& s);
    // row[i] += s * row[k], col[j] += s * col[k]
    void add_row(std::size_t i, std::size_t k, const Int& s);
    void add_col(std::size_t j, std::size_t k, const Int& s);

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

IntMat mat_mul(const IntMat& a, const IntMat& b);
IntMat mat_sub(const IntMat& a, const IntMat& b);
std::vector<Int> mat_apply(const IntMat& a, const std::vector<Int>& x);

// Exact determinant by Bareiss fraction-free elimination.
Int det(const IntMat& m);

// Rank over Q by exact Gaussian elimination.
std::size_t rational_rank(const IntMat& m);

// Solves m*x = b over Q; nullopt when b is outside the column span.
std::optional<std::vector<Rat>> solve_rational(const IntMat& m, const std::vector<Int>& b);

} // namespace fillvol

#endif
