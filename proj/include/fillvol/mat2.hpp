#ifndef FILLVOL_MAT2_HPP
#define FILLVOL_MAT2_HPP

#include <array>

#include "fillvol/errors.hpp"
#include "fillvol/numeric.hpp"

namespace fillvol {

// Exact 2x2 integer matrix [[a,b],[c,d]].
struct Mat2 {
    Int a{0}, b{0}, c{0}, d{0};

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 from_row_major(const std::array<long long, 4>& v) {
        return {v[0], v[1], v[2], v[3]};
    }

    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    bool operator==(const Mat2& o) const = default;

    Mat2 pow(unsigned long m) const {
        Mat2 r = identity(), base = *this;
        while (m) {
            if (m & 1) r = r * base;
            base = base * base;
            m >>= 1;
        }
        return r;
    }
    // inverse of a matrix with det = +-1
    Mat2 unimodular_inverse() const {
        Int dt = det();
        if (dt == 1) return {d, -b, -c, a};
        if (dt == -1) return {-d, b, c, -a};
        fail(errc::NotUnimodular, "matrix is not unimodular");
    }
};

inline const Mat2 kShearR{1, 1, 0, 1};  // R = [[1,1],[0,1]]
inline const Mat2 kShearL{1, 0, 1, 1};  // L = [[1,0],[1,1]]

} // namespace fillvol

#endif
