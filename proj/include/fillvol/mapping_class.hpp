#ifndef FILLVOL_MAPPING_CLASS_HPP
#define FILLVOL_MAPPING_CLASS_HPP

#include <array>
#include <vector>

#include "fillvol/affine.hpp"
#include "fillvol/mat2.hpp"

namespace fillvol {

struct MappingClass2T {
    enum class Type { Elliptic, Parabolic, Anosov };
    Mat2 matrix;
    Type type;
    unsigned order = 0;  // elliptic only: 1, 2, 3, 4 or 6
    Int trace;           // for anosov, lambda = (t + sqrt(t^2-4))/2
};

MappingClass2T classify(const Mat2& a);

// Conjugated factorization into the shears R = [[1,1],[0,1]], L = [[1,0],[1,1]]:
// conjugator^{-1} * A * conjugator = (-1)^{negated} * product(word).
// Words are positive and cyclically reduced; defined for |tr A| >= 2.
struct RlWord {
    Mat2 conjugator = Mat2::identity();
    std::vector<std::pair<char, unsigned long>> word;  // ('R'|'L', exponent)
    bool negated = false;

    std::size_t length() const {
        std::size_t n = 0;
        for (const auto& [l, e] : word) n += e;
        return n;
    }
    Mat2 product() const;
    std::string str() const;  // exponent form R^a L^b ...
};

RlWord rl_word(const Mat2& a);

// Factorization of an arbitrary SL2(Z) matrix into R/L letters with signed
// exponents (Euclidean reduction); the product is verified exactly.
std::vector<std::pair<char, long long>> general_word(const Mat2& a);

// One-vertex torus triangulation with ordered edge vectors (e1, e2, e1+e2),
// det[e1|e2] = 1. cycle() is its 2-triangle affine fundamental cycle.
struct FlipState {
    std::array<Int, 2> e1{1, 0}, e2{0, 1};

    std::array<Int, 2> e3() const { return {e1[0] + e2[0], e1[1] + e2[1]}; }
    AffineChain cycle() const;
    bool operator==(const FlipState& o) const = default;
};

// Replaces edge `which` (0 -> e1, 1 -> e2, 2 -> the diagonal e1+e2) by the
// other diagonal of its quadrilateral. The returned degree-3 chain t is a
// single signed affine tetrahedron with boundary(t) = cycle(next) - cycle(s).
struct FlipResult {
    FlipState next;
    AffineChain tetra;
};
FlipResult flip_tetrahedron(const FlipState& s, int which);

// Fundamental cycle z(F) of the frame F (columns as edge vectors).
AffineChain frame_cycle(const Mat2& f);

// Explicit filling of A^m_# z - z by flip tetrahedra along the word path:
// boundary(chain) = apply_linear(A^m, base_cycle) - base_cycle, exactly.
// For tr A > 2 the path repeats the RL word of A m times and
// ||chain|| = m * |word|; otherwise a general factorization of A^m is used.
struct WordFilling {
    AffineChain chain;       // c_m
    AffineChain base_cycle;  // z(conjugator frame)
    AffineChain target;      // A^m_# base - base
    Int bound;               // letter count of the path (>= ||chain||)
};
WordFilling word_filling(const Mat2& a, unsigned m);

// tr(A^m) via the trace recursion t_{j+1} = tr(A) t_j - t_{j-1}.
Int trace_power(const Mat2& a, unsigned m);

// |tors H_1| of the torus bundle with monodromy A^m: tr(A^m) - 2, cross-checked
// against |det(A^m - I)|. Requires tr(A^m) > 2.
Int tors_order(const Mat2& a, unsigned m);

// Certifies FV_Z >= q = u/v through the torsion growth route; the test is the
// pure big-integer comparison (tr(A^m) - 2)^v >= 2^(12 m u). `false` means the
// test failed, not that the bound is wrong.
bool fv_lower_certificate(const Mat2& a, unsigned m, const Rat& q);

} // namespace fillvol

#endif
