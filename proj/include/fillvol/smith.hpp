#ifndef FILLVOL_SMITH_HPP
#define FILLVOL_SMITH_HPP

#include <optional>
#include <vector>

#include "fillvol/errors.hpp"
#include "fillvol/matrix.hpp"

namespace fillvol {

// U * M * V = D with U, V unimodular, D diagonal with d1 | d2 | ... >= 0.
struct SmithDecomposition {
    IntMat U, V;
    std::vector<Int> diag;  // min(rows, cols) entries, trailing zeros allowed

    std::size_t rank() const {
        std::size_t r = 0;
        while (r < diag.size() && diag[r] != 0) ++r;
        return r;
    }
    std::vector<Int> invariant_factors() const {  // entries > 1
        std::vector<Int> t;
        for (const Int& d : diag)
            if (d > 1) t.push_back(d);
        return t;
    }
};

SmithDecomposition snf(const IntMat& m);

// Exact check U*M*V = D, |det U| = |det V| = 1, divisibility chain.
bool verify_snf(const IntMat& m, const SmithDecomposition& s);

struct HomologyGroup {
    int degree = 0;
    std::size_t betti = 0;
    std::vector<Int> torsion;  // invariant factors > 1, divisibility chain

    bool operator==(const HomologyGroup& o) const {
        return degree == o.degree && betti == o.betti && torsion == o.torsion;
    }
    std::string str() const;
};

// Homology in degree k of a chain complex given by boundary maps
// d_k: C_k -> C_{k-1} and d_{k+1}: C_{k+1} -> C_k (dense integer matrices,
// rows = target cells, cols = source cells).
HomologyGroup homology_from_boundaries(int degree, std::size_t dim_k, const IntMat& d_k,
                                       const IntMat& d_k1);

// First homology Z + coker(A^m - I) of the torus bundle with monodromy A.
HomologyGroup torus_bundle_h1(const IntMat& a, unsigned m);

// Integer solutions of m*x = b: a particular solution and a lattice basis for
// the homogeneous solutions. nullopt if no integer solution exists.
struct IntegerSolution {
    std::vector<Int> particular;
    std::vector<std::vector<Int>> kernel_basis;
};
std::optional<IntegerSolution> solve_integer(const IntMat& m, const std::vector<Int>& b);

} // namespace fillvol

#endif
