#ifndef FILLVOL_AFFINE_HPP
#define FILLVOL_AFFINE_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "fillvol/delta.hpp"  // CoeffMode
#include "fillvol/mat2.hpp"
#include "fillvol/matrix.hpp"

namespace fillvol {

struct Vec2Q {
    Rat x{0}, y{0};
    Vec2Q operator+(const Vec2Q& o) const { return {x + o.x, y + o.y}; }
    Vec2Q operator-(const Vec2Q& o) const { return {x - o.x, y - o.y}; }
    bool operator==(const Vec2Q& o) const { return x == o.x && y == o.y; }
    bool operator<(const Vec2Q& o) const { return x != o.x ? x < o.x : y < o.y; }
};

// Translation-normalized affine singular simplex on R^2/Z^2: vertices are
// base, base+disp[0], ..., base+disp[k-1], with base reduced into [0,1)^2.
// Canonical forms compare equal iff the simplices coincide.
class AffineSimplex {
public:
    AffineSimplex() = default;
    AffineSimplex(Vec2Q base, std::vector<Vec2Q> disp);

    int degree() const { return (int)disp_.size(); }
    const Vec2Q& base() const { return base_; }
    const std::vector<Vec2Q>& disp() const { return disp_; }

    AffineSimplex face(int i) const;  // omit vertex i, canonicalized
    bool degenerate() const;          // image has dimension < degree

    bool operator==(const AffineSimplex& o) const {
        return base_ == o.base_ && disp_ == o.disp_;
    }
    bool operator<(const AffineSimplex& o) const {
        if (disp_.size() != o.disp_.size()) return disp_.size() < o.disp_.size();
        if (!(base_ == o.base_)) return base_ < o.base_;
        return std::lexicographical_compare(disp_.begin(), disp_.end(), o.disp_.begin(),
                                            o.disp_.end());
    }

private:
    Vec2Q base_;
    std::vector<Vec2Q> disp_;
};

Vec2Q reduce_mod_lattice(const Vec2Q& v);

class AffineChain {
public:
    AffineChain() : degree_(0), mode_(CoeffMode::Z) {}
    AffineChain(int degree, CoeffMode mode) : degree_(degree), mode_(mode) {}

    int degree() const { return degree_; }
    CoeffMode mode() const { return mode_; }
    const std::map<AffineSimplex, Rat>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    void add(const AffineSimplex& s, const Rat& c);
    AffineChain& operator+=(const AffineChain& o);
    AffineChain& operator-=(const AffineChain& o);
    AffineChain scaled(const Rat& s) const;
    bool operator==(const AffineChain& o) const {
        return degree_ == o.degree_ && entries_ == o.entries_;
    }
    Rat l1_norm() const;

private:
    int degree_;
    CoeffMode mode_;
    std::map<AffineSimplex, Rat> entries_;
};

AffineChain affine_boundary(const AffineChain& c);

// Induced action of a unimodular integer matrix: base -> A base mod Z^2,
// displacements -> A w. Bijective on simplices, so it preserves the l1 norm.
AffineSimplex apply_linear(const Mat2& a, const AffineSimplex& s);
AffineChain apply_linear(const Mat2& a, const AffineChain& c);

// The 2q^2 coherently signed affine triangles of the (1/q)-grid; a cycle of
// norm 2q^2 realizing the fundamental class.
AffineChain grid_cycle(unsigned q);

// The finite candidate set: degree-k simplices with basepoint in (1/q)Z^2 and
// displacements in (1/q)Z^2 with sup-norm <= r, plus the full face closure
// (whose displacements reach sup-norm <= 2r, etc.).
class Dictionary {
public:
    Dictionary(unsigned q, unsigned r, int degree, bool allow_degenerate,
               std::size_t size_cap = 2'000'000);

    unsigned q() const { return q_; }
    unsigned r() const { return r_; }
    int degree() const { return degree_; }
    bool allow_degenerate() const { return allow_degenerate_; }

    const std::vector<AffineSimplex>& level(int j) const { return levels_.at(j); }
    bool contains(int j, const AffineSimplex& s) const;
    int index_of(int j, const AffineSimplex& s) const;  // -1 if absent

    // boundary matrix from level j to level j-1
    IntMat boundary_matrix(int j) const;

private:
    unsigned q_, r_;
    int degree_;
    bool allow_degenerate_;
    std::vector<std::vector<AffineSimplex>> levels_;
    std::vector<std::map<AffineSimplex, int>> index_;
};

// Fill instance over an explicit candidate column set: rows are the face
// closure of the columns together with the support of the target.
struct AffineFillInstance {
    std::vector<AffineSimplex> rows;  // degree k
    std::vector<AffineSimplex> cols;  // degree k+1
    IntMat boundary;                  // rows x cols
    std::vector<Rat> target;          // per row
};
AffineFillInstance make_affine_fill(const std::vector<AffineSimplex>& columns,
                                    const AffineChain& target);

} // namespace fillvol

#endif
