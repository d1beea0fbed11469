#ifndef FILLVOL_DELTA_HPP
#define FILLVOL_DELTA_HPP

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fillvol/matrix.hpp"
#include "fillvol/smith.hpp"

namespace fillvol {

// Finite ordered Delta-complex. cells(k)[i] lists the k+1 ordered faces of the
// i-th k-cell; faces[j] is the face opposite vertex j (so the boundary map is
// the alternating face sum). Immutable after construction.
class DeltaComplex {
public:
    using CellTable = std::vector<std::vector<std::vector<int>>>;
    using LabelMap = std::map<std::string, std::pair<int, int>>;

    DeltaComplex() : cells_(1) {}
    // Checks face-id ranges and arity; does not check d o d = 0 (see validate).
    static DeltaComplex from_cells(CellTable cells, LabelMap labels = {});

    int dimension() const { return static_cast<int>(cells_.size()) - 1; }
    std::size_t num_cells(int k) const {
        return (k < 0 || k > dimension()) ? 0 : cells_[k].size();
    }
    const std::vector<int>& faces(int k, int idx) const { return cells_[k][idx]; }
    const LabelMap& labels() const { return labels_; }

    IntMat boundary_matrix(int k) const;
    Int euler_characteristic() const;

private:
    CellTable cells_;
    LabelMap labels_;
};

struct ValidationReport {
    bool is_complex = false;
    bool is_closed_pseudo_manifold = false;
    std::vector<std::string> problems;
};
ValidationReport validate(const DeltaComplex& x);

enum class CoeffMode { Z, Q };

// Sparse chain over the cells of one degree. In Z mode every coefficient is
// an integer; zero coefficients are never stored.
class CellChain {
public:
    CellChain() : degree_(0), mode_(CoeffMode::Z) {}
    CellChain(int degree, CoeffMode mode) : degree_(degree), mode_(mode) {}

    int degree() const { return degree_; }
    CoeffMode mode() const { return mode_; }
    const std::map<int, Rat>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    Rat coeff(int cell) const {
        auto it = entries_.find(cell);
        return it == entries_.end() ? Rat(0) : it->second;
    }
    void add(int cell, const Rat& c);
    CellChain& operator+=(const CellChain& o);
    CellChain& operator-=(const CellChain& o);
    CellChain scaled(const Rat& s) const;
    bool operator==(const CellChain& o) const {
        return degree_ == o.degree_ && entries_ == o.entries_;
    }

    Rat l1_norm() const;
    std::vector<Int> dense_int(std::size_t n) const;  // Z mode only

private:
    int degree_;
    CoeffMode mode_;
    std::map<int, Rat> entries_;
};

CellChain chain_boundary(const DeltaComplex& x, const CellChain& c);

// Coherent +-1 orientation of the top cells, first top cell positive.
// Throws NotClosed / NonOrientable.
CellChain fundamental_cycle(const DeltaComplex& x);

// Cell-level automorphism: a bijection of cells in every degree together with
// the face permutation it induces on each cell, plus the sign with which the
// cell enters the induced chain map. Pure data; the complex is passed to the
// operations explicitly.
struct SimplicialAutomorphism {
    // cell_map[k][i] = image of cell i in degree k
    std::vector<std::vector<int>> cell_map;
    // face_perm[k][i][j] = position in faces(image) of the image of face j
    std::vector<std::vector<std::vector<int>>> face_perm;
    // sign[k][i] in {+1,-1}: chain map sends cell i to sign * image
    std::vector<std::vector<int>> sign;

    bool order_preserving() const;
    bool operator==(const SimplicialAutomorphism& o) const {
        return cell_map == o.cell_map && face_perm == o.face_perm;
    }
};

// Validates the data against x, derives chain-map signs; throws
// InvalidAutomorphism when the data is not a consistent automorphism.
SimplicialAutomorphism make_automorphism(const DeltaComplex& x,
                                         std::vector<std::vector<int>> cell_map,
                                         std::vector<std::vector<std::vector<int>>> face_perm);

SimplicialAutomorphism identity_automorphism(const DeltaComplex& x);
SimplicialAutomorphism compose(const DeltaComplex& x, const SimplicialAutomorphism& f,
                               const SimplicialAutomorphism& g);  // f after g
SimplicialAutomorphism inverse(const DeltaComplex& x, const SimplicialAutomorphism& f);
unsigned automorphism_order(const DeltaComplex& x, const SimplicialAutomorphism& f,
                            unsigned cap = 1u << 20);
CellChain apply_chain(const SimplicialAutomorphism& f, const CellChain& c);

// Staircase product X x [0,1]. Cell bookkeeping: per degree the cells are the
// bottom copies, top copies, mixed diagonal cells M_i and prisms P_i, in that
// order; the chain maps below give the two inclusions and the prism operator.
class PrismComplex {
public:
    explicit PrismComplex(const DeltaComplex& x);

    const DeltaComplex& product() const { return product_; }
    const DeltaComplex& base() const { return base_; }

    CellChain bottom(const CellChain& c) const;  // (i_0)_#
    CellChain top(const CellChain& c) const;     // (i_1)_#
    // Prism operator P with dP(c) = top(c) - bottom(c) - P(dc); on cycles
    // dP(c) = top(c) - bottom(c) and ||P(c)|| <= (deg+1)||c||.
    CellChain prism(const CellChain& c) const;

    int bottom_id(int k, int idx) const;
    int top_id(int k, int idx) const;
    int mixed_id(int k, int idx, int pivot) const;   // pivot in 1..k
    int prism_id(int k, int idx, int pivot) const;   // cell of degree k+1, pivot in 0..k

private:
    DeltaComplex base_;
    DeltaComplex product_;
    std::vector<std::size_t> n_;  // cells per degree of the base
};

// Returns the product complex and the prism chain w = P(z).
std::pair<PrismComplex, CellChain> prism_chain(const DeltaComplex& x, const CellChain& z);

// Mapping torus of an automorphism: prism triangulation with the top copy
// glued to the bottom through f. Order-scrambling automorphisms are handled
// by passing to the barycentric subdivision, where every automorphism is
// order-preserving. Rejects orientation-reversing f on orientable complexes.
DeltaComplex mapping_torus(const DeltaComplex& x, const SimplicialAutomorphism& f);

DeltaComplex barycentric_subdivision(const DeltaComplex& x);
// The induced automorphism on barycentric_subdivision(x); always
// order-preserving.
SimplicialAutomorphism subdivide_automorphism(const DeltaComplex& x,
                                              const SimplicialAutomorphism& f,
                                              const DeltaComplex& sdx);

HomologyGroup homology(const DeltaComplex& x, int degree);

// ---- generators ----------------------------------------------------------

DeltaComplex build_one_vertex_torus();
DeltaComplex build_grid_torus(unsigned q);
DeltaComplex build_genus_surface(unsigned g);
DeltaComplex build_klein_bottle();
DeltaComplex build_circle(unsigned q);
// Identified polygon with fan triangulation; word entries are
// (letter, inverted). First occurrence of each letter must be non-inverted,
// position 0 non-inverted and the last position inverted.
DeltaComplex build_polygon_surface(const std::vector<std::pair<int, bool>>& word,
                                   const std::vector<std::string>& letter_names);

// Automorphism of build_grid_torus(q) induced by x -> M x + t on the lattice,
// for M in {+-I, +-[[0,1],[1,0]]} (the symmetries preserving the diagonal
// grid). Throws InvalidAutomorphism for other M.
SimplicialAutomorphism grid_torus_affine_automorphism(const DeltaComplex& x, unsigned q,
                                                      const std::array<int, 4>& m,
                                                      const std::array<int, 2>& t);
SimplicialAutomorphism grid_torus_point_reflection(const DeltaComplex& x, unsigned q);
SimplicialAutomorphism circle_rotation(const DeltaComplex& x, unsigned q);

} // namespace fillvol

#endif
