#include "fillvol/delta.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>

#include "fillvol/errors.hpp"

namespace fillvol {

// ---- DeltaComplex ---------------------------------------------------------

DeltaComplex DeltaComplex::from_cells(CellTable cells, LabelMap labels) {
    if (cells.empty()) cells.emplace_back();
    DeltaComplex x;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        for (std::size_t i = 0; i < cells[k].size(); ++i) {
            const auto& f = cells[k][i];
            if (k == 0) {
                if (!f.empty()) fail(errc::BadInput, "0-cells take no faces");
                continue;
            }
            if (f.size() != k + 1)
                fail(errc::BadInput, "a " + std::to_string(k) + "-cell needs " +
                                         std::to_string(k + 1) + " faces");
            for (int id : f)
                if (id < 0 || static_cast<std::size_t>(id) >= cells[k - 1].size())
                    fail(errc::BadInput, "face id out of range");
        }
    }
    for (const auto& [name, loc] : labels) {
        auto [k, i] = loc;
        if (k < 0 || static_cast<std::size_t>(k) >= cells.size() || i < 0 ||
            static_cast<std::size_t>(i) >= cells[k].size())
            fail(errc::BadInput, "label '" + name + "' points outside the complex");
    }
    x.cells_ = std::move(cells);
    x.labels_ = std::move(labels);
    return x;
}

IntMat DeltaComplex::boundary_matrix(int k) const {
    std::size_t rows = num_cells(k - 1), cols = num_cells(k);
    IntMat d(rows, cols);
    if (k < 1 || k > dimension()) return d;
    for (std::size_t c = 0; c < cols; ++c) {
        const auto& f = cells_[k][c];
        for (std::size_t j = 0; j < f.size(); ++j) d.at(f[j], c) += (j % 2 == 0) ? 1 : -1;
    }
    return d;
}

Int DeltaComplex::euler_characteristic() const {
    Int chi = 0;
    for (int k = 0; k <= dimension(); ++k)
        chi += (k % 2 == 0) ? Int(num_cells(k)) : Int(-Int(num_cells(k)));
    return chi;
}

ValidationReport validate(const DeltaComplex& x) {
    ValidationReport r;
    r.is_complex = true;
    for (int k = 1; k + 1 <= x.dimension() + 1; ++k) {
        IntMat dd = mat_mul(x.boundary_matrix(k), x.boundary_matrix(k + 1));
        for (std::size_t i = 0; i < dd.rows(); ++i)
            for (std::size_t j = 0; j < dd.cols(); ++j)
                if (dd.at(i, j) != 0) {
                    r.is_complex = false;
                    r.problems.push_back("d o d != 0 between degrees " + std::to_string(k + 1) +
                                         " and " + std::to_string(k - 1));
                    i = dd.rows();
                    break;
                }
    }
    int n = x.dimension();
    r.is_closed_pseudo_manifold = (n >= 1) && x.num_cells(n) > 0;
    if (r.is_closed_pseudo_manifold) {
        std::vector<int> slots(x.num_cells(n - 1), 0);
        for (std::size_t c = 0; c < x.num_cells(n); ++c)
            for (int f : x.faces(n, c)) ++slots[f];
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (slots[i] != 2) {
                r.is_closed_pseudo_manifold = false;
                r.problems.push_back("codimension-1 cell " + std::to_string(i) + " lies in " +
                                     std::to_string(slots[i]) + " top-cell slots");
            }
    }
    return r;
}

// ---- CellChain ------------------------------------------------------------

void CellChain::add(int cell, const Rat& c) {
    if (c == 0) return;
    if (mode_ == CoeffMode::Z && rat_den(c) != 1)
        fail(errc::BadInput, "non-integer coefficient in a Z-mode chain");
    auto [it, inserted] = entries_.emplace(cell, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) entries_.erase(it);
    }
}

CellChain& CellChain::operator+=(const CellChain& o) {
    if (degree_ != o.degree_) fail(errc::DegreeMismatch, "chain addition across degrees");
    for (const auto& [cell, c] : o.entries_) add(cell, c);
    return *this;
}

CellChain& CellChain::operator-=(const CellChain& o) {
    if (degree_ != o.degree_) fail(errc::DegreeMismatch, "chain subtraction across degrees");
    for (const auto& [cell, c] : o.entries_) add(cell, -c);
    return *this;
}

CellChain CellChain::scaled(const Rat& s) const {
    CellChain out(degree_, mode_);
    if (s == 0) return out;
    for (const auto& [cell, c] : entries_) out.add(cell, c * s);
    return out;
}

Rat CellChain::l1_norm() const {
    Rat n = 0;
    for (const auto& [cell, c] : entries_) n += abs_rat(c);
    return n;
}

std::vector<Int> CellChain::dense_int(std::size_t n) const {
    std::vector<Int> v(n);
    for (const auto& [cell, c] : entries_) {
        if (rat_den(c) != 1) fail(errc::BadInput, "dense_int on a non-integer chain");
        v.at(cell) = rat_num(c);
    }
    return v;
}

CellChain chain_boundary(const DeltaComplex& x, const CellChain& c) {
    CellChain out(c.degree() - 1, c.mode());
    if (c.degree() < 1) return out;
    for (const auto& [cell, coeff] : c.entries()) {
        const auto& f = x.faces(c.degree(), cell);
        for (std::size_t j = 0; j < f.size(); ++j)
            out.add(f[j], (j % 2 == 0) ? coeff : Rat(-coeff));
    }
    return out;
}

// ---- fundamental cycle ----------------------------------------------------

CellChain fundamental_cycle(const DeltaComplex& x) {
    ValidationReport rep = validate(x);
    if (!rep.is_complex || !rep.is_closed_pseudo_manifold)
        fail(errc::NotClosed, "not a closed pseudo-manifold");
    int n = x.dimension();
    std::size_t top = x.num_cells(n);

    // slots[r] = the two (top cell, face position) incidences of r.
    std::vector<std::vector<std::pair<int, int>>> slots(x.num_cells(n - 1));
    for (std::size_t c = 0; c < top; ++c) {
        const auto& f = x.faces(n, c);
        for (std::size_t j = 0; j < f.size(); ++j) slots[f[j]].push_back({(int)c, (int)j});
    }

    std::vector<int> sgn(top, 0);
    for (std::size_t seed = 0; seed < top; ++seed) {
        if (sgn[seed] != 0) continue;
        sgn[seed] = 1;
        std::queue<int> bfs;
        bfs.push((int)seed);
        while (!bfs.empty()) {
            int c = bfs.front();
            bfs.pop();
            for (std::size_t j = 0; j < x.faces(n, c).size(); ++j) {
                int r = x.faces(n, c)[j];
                auto s0 = slots[r][0], s1 = slots[r][1];
                auto other = (s0.first == c && s0.second == (int)j) ? s1 : s0;
                // coherence: eps0*(-1)^j0 + eps1*(-1)^j1 = 0
                int rel = ((s0.second + s1.second) % 2 == 0) ? -1 : 1;
                if (other.first == c) {
                    // both slots inside one top cell: positions must differ in parity
                    if (rel == -1)
                        fail(errc::NonOrientable, "sign contradiction on a self-glued face");
                    continue;
                }
                int want = sgn[c] * rel;
                if (sgn[other.first] == 0) {
                    sgn[other.first] = want;
                    bfs.push(other.first);
                } else if (sgn[other.first] != want) {
                    fail(errc::NonOrientable, "no coherent orientation of the top cells");
                }
            }
        }
    }

    CellChain z(n, CoeffMode::Z);
    for (std::size_t c = 0; c < top; ++c) z.add((int)c, Rat(sgn[c]));
    if (!chain_boundary(x, z).is_zero())
        fail(errc::NonOrientable, "no coherent orientation of the top cells");
    return z;
}

// ---- automorphisms --------------------------------------------------------

bool SimplicialAutomorphism::order_preserving() const {
    for (const auto& deg : face_perm)
        for (const auto& p : deg)
            for (std::size_t j = 0; j < p.size(); ++j)
                if (p[j] != (int)j) return false;
    return true;
}

SimplicialAutomorphism make_automorphism(const DeltaComplex& x,
                                         std::vector<std::vector<int>> cell_map,
                                         std::vector<std::vector<std::vector<int>>> face_perm) {
    int n = x.dimension();
    if ((int)cell_map.size() != n + 1 || (int)face_perm.size() != n + 1)
        fail(errc::InvalidAutomorphism, "per-degree tables have the wrong size");
    for (int k = 0; k <= n; ++k) {
        std::size_t nk = x.num_cells(k);
        if (cell_map[k].size() != nk || face_perm[k].size() != nk)
            fail(errc::InvalidAutomorphism, "cell table size mismatch in degree " +
                                                std::to_string(k));
        std::vector<char> seen(nk, 0);
        for (int img : cell_map[k]) {
            if (img < 0 || (std::size_t)img >= nk || seen[img])
                fail(errc::InvalidAutomorphism, "cell map is not a bijection");
            seen[img] = 1;
        }
    }
    SimplicialAutomorphism f;
    f.cell_map = std::move(cell_map);
    f.face_perm = std::move(face_perm);
    f.sign.assign(n + 1, {});
    f.sign[0].assign(x.num_cells(0), 1);
    for (int k = 1; k <= n; ++k) {
        f.sign[k].assign(x.num_cells(k), 0);
        for (std::size_t i = 0; i < x.num_cells(k); ++i) {
            const auto& perm = f.face_perm[k][i];
            if (perm.size() != (std::size_t)k + 1)
                fail(errc::InvalidAutomorphism, "face permutation arity mismatch");
            std::vector<char> hit(k + 1, 0);
            for (int p : perm) {
                if (p < 0 || p > k || hit[p])
                    fail(errc::InvalidAutomorphism, "face permutation is not a permutation");
                hit[p] = 1;
            }
            const auto& src = x.faces(k, i);
            const auto& dst = x.faces(k, f.cell_map[k][i]);
            int eps = 0;
            for (int j = 0; j <= k; ++j) {
                if (f.cell_map[k - 1][src[j]] != dst[perm[j]])
                    fail(errc::InvalidAutomorphism, "face permutation incompatible with faces");
                int cand = f.sign[k - 1][src[j]] * (((j - perm[j]) % 2 == 0) ? 1 : -1);
                if (eps == 0)
                    eps = cand;
                else if (eps != cand)
                    fail(errc::InvalidAutomorphism, "no consistent chain-map sign");
            }
            f.sign[k][i] = eps;
        }
    }
    return f;
}

SimplicialAutomorphism identity_automorphism(const DeltaComplex& x) {
    int n = x.dimension();
    std::vector<std::vector<int>> cm(n + 1);
    std::vector<std::vector<std::vector<int>>> fp(n + 1);
    for (int k = 0; k <= n; ++k) {
        cm[k].resize(x.num_cells(k));
        std::iota(cm[k].begin(), cm[k].end(), 0);
        fp[k].resize(x.num_cells(k));
        if (k >= 1) {
            std::vector<int> id(k + 1);
            std::iota(id.begin(), id.end(), 0);
            for (auto& p : fp[k]) p = id;
        }
    }
    return make_automorphism(x, std::move(cm), std::move(fp));
}

SimplicialAutomorphism compose(const DeltaComplex& x, const SimplicialAutomorphism& f,
                               const SimplicialAutomorphism& g) {
    int n = x.dimension();
    std::vector<std::vector<int>> cm(n + 1);
    std::vector<std::vector<std::vector<int>>> fp(n + 1);
    for (int k = 0; k <= n; ++k) {
        std::size_t nk = x.num_cells(k);
        cm[k].resize(nk);
        fp[k].resize(nk);
        for (std::size_t i = 0; i < nk; ++i) {
            int mid = g.cell_map[k][i];
            cm[k][i] = f.cell_map[k][mid];
            if (k >= 1) {
                fp[k][i].resize(k + 1);
                for (int j = 0; j <= k; ++j) fp[k][i][j] = f.face_perm[k][mid][g.face_perm[k][i][j]];
            }
        }
    }
    return make_automorphism(x, std::move(cm), std::move(fp));
}

SimplicialAutomorphism inverse(const DeltaComplex& x, const SimplicialAutomorphism& f) {
    int n = x.dimension();
    std::vector<std::vector<int>> cm(n + 1);
    std::vector<std::vector<std::vector<int>>> fp(n + 1);
    for (int k = 0; k <= n; ++k) {
        std::size_t nk = x.num_cells(k);
        cm[k].resize(nk);
        fp[k].resize(nk);
        for (std::size_t i = 0; i < nk; ++i) {
            int img = f.cell_map[k][i];
            cm[k][img] = (int)i;
            if (k >= 1) {
                fp[k][img].resize(k + 1);
                for (int j = 0; j <= k; ++j) fp[k][img][f.face_perm[k][i][j]] = j;
            }
        }
    }
    return make_automorphism(x, std::move(cm), std::move(fp));
}

unsigned automorphism_order(const DeltaComplex& x, const SimplicialAutomorphism& f,
                            unsigned cap) {
    SimplicialAutomorphism id = identity_automorphism(x);
    SimplicialAutomorphism g = f;
    unsigned k = 1;
    while (!(g == id)) {
        if (++k > cap) fail(errc::BadInput, "automorphism order exceeds cap");
        g = compose(x, f, g);
    }
    return k;
}

CellChain apply_chain(const SimplicialAutomorphism& f, const CellChain& c) {
    CellChain out(c.degree(), c.mode());
    int k = c.degree();
    for (const auto& [cell, coeff] : c.entries())
        out.add(f.cell_map[k][cell], coeff * f.sign[k][cell]);
    return out;
}

// ---- product / prism ------------------------------------------------------

namespace {

// Shared cell/face layout for X x I and the mapping torus. The torus variant
// drops the top copies and re-routes them through the gluing automorphism.
struct ProductLayout {
    const DeltaComplex* x;
    bool with_top;                       // false for mapping torus
    const std::vector<int>* glue;        // top-degree-k cell c -> glued cell (torus only)
    const std::vector<std::vector<int>>* glue_map;  // full map per degree
    std::vector<std::size_t> n;

    explicit ProductLayout(const DeltaComplex& base, bool top,
                           const std::vector<std::vector<int>>* gm)
        : x(&base), with_top(top), glue(nullptr), glue_map(gm) {
        n.resize(base.dimension() + 2, 0);
        for (int k = 0; k <= base.dimension(); ++k) n[k] = base.num_cells(k);
    }

    std::size_t copies(int k) const { return with_top ? 2 : 1; }
    int bottom(int k, int i) const { return i; }
    int top(int k, int i) const {
        return with_top ? (int)n[k] + i : (*glue_map)[k][i];
    }
    int mixed(int k, int i, int pivot) const {  // pivot in 1..k
        return (int)(copies(k) * n[k] + (std::size_t)(pivot - 1) * n[k]) + i;
    }
    int prism(int ktau, int i, int pivot) const {  // cell of degree ktau+1
        int k = ktau + 1;
        return (int)(copies(k) * n[k] + (std::size_t)k * n[k] +
                     (std::size_t)pivot * n[ktau]) +
               i;
    }

    DeltaComplex::CellTable build() const {
        int nx = x->dimension();
        DeltaComplex::CellTable cells(nx + 2);
        for (int k = 0; k <= nx + 1; ++k) {
            std::size_t nk = (k <= nx) ? n[k] : 0;
            // bottom, then top, then mixed M_1..M_k, then prisms P_0..P_k over
            // degree k-1 cells
            for (std::size_t copy = 0; copy < copies(k) && k <= nx; ++copy)
                for (std::size_t i = 0; i < nk; ++i) {
                    std::vector<int> f;
                    if (k >= 1) {
                        for (int fc : x->faces(k, (int)i))
                            f.push_back(copy == 0 ? bottom(k - 1, fc) : (int)n[k - 1] + fc);
                    }
                    cells[k].push_back(std::move(f));
                }
            for (int pivot = 1; pivot <= k && k <= nx; ++pivot)
                for (std::size_t i = 0; i < nk; ++i) {
                    std::vector<int> f(k + 1);
                    for (int j = 0; j <= k; ++j) {
                        int fc = x->faces(k, (int)i)[j];
                        if (j <= pivot - 1)
                            f[j] = (pivot - 1 == 0) ? top(k - 1, fc) : mixed(k - 1, fc, pivot - 1);
                        else
                            f[j] = (pivot == k) ? bottom(k - 1, fc) : mixed(k - 1, fc, pivot);
                    }
                    cells[k].push_back(std::move(f));
                }
            int e = k - 1;
            if (e >= 0 && e <= nx)
                for (int pivot = 0; pivot <= e; ++pivot)
                    for (std::size_t i = 0; i < n[e]; ++i) {
                        std::vector<int> f(k + 1);
                        for (int j = 0; j <= k; ++j) {
                            if (j < pivot)
                                f[j] = prism(e - 1, x->faces(e, (int)i)[j], pivot - 1);
                            else if (j == pivot)
                                f[j] = (pivot == 0) ? top(e, (int)i) : mixed(e, (int)i, pivot);
                            else if (j == pivot + 1)
                                f[j] = (pivot == e) ? bottom(e, (int)i) : mixed(e, (int)i, pivot + 1);
                            else
                                f[j] = prism(e - 1, x->faces(e, (int)i)[j - 1], pivot);
                        }
                        cells[k].push_back(std::move(f));
                    }
        }
        return cells;
    }
};

} // namespace

PrismComplex::PrismComplex(const DeltaComplex& x) : base_(x) {
    ProductLayout layout(base_, true, nullptr);
    product_ = DeltaComplex::from_cells(layout.build());
    n_ = layout.n;
}

int PrismComplex::bottom_id(int k, int idx) const { return idx; }
int PrismComplex::top_id(int k, int idx) const { return (int)n_[k] + idx; }
int PrismComplex::mixed_id(int k, int idx, int pivot) const {
    return (int)(2 * n_[k] + (std::size_t)(pivot - 1) * n_[k]) + idx;
}
int PrismComplex::prism_id(int k, int idx, int pivot) const {
    return (int)(2 * n_[k + 1] + (std::size_t)(k + 1) * n_[k + 1] + (std::size_t)pivot * n_[k]) +
           idx;
}

CellChain PrismComplex::bottom(const CellChain& c) const {
    CellChain out(c.degree(), c.mode());
    for (const auto& [cell, coeff] : c.entries()) out.add(bottom_id(c.degree(), cell), coeff);
    return out;
}

CellChain PrismComplex::top(const CellChain& c) const {
    CellChain out(c.degree(), c.mode());
    for (const auto& [cell, coeff] : c.entries()) out.add(top_id(c.degree(), cell), coeff);
    return out;
}

CellChain PrismComplex::prism(const CellChain& c) const {
    CellChain out(c.degree() + 1, c.mode());
    int k = c.degree();
    for (const auto& [cell, coeff] : c.entries())
        for (int i = 0; i <= k; ++i)
            out.add(prism_id(k, cell, i), (i % 2 == 0) ? coeff : Rat(-coeff));
    return out;
}

std::pair<PrismComplex, CellChain> prism_chain(const DeltaComplex& x, const CellChain& z) {
    if (z.degree() < 0 || z.degree() > x.dimension())
        fail(errc::DegreeMismatch, "chain degree outside the complex");
    PrismComplex p(x);
    CellChain w = p.prism(z);
    return {std::move(p), std::move(w)};
}

// ---- mapping torus --------------------------------------------------------

DeltaComplex mapping_torus(const DeltaComplex& x, const SimplicialAutomorphism& f) {
    if ((int)f.cell_map.size() != x.dimension() + 1)
        fail(errc::InvalidAutomorphism, "automorphism does not match the complex");
    // Reject orientation-reversing gluings on orientable complexes.
    try {
        CellChain z = fundamental_cycle(x);
        if (!(apply_chain(f, z) == z))
            fail(errc::OrientationReversing,
                 "gluing automorphism reverses the orientation of the fiber");
    } catch (const error& e) {
        if (e.code() == errc::OrientationReversing) throw;
        // non-orientable or non-closed fiber: nothing to check
    }
    if (!f.order_preserving()) {
        DeltaComplex sdx = barycentric_subdivision(x);
        SimplicialAutomorphism sdf = subdivide_automorphism(x, f, sdx);
        return mapping_torus(sdx, sdf);
    }
    ProductLayout layout(x, false, &f.cell_map);
    return DeltaComplex::from_cells(layout.build());
}

// ---- barycentric subdivision ----------------------------------------------

namespace {

using Mask = std::uint32_t;

struct Flag {
    int deg;                  // degree of the carrier cell
    int cell;                 // carrier cell index
    std::vector<Mask> sets;   // strictly increasing chain, sets.back() = full

    bool operator<(const Flag& o) const {
        if (deg != o.deg) return deg < o.deg;
        if (cell != o.cell) return cell < o.cell;
        return sets < o.sets;
    }
    bool operator==(const Flag& o) const {
        return deg == o.deg && cell == o.cell && sets == o.sets;
    }
};

Mask full_mask(int deg) { return (Mask(1) << (deg + 1)) - 1; }

Mask drop_bit(Mask s, int i) {
    Mask low = s & ((Mask(1) << i) - 1);
    Mask high = (s >> (i + 1)) << i;
    return low | high;
}

Mask map_bits(Mask s, const std::vector<int>& perm) {
    Mask out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (s & (Mask(1) << i)) out |= Mask(1) << perm[i];
    return out;
}

Flag canonical_flag(const DeltaComplex& x, Flag f) {
    while (f.sets.back() != full_mask(f.deg)) {
        Mask missing = full_mask(f.deg) & ~f.sets.back();
        int i = 31 - __builtin_clz(missing);
        f.cell = x.faces(f.deg, f.cell)[i];
        --f.deg;
        for (Mask& s : f.sets) s = drop_bit(s, i);
    }
    return f;
}

struct SdTables {
    std::vector<std::vector<Flag>> cells_by_deg;  // [j] -> flags in id order
    std::map<Flag, int> ids;                      // flag -> index within its degree
};

SdTables enumerate_flags(const DeltaComplex& x) {
    SdTables t;
    t.cells_by_deg.resize(x.dimension() + 1);
    for (int d = 0; d <= x.dimension(); ++d) {
        for (std::size_t c = 0; c < x.num_cells(d); ++c) {
            // all chains ending at the full set, grouped by length
            std::vector<Mask> chain{full_mask(d)};
            auto emit = [&](auto&& self, Mask curr) -> void {
                Flag f{d, (int)c, std::vector<Mask>(chain.rbegin(), chain.rend())};
                int j = (int)f.sets.size() - 1;
                t.ids.emplace(f, (int)t.cells_by_deg[j].size());
                t.cells_by_deg[j].push_back(std::move(f));
                if (curr == 0) return;
                for (Mask sub = (curr - 1) & curr; sub; sub = (sub - 1) & curr) {
                    chain.push_back(sub);
                    self(self, sub);
                    chain.pop_back();
                }
            };
            emit(emit, full_mask(d));
        }
    }
    return t;
}

} // namespace

DeltaComplex barycentric_subdivision(const DeltaComplex& x) {
    if (x.dimension() > 30) fail(errc::SizeLimitExceeded, "dimension too large for subdivision");
    SdTables t = enumerate_flags(x);
    DeltaComplex::CellTable cells(x.dimension() + 1);
    for (int j = 0; j <= x.dimension(); ++j) {
        for (const Flag& f : t.cells_by_deg[j]) {
            std::vector<int> faces;
            for (int m = 0; m <= j && j >= 1; ++m) {
                Flag g = f;
                g.sets.erase(g.sets.begin() + m);
                g = canonical_flag(x, g);
                faces.push_back(t.ids.at(g));
            }
            cells[j].push_back(std::move(faces));
        }
    }
    return DeltaComplex::from_cells(std::move(cells));
}

SimplicialAutomorphism subdivide_automorphism(const DeltaComplex& x,
                                              const SimplicialAutomorphism& f,
                                              const DeltaComplex& sdx) {
    SdTables t = enumerate_flags(x);
    int n = x.dimension();
    std::vector<std::vector<int>> cm(n + 1);
    std::vector<std::vector<std::vector<int>>> fp(n + 1);
    for (int j = 0; j <= n; ++j) {
        cm[j].resize(t.cells_by_deg[j].size());
        fp[j].resize(t.cells_by_deg[j].size());
        std::vector<int> idperm(j + 1);
        std::iota(idperm.begin(), idperm.end(), 0);
        for (std::size_t i = 0; i < t.cells_by_deg[j].size(); ++i) {
            const Flag& g = t.cells_by_deg[j][i];
            Flag h;
            h.deg = g.deg;
            h.cell = f.cell_map[g.deg][g.cell];
            // vertex permutation of the carrier = face permutation (faces are
            // indexed by the omitted vertex)
            const std::vector<int>* perm =
                g.deg >= 1 ? &f.face_perm[g.deg][g.cell] : nullptr;
            for (Mask s : g.sets) h.sets.push_back(perm ? map_bits(s, *perm) : s);
            cm[j][i] = t.ids.at(h);
            if (j >= 1) fp[j][i] = idperm;
        }
    }
    return make_automorphism(sdx, std::move(cm), std::move(fp));
}

HomologyGroup homology(const DeltaComplex& x, int degree) {
    HomologyGroup h;
    h.degree = degree;
    if (degree < 0 || degree > x.dimension()) return h;
    return homology_from_boundaries(degree, x.num_cells(degree), x.boundary_matrix(degree),
                                    x.boundary_matrix(degree + 1));
}

} // namespace fillvol
