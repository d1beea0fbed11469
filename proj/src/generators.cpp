#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "fillvol/delta.hpp"
#include "fillvol/errors.hpp"

namespace fillvol {

namespace {

std::string nm(const std::string& base, int i, int j) {
    return base + std::to_string(i) + "_" + std::to_string(j);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

DeltaComplex build_circle(unsigned q) {
    if (q < 1) fail(errc::BadInput, "circle needs q >= 1");
    DeltaComplex::CellTable cells(2);
    DeltaComplex::LabelMap labels;
    cells[0].assign(q, {});
    for (unsigned i = 0; i < q; ++i) {
        cells[1].push_back({int((i + 1) % q), int(i)});
        labels["v" + std::to_string(i)] = {0, (int)i};
        labels["e" + std::to_string(i)] = {1, (int)i};
    }
    return DeltaComplex::from_cells(std::move(cells), std::move(labels));
}

DeltaComplex build_grid_torus(unsigned q) {
    if (q < 1) fail(errc::BadInput, "grid torus needs q >= 1");
    int n = (int)q;
    auto idx = [n](int i, int j) {
        return ((i % n + n) % n) * n + ((j % n + n) % n);
    };
    int q2 = n * n;
    DeltaComplex::CellTable cells(3);
    DeltaComplex::LabelMap labels;
    cells[0].assign(q2, {});
    cells[1].resize(3 * q2);
    cells[2].resize(2 * q2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int id = idx(i, j);
            // east, north and diagonal edges out of (i,j)
            cells[1][id] = {idx(i + 1, j), id};
            cells[1][q2 + id] = {idx(i, j + 1), id};
            cells[1][2 * q2 + id] = {idx(i + 1, j + 1), id};
            // lower triangle (v, v+e1, v+e1+e2), upper triangle (v, v+e2, v+e1+e2)
            cells[2][id] = {q2 + idx(i + 1, j), 2 * q2 + id, id};
            cells[2][q2 + id] = {idx(i, j + 1), 2 * q2 + id, q2 + id};
            labels[nm("v", i, j)] = {0, id};
            labels[nm("E", i, j)] = {1, id};
            labels[nm("N", i, j)] = {1, q2 + id};
            labels[nm("D", i, j)] = {1, 2 * q2 + id};
            labels[nm("L", i, j)] = {2, id};
            labels[nm("U", i, j)] = {2, q2 + id};
        }
    return DeltaComplex::from_cells(std::move(cells), std::move(labels));
}

DeltaComplex build_polygon_surface(const std::vector<std::pair<int, bool>>& word,
                                   const std::vector<std::string>& letter_names) {
    int n = (int)word.size();
    if (n < 3) fail(errc::BadInput, "polygon word too short");
    if (word[0].second || !word[n - 1].second)
        fail(errc::BadInput, "polygon word must start forward and end inverted");

    int letters = (int)letter_names.size();
    std::vector<std::vector<int>> occ(letters);
    for (int p = 0; p < n; ++p) {
        auto [l, inv] = word[p];
        if (l < 0 || l >= letters) fail(errc::BadInput, "letter out of range");
        if (occ[l].empty() && inv) fail(errc::BadInput, "first occurrence must be forward");
        occ[l].push_back(p);
    }
    for (int l = 0; l < letters; ++l)
        if (occ[l].size() != 2) fail(errc::BadInput, "every letter must occur exactly twice");

    // corner identifications induced by the edge gluings
    UnionFind uf(n);
    for (int l = 0; l < letters; ++l) {
        int p = occ[l][0], s = occ[l][1];
        if (word[s].second) {
            uf.unite(p, (s + 1) % n);
            uf.unite((p + 1) % n, s);
        } else {
            uf.unite(p, s);
            uf.unite((p + 1) % n, (s + 1) % n);
        }
    }
    std::vector<int> cls(n, -1);
    int nv = 0;
    for (int p = 0; p < n; ++p) {
        int root = uf.find(p);
        if (cls[root] < 0) cls[root] = nv++;
        cls[p] = cls[root];
    }

    DeltaComplex::CellTable cells(3);
    DeltaComplex::LabelMap labels;
    cells[0].assign(nv, {});
    for (int v = 0; v < nv; ++v) labels["v" + std::to_string(v)] = {0, v};

    // one edge cell per letter, directed along its first occurrence
    for (int l = 0; l < letters; ++l) {
        int p = occ[l][0];
        cells[1].push_back({cls[(p + 1) % n], cls[p]});
        labels[letter_names[l]] = {1, l};
    }
    // fan diagonals d_j from corner 0 to corner j
    std::vector<int> diag(n, -1);
    for (int j = 2; j <= n - 2; ++j) {
        diag[j] = (int)cells[1].size();
        cells[1].push_back({cls[j], cls[0]});
        labels["d" + std::to_string(j)] = {1, diag[j]};
    }
    auto low_edge = [&](int j) { return j == 1 ? word[0].first : diag[j]; };
    auto high_edge = [&](int j) { return j == n - 1 ? word[n - 1].first : diag[j]; };

    for (int j = 1; j <= n - 2; ++j) {
        auto [l, inv] = word[j];
        if (!inv)
            cells[2].push_back({l, high_edge(j + 1), low_edge(j)});
        else
            cells[2].push_back({l, low_edge(j), high_edge(j + 1)});
        labels["T" + std::to_string(j)] = {2, (int)cells[2].size() - 1};
    }
    return DeltaComplex::from_cells(std::move(cells), std::move(labels));
}

DeltaComplex build_one_vertex_torus() {
    return build_polygon_surface({{0, false}, {1, false}, {0, true}, {1, true}}, {"a", "b"});
}

DeltaComplex build_klein_bottle() {
    return build_polygon_surface({{0, false}, {1, false}, {0, false}, {1, true}}, {"a", "b"});
}

DeltaComplex build_genus_surface(unsigned g) {
    if (g < 1) fail(errc::BadInput, "genus must be >= 1");
    std::vector<std::pair<int, bool>> word;
    std::vector<std::string> names;
    for (unsigned i = 0; i < g; ++i) {
        int a = 2 * (int)i, b = a + 1;
        word.insert(word.end(), {{a, false}, {b, false}, {a, true}, {b, true}});
        names.push_back("a" + std::to_string(i + 1));
        names.push_back("b" + std::to_string(i + 1));
    }
    return build_polygon_surface(word, names);
}

// ---- grid torus symmetries --------------------------------------------------

namespace {

using Pt = std::array<long long, 2>;

struct ShapeTable {
    // per degree: (cell-id base offset, vertex lifts relative to vertex 0)
    std::vector<std::vector<std::vector<Pt>>> shapes;
};

ShapeTable grid_shapes() {
    ShapeTable t;
    t.shapes = {
        {{Pt{0, 0}}},
        {{Pt{0, 0}, Pt{1, 0}}, {Pt{0, 0}, Pt{0, 1}}, {Pt{0, 0}, Pt{1, 1}}},
        {{Pt{0, 0}, Pt{1, 0}, Pt{1, 1}}, {Pt{0, 0}, Pt{0, 1}, Pt{1, 1}}},
    };
    return t;
}

} // namespace

SimplicialAutomorphism grid_torus_affine_automorphism(const DeltaComplex& x, unsigned q,
                                                      const std::array<int, 4>& m,
                                                      const std::array<int, 2>& t) {
    long long n = q;
    long long dm = (long long)m[0] * m[3] - (long long)m[1] * m[2];
    if (dm != 1 && dm != -1)
        fail(errc::InvalidAutomorphism, "lattice map must be unimodular");
    auto apply = [&](const Pt& p) {
        return Pt{m[0] * p[0] + m[1] * p[1] + t[0], m[2] * p[0] + m[3] * p[1] + t[1]};
    };
    auto idx = [n](const Pt& p) {
        return (int)(((p[0] % n + n) % n) * n + ((p[1] % n + n) % n));
    };
    ShapeTable shapes = grid_shapes();
    int q2 = (int)(n * n);
    std::array<int, 3> block = {1, 3, 2};  // shape variants per degree

    std::vector<std::vector<int>> cm(3);
    std::vector<std::vector<std::vector<int>>> fp(3);
    for (int k = 0; k <= 2; ++k) {
        cm[k].resize(x.num_cells(k));
        fp[k].resize(x.num_cells(k));
        for (int type = 0; type < block[k]; ++type) {
            const auto& offs = shapes.shapes[k][type];
            for (int id = 0; id < q2; ++id) {
                int i = id / (int)n, j = id % (int)n;
                std::vector<Pt> img;
                for (const Pt& o : offs) img.push_back(apply(Pt{i + o[0], j + o[1]}));
                // find the unique (shape, vertex order) the image fits
                bool found = false;
                std::vector<int> perm(k + 1);
                std::iota(perm.begin(), perm.end(), 0);
                std::vector<int> chosen;
                int img_cell = -1;
                do {
                    for (int type2 = 0; type2 < block[k] && !found; ++type2) {
                        const auto& offs2 = shapes.shapes[k][type2];
                        bool ok = true;
                        for (int v = 0; v <= k && ok; ++v) {
                            Pt d{img[perm[v]][0] - img[perm[0]][0],
                                 img[perm[v]][1] - img[perm[0]][1]};
                            ok = (d == offs2[v]);
                        }
                        if (ok) {
                            found = true;
                            chosen = perm;
                            img_cell = type2 * q2 + idx(img[perm[0]]);
                        }
                    }
                } while (!found && std::next_permutation(perm.begin(), perm.end()));
                if (!found)
                    fail(errc::InvalidAutomorphism, "lattice map does not preserve the grid");
                int cell = type * q2 + id;
                cm[k][cell] = img_cell;
                if (k >= 1) {
                    // vertex v of the source sits at position chosen^{-1}(v)
                    fp[k][cell].resize(k + 1);
                    for (int v = 0; v <= k; ++v) fp[k][cell][chosen[v]] = v;
                }
            }
        }
    }
    return make_automorphism(x, std::move(cm), std::move(fp));
}

SimplicialAutomorphism grid_torus_point_reflection(const DeltaComplex& x, unsigned q) {
    return grid_torus_affine_automorphism(x, q, {-1, 0, 0, -1}, {0, 0});
}

SimplicialAutomorphism circle_rotation(const DeltaComplex& x, unsigned q) {
    int n = (int)q;
    std::vector<std::vector<int>> cm(2);
    std::vector<std::vector<std::vector<int>>> fp(2);
    cm[0].resize(n);
    cm[1].resize(n);
    fp[0].resize(n);
    fp[1].resize(n);
    for (int i = 0; i < n; ++i) {
        cm[0][i] = (i + 1) % n;
        cm[1][i] = (i + 1) % n;
        fp[1][i] = {0, 1};
    }
    return make_automorphism(x, std::move(cm), std::move(fp));
}

} // namespace fillvol
