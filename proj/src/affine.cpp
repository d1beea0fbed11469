#include "fillvol/affine.hpp"

#include <algorithm>
#include <set>

#include "fillvol/errors.hpp"

namespace fillvol {

Vec2Q reduce_mod_lattice(const Vec2Q& v) {
    return {v.x - Rat(rat_floor(v.x)), v.y - Rat(rat_floor(v.y))};
}

AffineSimplex::AffineSimplex(Vec2Q base, std::vector<Vec2Q> disp)
    : base_(reduce_mod_lattice(base)), disp_(std::move(disp)) {}

AffineSimplex AffineSimplex::face(int i) const {
    int k = degree();
    if (k < 1 || i < 0 || i > k) fail(errc::BadInput, "face index out of range");
    if (i == 0) {
        std::vector<Vec2Q> d;
        d.reserve(k - 1);
        for (int j = 1; j < k; ++j) d.push_back(disp_[j] - disp_[0]);
        return AffineSimplex(base_ + disp_[0], std::move(d));
    }
    std::vector<Vec2Q> d = disp_;
    d.erase(d.begin() + (i - 1));
    return AffineSimplex(base_, std::move(d));
}

bool AffineSimplex::degenerate() const {
    int k = degree();
    if (k == 0) return false;
    if (k == 1) return disp_[0] == Vec2Q{};
    if (k > 2) return true;  // more than two displacement vectors in the plane
    return disp_[0].x * disp_[1].y - disp_[0].y * disp_[1].x == 0;
}

void AffineChain::add(const AffineSimplex& s, const Rat& c) {
    if (c == 0) return;
    if (s.degree() != degree_) fail(errc::DegreeMismatch, "simplex degree mismatch");
    if (mode_ == CoeffMode::Z && rat_den(c) != 1)
        fail(errc::BadInput, "non-integer coefficient in a Z-mode chain");
    auto [it, inserted] = entries_.emplace(s, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) entries_.erase(it);
    }
}

AffineChain& AffineChain::operator+=(const AffineChain& o) {
    if (degree_ != o.degree_) fail(errc::DegreeMismatch, "chain addition across degrees");
    for (const auto& [s, c] : o.entries_) add(s, c);
    return *this;
}

AffineChain& AffineChain::operator-=(const AffineChain& o) {
    if (degree_ != o.degree_) fail(errc::DegreeMismatch, "chain subtraction across degrees");
    for (const auto& [s, c] : o.entries_) add(s, -c);
    return *this;
}

AffineChain AffineChain::scaled(const Rat& s) const {
    AffineChain out(degree_, mode_);
    if (s == 0) return out;
    for (const auto& [sx, c] : entries_) out.add(sx, c * s);
    return out;
}

Rat AffineChain::l1_norm() const {
    Rat n = 0;
    for (const auto& [s, c] : entries_) n += abs_rat(c);
    return n;
}

AffineChain affine_boundary(const AffineChain& c) {
    if (c.degree() < 1) fail(errc::DegreeMismatch, "boundary needs degree >= 1");
    AffineChain out(c.degree() - 1, c.mode());
    for (const auto& [s, coeff] : c.entries())
        for (int i = 0; i <= s.degree(); ++i)
            out.add(s.face(i), (i % 2 == 0) ? coeff : Rat(-coeff));
    return out;
}

AffineSimplex apply_linear(const Mat2& a, const AffineSimplex& s) {
    Int dt = a.det();
    if (dt != 1 && dt != -1) fail(errc::NotUnimodular, "chain action requires det = +-1");
    auto mul = [&a](const Vec2Q& v) {
        return Vec2Q{Rat(a.a) * v.x + Rat(a.b) * v.y, Rat(a.c) * v.x + Rat(a.d) * v.y};
    };
    std::vector<Vec2Q> d;
    d.reserve(s.degree());
    for (const Vec2Q& w : s.disp()) d.push_back(mul(w));
    return AffineSimplex(mul(s.base()), std::move(d));
}

AffineChain apply_linear(const Mat2& a, const AffineChain& c) {
    AffineChain out(c.degree(), c.mode());
    for (const auto& [s, coeff] : c.entries()) out.add(apply_linear(a, s), coeff);
    return out;
}

AffineChain grid_cycle(unsigned q) {
    if (q < 1) fail(errc::BadInput, "grid cycle needs q >= 1");
    AffineChain z(2, CoeffMode::Z);
    Rat h(1, (long)q);
    Vec2Q e1{h, 0}, e2{0, h}, e12{h, h};
    for (unsigned i = 0; i < q; ++i)
        for (unsigned j = 0; j < q; ++j) {
            Vec2Q p{Rat((long)i, (long)q), Rat((long)j, (long)q)};
            z.add(AffineSimplex(p, {e1, e12}), 1);
            z.add(AffineSimplex(p, {e2, e12}), -1);
        }
    return z;
}

// ---- dictionary -------------------------------------------------------------

Dictionary::Dictionary(unsigned q, unsigned r, int degree, bool allow_degenerate,
                       std::size_t size_cap)
    : q_(q), r_(r), degree_(degree), allow_degenerate_(allow_degenerate) {
    if (q < 1 || r < 1 || degree < 0) fail(errc::BadInput, "dictionary needs q, r >= 1, k >= 0");
    long n = (long)q;
    long span = (long)r * n;  // displacement numerators in [-span, span]

    double count = (double)(n * n);
    for (int i = 0; i < degree; ++i) count *= (double)((2 * span + 1) * (2 * span + 1));
    if (count > (double)size_cap)
        fail(errc::SizeLimitExceeded, "dictionary would exceed the size cap");

    std::vector<Vec2Q> disp_values;
    for (long a = -span; a <= span; ++a)
        for (long b = -span; b <= span; ++b) disp_values.push_back({Rat(a, n), Rat(b, n)});

    std::set<AffineSimplex> top;
    std::vector<Vec2Q> disp(degree);
    auto rec = [&](auto&& self, int slot) -> void {
        if (slot == degree) {
            for (long bi = 0; bi < n; ++bi)
                for (long bj = 0; bj < n; ++bj) {
                    AffineSimplex s(Vec2Q{Rat(bi, n), Rat(bj, n)}, disp);
                    if (!allow_degenerate_ && s.degenerate()) continue;
                    top.insert(s);
                }
            return;
        }
        for (const Vec2Q& w : disp_values) {
            disp[slot] = w;
            self(self, slot + 1);
        }
    };
    rec(rec, 0);

    levels_.resize(degree + 1);
    index_.resize(degree + 1);
    levels_[degree].assign(top.begin(), top.end());
    for (int j = degree; j >= 1; --j) {
        std::set<AffineSimplex> below;
        for (const AffineSimplex& s : levels_[j])
            for (int i = 0; i <= j; ++i) below.insert(s.face(i));
        levels_[j - 1].assign(below.begin(), below.end());
    }
    for (int j = 0; j <= degree; ++j)
        for (std::size_t i = 0; i < levels_[j].size(); ++i) index_[j][levels_[j][i]] = (int)i;
}

bool Dictionary::contains(int j, const AffineSimplex& s) const { return index_of(j, s) >= 0; }

int Dictionary::index_of(int j, const AffineSimplex& s) const {
    if (j < 0 || j > degree_) return -1;
    auto it = index_[j].find(s);
    return it == index_[j].end() ? -1 : it->second;
}

IntMat Dictionary::boundary_matrix(int j) const {
    if (j < 1 || j > degree_) fail(errc::BadInput, "boundary level out of range");
    IntMat d(levels_[j - 1].size(), levels_[j].size());
    for (std::size_t c = 0; c < levels_[j].size(); ++c) {
        const AffineSimplex& s = levels_[j][c];
        for (int i = 0; i <= j; ++i) {
            int row = index_of(j - 1, s.face(i));
            if (row < 0) fail(errc::BadInput, "dictionary not closed under faces");
            d.at(row, c) += (i % 2 == 0) ? 1 : -1;
        }
    }
    return d;
}

AffineFillInstance make_affine_fill(const std::vector<AffineSimplex>& columns,
                                    const AffineChain& target) {
    AffineFillInstance inst;
    std::set<AffineSimplex> rows;
    for (const auto& [s, c] : target.entries()) rows.insert(s);
    for (const AffineSimplex& s : columns) {
        if (s.degree() != target.degree() + 1)
            fail(errc::DegreeMismatch, "column degree must be target degree + 1");
        for (int i = 0; i <= s.degree(); ++i) rows.insert(s.face(i));
    }
    inst.rows.assign(rows.begin(), rows.end());
    inst.cols = columns;
    std::map<AffineSimplex, int> rid;
    for (std::size_t i = 0; i < inst.rows.size(); ++i) rid[inst.rows[i]] = (int)i;
    inst.boundary = IntMat(inst.rows.size(), inst.cols.size());
    for (std::size_t c = 0; c < inst.cols.size(); ++c)
        for (int i = 0; i <= inst.cols[c].degree(); ++i)
            inst.boundary.at(rid[inst.cols[c].face(i)], c) += (i % 2 == 0) ? 1 : -1;
    inst.target.assign(inst.rows.size(), Rat(0));
    for (const auto& [s, coeff] : target.entries()) inst.target[rid[s]] = coeff;
    return inst;
}

} // namespace fillvol
