#include "fillvol/smith.hpp"

#include <algorithm>
#include <stdexcept>

#include "fillvol/errors.hpp"

namespace fillvol {

namespace {

// Smallest nonzero |entry| in the k..end block; pivoting on it keeps the
// intermediate coefficients from exploding on the inputs we care about.
bool find_pivot(const IntMat& a, std::size_t k, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = k; i < a.rows(); ++i)
        for (std::size_t j = k; j < a.cols(); ++j) {
            const Int& v = a.at(i, j);
            if (v == 0) continue;
            Int av = abs_int(v);
            if (!found || av < best) {
                best = av;
                pi = i;
                pj = j;
                found = true;
            }
        }
    return found;
}

} // namespace

SmithDecomposition snf(const IntMat& m) {
    SmithDecomposition s;
    IntMat a = m;
    s.U = IntMat::identity(m.rows());
    s.V = IntMat::identity(m.cols());
    std::size_t n = std::min(m.rows(), m.cols());

    for (std::size_t k = 0; k < n; ++k) {
        bool block_empty = false;
        while (true) {
            std::size_t pi = k, pj = k;
            if (!find_pivot(a, k, pi, pj)) {
                block_empty = true;
                break;
            }
            a.swap_rows(k, pi);
            s.U.swap_rows(k, pi);
            a.swap_cols(k, pj);
            s.V.swap_cols(k, pj);

            // One reduction sweep. Any nonzero remainder is strictly smaller
            // than the pivot, so re-picking the pivot makes progress.
            bool changed = false;
            for (std::size_t i = k + 1; i < a.rows(); ++i) {
                if (a.at(i, k) == 0) continue;
                Int q = floor_div(a.at(i, k), a.at(k, k));
                a.add_row(i, k, -q);
                s.U.add_row(i, k, -q);
                if (a.at(i, k) != 0) changed = true;
            }
            for (std::size_t j = k + 1; j < a.cols(); ++j) {
                if (a.at(k, j) == 0) continue;
                Int q = floor_div(a.at(k, j), a.at(k, k));
                a.add_col(j, k, -q);
                s.V.add_col(j, k, -q);
                if (a.at(k, j) != 0) changed = true;
            }
            if (changed) continue;

            // Row and column k are clear; enforce divisibility of the block.
            bool folded = false;
            for (std::size_t i = k + 1; i < a.rows() && !folded; ++i)
                for (std::size_t j = k + 1; j < a.cols() && !folded; ++j)
                    if (a.at(i, j) % a.at(k, k) != 0) {
                        a.add_row(k, i, 1);
                        s.U.add_row(k, i, 1);
                        folded = true;
                    }
            if (!folded) break;
        }
        if (block_empty) break;
        if (a.at(k, k) < 0) {
            a.scale_row(k, Int(-1));
            s.U.scale_row(k, Int(-1));
        }
    }

    s.diag.resize(n);
    for (std::size_t k = 0; k < n; ++k) s.diag[k] = a.at(k, k);
    return s;
}

bool verify_snf(const IntMat& m, const SmithDecomposition& s) {
    IntMat d = mat_mul(mat_mul(s.U, m), s.V);
    std::size_t n = std::min(m.rows(), m.cols());
    if (s.diag.size() != n) return false;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) {
            Int want = (i == j && i < n) ? s.diag[i] : Int(0);
            if (d.at(i, j) != want) return false;
        }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (s.diag[i] < 0) return false;
        if (s.diag[i] == 0 && s.diag[i + 1] != 0) return false;
        if (s.diag[i] != 0 && s.diag[i + 1] % s.diag[i] != 0) return false;
    }
    Int du = det(s.U), dv = det(s.V);
    return (du == 1 || du == -1) && (dv == 1 || dv == -1);
}

std::string HomologyGroup::str() const {
    std::string out;
    if (betti == 1)
        out = "Z";
    else if (betti > 1)
        out = "Z^" + std::to_string(betti);
    for (const Int& t : torsion) {
        if (!out.empty()) out += " + ";
        out += "Z/" + t.str();
    }
    if (out.empty()) out = "0";
    return out;
}

HomologyGroup homology_from_boundaries(int degree, std::size_t dim_k, const IntMat& d_k,
                                       const IntMat& d_k1) {
    if (d_k.cols() != dim_k || (d_k1.rows() != dim_k && d_k1.cols() != 0))
        throw std::invalid_argument("homology: boundary shape mismatch");
    SmithDecomposition sk = snf(d_k);
    SmithDecomposition sk1 = snf(d_k1);
    std::size_t rank_k = sk.rank();
    std::size_t rank_k1 = sk1.rank();
    HomologyGroup h;
    h.degree = degree;
    h.betti = dim_k - rank_k - rank_k1;
    h.torsion = sk1.invariant_factors();
    return h;
}

HomologyGroup torus_bundle_h1(const IntMat& a, unsigned m) {
    if (a.rows() != 2 || a.cols() != 2) fail(errc::NotSL2, "expected a 2x2 matrix");
    if (det(a) != 1) fail(errc::NotSL2, "determinant must be 1");
    if (m == 0) fail(errc::BadInput, "m must be positive");
    IntMat p = IntMat::identity(2);
    for (unsigned i = 0; i < m; ++i) p = mat_mul(p, a);
    IntMat t = mat_sub(p, IntMat::identity(2));
    SmithDecomposition s = snf(t);
    HomologyGroup h;
    h.degree = 1;
    h.betti = 1;  // the circle direction of the bundle
    for (const Int& d : s.diag) {
        if (d == 0)
            ++h.betti;
        else if (d > 1)
            h.torsion.push_back(d);
    }
    return h;
}

std::optional<IntegerSolution> solve_integer(const IntMat& m, const std::vector<Int>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve_integer: shape mismatch");
    SmithDecomposition s = snf(m);
    std::vector<Int> ub = mat_apply(s.U, b);
    std::size_t n = std::min(m.rows(), m.cols());
    std::vector<Int> y(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int d = (i < n) ? s.diag[i] : Int(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            if (i < m.cols()) y[i] = ub[i] / d;
        }
    }
    IntegerSolution sol;
    sol.particular = mat_apply(s.V, y);
    for (std::size_t j = s.rank(); j < m.cols(); ++j) {
        std::vector<Int> col(m.cols());
        for (std::size_t i = 0; i < m.cols(); ++i) col[i] = s.V.at(i, j);
        sol.kernel_basis.push_back(std::move(col));
    }
    return sol;
}

} // namespace fillvol
