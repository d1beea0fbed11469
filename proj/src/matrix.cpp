#include "fillvol/matrix.hpp"

#include <stdexcept>

namespace fillvol {

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::transposed() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

void IntMat::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMat::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMat::scale_row(std::size_t i, const Int& s) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) *= s;
}

void IntMat::scale_col(std::size_t j, const Int& s) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, j) *= s;
}

void IntMat::add_row(std::size_t i, std::size_t k, const Int& s) {
    if (s == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) at(i, c) += s * at(k, c);
}

void IntMat::add_col(std::size_t j, std::size_t k, const Int& s) {
    if (s == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) at(r, j) += s * at(r, k);
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
    IntMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Int& bkj = b.at(k, j);
                if (bkj != 0) c.at(i, j) += aik * bkj;
            }
        }
    return c;
}

IntMat mat_sub(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("mat_sub: shape mismatch");
    IntMat c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
    return c;
}

std::vector<Int> mat_apply(const IntMat& a, const std::vector<Int>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("mat_apply: shape mismatch");
    std::vector<Int> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0 && x[j] != 0) y[i] += a.at(i, j) * x[j];
    return y;
}

Int det(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMat a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = t / prev;  // exact division, Bareiss invariant
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    Int d = a.at(n - 1, n - 1);
    return sign > 0 ? d : Int(-d);
}

namespace {

// Reduced row echelon data over Q for [m | b?]; used by rank and solve.
struct Echelon {
    std::vector<std::vector<Rat>> rows;
    std::vector<std::size_t> pivot_col;
};

Echelon eliminate(const IntMat& m, const std::vector<Int>* b) {
    std::size_t nr = m.rows(), nc = m.cols() + (b ? 1 : 0);
    std::vector<std::vector<Rat>> a(nr, std::vector<Rat>(nc));
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = Rat(m.at(i, j));
        if (b) a[i][m.cols()] = Rat((*b)[i]);
    }
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < nr; ++c) {
        std::size_t p = r;
        while (p < nr && a[p][c] == 0) ++p;
        if (p == nr) continue;
        std::swap(a[r], a[p]);
        Rat inv = a[r][c];
        for (std::size_t j = c; j < nc; ++j) a[r][j] /= inv;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = c; j < nc; ++j) a[i][j] -= f * a[r][j];
        }
        e.pivot_col.push_back(c);
        ++r;
    }
    e.rows = std::move(a);
    return e;
}

} // namespace

std::size_t rational_rank(const IntMat& m) {
    return eliminate(m, nullptr).pivot_col.size();
}

std::optional<std::vector<Rat>> solve_rational(const IntMat& m, const std::vector<Int>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve_rational: shape mismatch");
    Echelon e = eliminate(m, &b);
    std::size_t rank = e.pivot_col.size();
    for (std::size_t i = rank; i < m.rows(); ++i)
        if (e.rows[i][m.cols()] != 0) return std::nullopt;
    std::vector<Rat> x(m.cols());
    for (std::size_t i = 0; i < rank; ++i) x[e.pivot_col[i]] = e.rows[i][m.cols()];
    return x;
}

} // namespace fillvol
