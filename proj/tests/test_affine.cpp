#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fillvol/affine.hpp"
#include "fillvol/errors.hpp"

using namespace fillvol;

namespace {

Vec2Q v2(long a, long b, long den = 1) { return {Rat(a, den), Rat(b, den)}; }

AffineSimplex random_simplex(std::mt19937_64& rng, int degree) {
    auto rat = [&rng]() {
        long num = (long)(rng() % 9) - 4;
        long den = 1 + (long)(rng() % 3);
        return Rat(num, den);
    };
    Vec2Q base{rat(), rat()};
    std::vector<Vec2Q> disp(degree);
    for (auto& w : disp) w = {rat(), rat()};
    return AffineSimplex(base, std::move(disp));
}

AffineChain random_chain(std::mt19937_64& rng, int degree, int terms) {
    AffineChain c(degree, CoeffMode::Q);
    for (int i = 0; i < terms; ++i) {
        long num = (long)(rng() % 7) - 3;
        if (num == 0) continue;
        c.add(random_simplex(rng, degree), Rat(num, 1 + (long)(rng() % 2)));
    }
    return c;
}

} // namespace

TEST_CASE("boundary of a 2-simplex follows the alternating face formula") {
    // (p; w1, w2) -> (p+w1; w2-w1) - (p; w2) + (p; w1)
    Vec2Q p = v2(1, 1, 3), w1 = v2(1, 0, 2), w2 = v2(1, 1, 2);
    AffineChain c(2, CoeffMode::Z);
    c.add(AffineSimplex(p, {w1, w2}), 1);
    AffineChain b = affine_boundary(c);
    AffineChain want(1, CoeffMode::Z);
    want.add(AffineSimplex(p + w1, {w2 - w1}), 1);
    want.add(AffineSimplex(p, {w2}), -1);
    want.add(AffineSimplex(p, {w1}), 1);
    CHECK(b == want);
}

TEST_CASE("boundary of boundary vanishes on random chains") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        AffineChain c = random_chain(rng, 3, 4);
        CHECK(affine_boundary(affine_boundary(c)).is_zero());
        AffineChain c2 = random_chain(rng, 2, 5);
        CHECK(affine_boundary(affine_boundary(c2)).is_zero());
    }
}

TEST_CASE("canonicalization reduces the basepoint and is idempotent") {
    AffineSimplex s(v2(7, -3, 2), {v2(1, 0), v2(2, 1)});
    CHECK(s.base().x == Rat(1, 2));
    CHECK(s.base().y == Rat(1, 2));
    AffineSimplex t(s.base(), s.disp());
    CHECK(s == t);
    // equality is exactly equality of canonical forms
    AffineSimplex u(v2(1, 1, 2), {v2(1, 0), v2(2, 1)});
    CHECK(s == u);
}

TEST_CASE("grid cycles") {
    AffineChain z1 = grid_cycle(1);
    CHECK(z1.l1_norm() == 2);
    CHECK(affine_boundary(z1).is_zero());
    AffineChain z2 = grid_cycle(2);
    CHECK(z2.l1_norm() == 8);
    CHECK(affine_boundary(z2).is_zero());
    CHECK(grid_cycle(3).l1_norm() == 18);
    CHECK(apply_linear(Mat2::identity(), z2) == z2);
}

TEST_CASE("linear action: functorial, boundary-compatible, norm-preserving") {
    std::mt19937_64 rng(9);
    Mat2 a{2, 1, 1, 1}, b{1, 1, 1, 2}, s{0, -1, 1, 0};
    for (int trial = 0; trial < 30; ++trial) {
        AffineChain c = random_chain(rng, 2, 4);
        CHECK(apply_linear(a, apply_linear(b, c)) == apply_linear(a * b, c));
        CHECK(apply_linear(s, affine_boundary(c)) == affine_boundary(apply_linear(s, c)));
        CHECK(apply_linear(a, c).l1_norm() == c.l1_norm());
        CHECK(apply_linear(Mat2::identity(), c) == c);
    }
    CHECK_THROWS_AS(apply_linear(Mat2{2, 0, 0, 2}, grid_cycle(1)), fillvol::error);

    // A = [[2,1],[1,1]] sends the unit grid cycle to a different norm-2 cycle
    AffineChain image = apply_linear(a, grid_cycle(1));
    CHECK(affine_boundary(image).is_zero());
    CHECK(image.l1_norm() == 2);
    CHECK(!(image == grid_cycle(1)));
}

TEST_CASE("dictionary enumeration and closure") {
    Dictionary dict(1, 1, 1, true);
    // oracle: brute-force count of degree-1 simplices with basepoint 0 and
    // displacement entries in {-1, 0, 1}
    std::size_t count = 0;
    for (long a = -1; a <= 1; ++a)
        for (long b = -1; b <= 1; ++b) ++count;
    CHECK(dict.level(1).size() == count);  // 9, degenerate included
    Dictionary nodeg(1, 1, 1, false);
    CHECK(nodeg.level(1).size() == count - 1);

    // closed under faces
    Dictionary d2(1, 1, 2, true);
    for (const AffineSimplex& s : d2.level(2))
        for (int i = 0; i <= 2; ++i) CHECK(d2.contains(1, s.face(i)));
    // boundary matrix composes to zero
    IntMat b2 = d2.boundary_matrix(2), b1 = d2.boundary_matrix(1);
    IntMat z = mat_mul(b1, b2);
    for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t j = 0; j < z.cols(); ++j) REQUIRE(z.at(i, j) == 0);

    // the grid cycle is supported in the degree-2 dictionary
    for (unsigned q : {1u, 2u}) {
        Dictionary dq(q, 1, 2, true);
        AffineChain zq = grid_cycle(q);
        for (const auto& [s, c] : zq.entries()) CHECK(dq.contains(2, s));
    }
    CHECK_THROWS_AS(Dictionary(3, 3, 3, true, 1000), fillvol::error);  // size cap
}

TEST_CASE("affine fill instances cover the faces of their columns") {
    AffineChain tri(2, CoeffMode::Z);
    tri.add(AffineSimplex(v2(0, 0), {v2(1, 0), v2(1, 1)}), 1);
    AffineChain b = affine_boundary(tri);
    std::vector<AffineSimplex> cols;
    for (const auto& [s, c] : tri.entries()) cols.push_back(s);
    AffineFillInstance inst = make_affine_fill(cols, b);
    CHECK(inst.cols.size() == 1);
    CHECK(inst.rows.size() >= 3);
    // the instance reproduces the boundary exactly: d * e_0 = target
    for (std::size_t i = 0; i < inst.rows.size(); ++i)
        CHECK(Rat(inst.boundary.at(i, 0)) == inst.target[i]);
}
