#include "fillvol/mapping_class.hpp"

#include <algorithm>

#include "fillvol/errors.hpp"
#include "fillvol/matrix.hpp"

namespace fillvol {

MappingClass2T classify(const Mat2& a) {
    if (a.det() != 1) fail(errc::NotSL2, "determinant must be 1");
    MappingClass2T c;
    c.matrix = a;
    c.trace = a.trace();
    if (a == Mat2::identity()) {
        c.type = MappingClass2T::Type::Elliptic;
        c.order = 1;
    } else if (a == Mat2{-1, 0, 0, -1}) {
        c.type = MappingClass2T::Type::Elliptic;
        c.order = 2;
    } else if (c.trace == 0) {
        c.type = MappingClass2T::Type::Elliptic;
        c.order = 4;
    } else if (c.trace == 1) {
        c.type = MappingClass2T::Type::Elliptic;
        c.order = 6;
    } else if (c.trace == -1) {
        c.type = MappingClass2T::Type::Elliptic;
        c.order = 3;
    } else if (c.trace == 2 || c.trace == -2) {
        c.type = MappingClass2T::Type::Parabolic;
    } else {
        c.type = MappingClass2T::Type::Anosov;
    }
    return c;
}

Mat2 RlWord::product() const {
    Mat2 p = Mat2::identity();
    for (const auto& [l, e] : word) {
        Mat2 base = (l == 'R') ? kShearR : kShearL;
        p = p * base.pow(e);
    }
    return p;
}

std::string RlWord::str() const {
    std::string s;
    for (const auto& [l, e] : word) {
        s += l;
        if (e != 1) s += "^" + std::to_string(e);
    }
    if (s.empty()) s = "1";
    if (negated) s = "-" + s;
    return s;
}

namespace {

bool nonneg(const Mat2& m) { return m.a >= 0 && m.b >= 0 && m.c >= 0 && m.d >= 0; }

// Greedy peel of a nonnegative SL2(Z) matrix into a positive RL word.
std::vector<std::pair<char, unsigned long>> peel_positive(Mat2 m) {
    std::vector<std::pair<char, unsigned long>> word;
    auto push = [&word](char l) {
        if (!word.empty() && word.back().first == l)
            ++word.back().second;
        else
            word.push_back({l, 1});
    };
    while (!(m == Mat2::identity())) {
        // a nonnegative non-identity SL2(Z) matrix has comparable rows
        if (m.a >= m.c && m.b >= m.d) {
            m = Mat2{m.a - m.c, m.b - m.d, m.c, m.d};
            push('R');
        } else if (m.c >= m.a && m.d >= m.b) {
            m = Mat2{m.a, m.b, m.c - m.a, m.d - m.b};
            push('L');
        } else {
            fail(errc::BadInput, "matrix is not a positive word");
        }
    }
    return word;
}

// Exact floor of (p + sqrt(dd)) / q for non-square dd > 0, q != 0.
Int quad_floor(const Int& p, const Int& q, const Int& sqrt_floor) {
    if (q > 0) return floor_div(p + sqrt_floor, q);
    return floor_div(-p - sqrt_floor - 1, -q);
}

// extended gcd: g = gcd(a,b), g = xa + yb
Int xgcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return abs_int(a);
    }
    Int x1, y1;
    Int g = xgcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

const Mat2 kRotS{0, -1, 1, 0};  // S = R^{-1} L R^{-1}, S^2 = -I

} // namespace

RlWord rl_word(const Mat2& a) {
    if (a.det() != 1) fail(errc::NotSL2, "determinant must be 1");
    Int t = a.trace();
    if (t > -2 && t < 2) fail(errc::BadInput, "elliptic classes have no RL word");
    RlWord out;
    Mat2 b = a;
    if (t < 0) {
        out.negated = true;
        b = Mat2{-a.a, -a.b, -a.c, -a.d};
        t = -t;
    }

    if (t == 2) {
        if (b == Mat2::identity()) return out;  // word empty, A = -I
        // parabolic: conjugate the fixed primitive vector to e1
        Int p = b.b, q = Int(1) - b.a;
        if (p == 0 && q == 0) {
            p = Int(1) - b.d;
            q = b.c;
        }
        Int g = boost::multiprecision::gcd(abs_int(p), abs_int(q));
        p /= g;
        q /= g;
        Int x, y;
        xgcd(p, q, x, y);  // xp + yq = 1
        Mat2 c{p, -y, q, x};
        Mat2 m = c.unimodular_inverse() * b * c;
        if (!(m.a == 1 && m.c == 0 && m.d == 1))
            fail(errc::BadInput, "parabolic reduction failed");
        if (m.b > 0) {
            out.conjugator = c;
            out.word = {{'R', (unsigned long)m.b}};
        } else {
            out.conjugator = c * kRotS;
            out.word = {{'L', (unsigned long)Int(-m.b)}};
        }
    } else {
        // hyperbolic: expand the attracting fixed point (a-d+sqrt(D))/(2c)
        if (b.c == 0) fail(errc::BadInput, "degenerate hyperbolic matrix");
        Int dd = t * t - 4;
        Int sf = boost::multiprecision::sqrt(dd);  // floor sqrt, dd not a square
        Int p = b.a - b.d, q = 2 * b.c;
        Mat2 m = b, conj = Mat2::identity();
        int guard = 0;
        while (!nonneg(m)) {
            if (++guard > 20000) fail(errc::BadInput, "RL reduction did not converge");
            Int k = quad_floor(p, q, sf);
            if (k != 0) {
                Mat2 rk = (k > 0) ? kShearR.pow((unsigned long)k)
                                  : Mat2{1, k, 0, 1};
                conj = conj * rk;
                m = rk.unimodular_inverse() * m * rk;
                p -= k * q;
            } else {
                // 0 < xi < 1: descend into the left Farey branch
                conj = conj * kShearL;
                m = kShearL.unimodular_inverse() * m * kShearL;
                Int p2 = (p * (q - p) + dd) / q;
                Int q2 = ((q - p) * (q - p) - dd) / q;
                p = p2;
                q = q2;
            }
        }
        out.conjugator = conj;
        out.word = peel_positive(m);
    }

    // exact verification of the factorization
    Mat2 prod = out.product();
    if (out.negated) prod = Mat2{-prod.a, -prod.b, -prod.c, -prod.d};
    if (!(out.conjugator * prod * out.conjugator.unimodular_inverse() == a))
        fail(errc::BadInput, "RL factorization verification failed");
    return out;
}

std::vector<std::pair<char, long long>> general_word(const Mat2& a) {
    if (a.det() != 1) fail(errc::NotSL2, "determinant must be 1");
    std::vector<std::pair<char, long long>> word;
    auto push = [&word](char l, const Int& e) {
        if (e == 0) return;
        long long ev = (long long)e;
        if (!word.empty() && word.back().first == l)
            word.back().second += ev;
        else
            word.push_back({l, ev});
    };
    Mat2 m = a;
    // Euclid on the first column: A = (peeled letters) * m
    while (m.c != 0) {
        if (m.a != 0 && abs_int(m.a) >= abs_int(m.c)) {
            Int qq = m.a / m.c;  // truncated, so |a - q c| < |c|
            push('R', qq);
            m = Mat2{m.a - qq * m.c, m.b - qq * m.d, m.c, m.d};
        } else if (m.a != 0) {
            Int qq = m.c / m.a;
            push('L', qq);
            m = Mat2{m.a, m.b, m.c - qq * m.a, m.d - qq * m.b};
        } else {
            // a = 0 forces c = +-1; peel S = R^{-1} L R^{-1} (or its inverse)
            if (m.c == 1) {
                push('R', -1);
                push('L', 1);
                push('R', -1);
                m = kRotS.unimodular_inverse() * m;
            } else {
                push('R', 1);
                push('L', -1);
                push('R', 1);
                m = kRotS * m;
            }
        }
    }
    if (m.a == 1) {
        push('R', m.b);
    } else {
        // m = [[-1, b], [0, -1]] = (-I) R^{-b}; -I = (R^{-1} L R^{-1})^2
        push('R', -1);
        push('L', 1);
        push('R', -2);
        push('L', 1);
        push('R', -1);
        push('R', -m.b);
    }
    // verify
    Mat2 prod = Mat2::identity();
    for (const auto& [l, e] : word) {
        Mat2 base = (l == 'R') ? kShearR : kShearL;
        Mat2 pw = (e >= 0) ? base.pow((unsigned long)e)
                           : base.unimodular_inverse().pow((unsigned long)(-e));
        prod = prod * pw;
    }
    if (!(prod == a)) fail(errc::BadInput, "word factorization verification failed");
    return word;
}

// ---- flips ------------------------------------------------------------------

namespace {

Vec2Q to_q(const std::array<Int, 2>& v) { return {Rat(v[0]), Rat(v[1])}; }

std::array<Int, 2> add(const std::array<Int, 2>& u, const std::array<Int, 2>& v) {
    return {u[0] + v[0], u[1] + v[1]};
}
std::array<Int, 2> sub(const std::array<Int, 2>& u, const std::array<Int, 2>& v) {
    return {u[0] - v[0], u[1] - v[1]};
}

Int frame_det(const FlipState& s) { return s.e1[0] * s.e2[1] - s.e1[1] * s.e2[0]; }

AffineChain state_cycle(const std::array<Int, 2>& u, const std::array<Int, 2>& v) {
    AffineChain z(2, CoeffMode::Z);
    Vec2Q uu = to_q(u), vv = to_q(v), ww = to_q(add(u, v));
    z.add(AffineSimplex({Rat(0), Rat(0)}, {uu, ww}), 1);
    z.add(AffineSimplex({Rat(0), Rat(0)}, {vv, ww}), -1);
    return z;
}

// single tetrahedron +-(0; p1, p2, p3)
AffineChain tet(int sign, const std::array<Int, 2>& p1, const std::array<Int, 2>& p2,
                const std::array<Int, 2>& p3) {
    AffineChain t(3, CoeffMode::Z);
    t.add(AffineSimplex({Rat(0), Rat(0)}, {to_q(p1), to_q(p2), to_q(p3)}), sign);
    return t;
}

} // namespace

AffineChain FlipState::cycle() const { return state_cycle(e1, e2); }

FlipResult flip_tetrahedron(const FlipState& s, int which) {
    if (frame_det(s) != 1) fail(errc::InadmissibleFlip, "state frame must have det 1");
    FlipResult r;
    const auto &a = s.e1, &b = s.e2;
    switch (which) {
        case 0:  // e1 -> e1 + 2 e2; new state (e1+e2, e2)
            r.next = {add(a, b), b};
            r.tetra = tet(-1, b, add(a, b), add(a, add(b, b)));
            break;
        case 1:  // e2 -> 2 e1 + e2; new state (e1, e1+e2)
            r.next = {a, add(a, b)};
            r.tetra = tet(+1, a, add(a, b), add(add(a, a), b));
            break;
        case 2:  // diagonal e1+e2 -> e2 - e1; new state (e1, e2-e1)
            r.next = {a, sub(b, a)};
            r.tetra = tet(-1, a, b, add(a, b));
            break;
        default: fail(errc::InadmissibleFlip, "edge index must be 0, 1 or 2");
    }
    return r;
}

AffineChain frame_cycle(const Mat2& f) {
    return state_cycle({f.a, f.c}, {f.b, f.d});
}

// ---- word fillings ----------------------------------------------------------

namespace {

// one flip move along the path; updates the frame
void append_move(AffineChain& chain, Mat2& frame, char letter, int dir) {
    Mat2 next = frame * ((letter == 'R') ? (dir > 0 ? kShearR : kShearR.unimodular_inverse())
                                         : (dir > 0 ? kShearL : kShearL.unimodular_inverse()));
    const Mat2& g = (dir > 0) ? frame : next;  // tetra lives at the lower frame
    std::array<Int, 2> u{g.a, g.c}, v{g.b, g.d};
    AffineChain t = (letter == 'R') ? tet(+1, u, add(u, v), add(add(u, u), v))
                                    : tet(-1, v, add(u, v), add(u, add(v, v)));
    if (dir < 0) t = t.scaled(Rat(-1));
    chain += t;
    frame = next;
}

} // namespace

WordFilling word_filling(const Mat2& a, unsigned m) {
    MappingClass2T cls = classify(a);
    WordFilling out;
    out.chain = AffineChain(3, CoeffMode::Z);
    Mat2 power = a.pow(m);

    if (power == Mat2::identity()) {
        out.base_cycle = grid_cycle(1);
        out.target = AffineChain(2, CoeffMode::Z);
        out.bound = 0;
        return out;
    }

    Mat2 frame = Mat2::identity();
    Int letters = 0;
    if (cls.trace > 2) {
        RlWord w = rl_word(a);
        frame = w.conjugator;
        out.base_cycle = frame_cycle(frame);
        for (unsigned rep = 0; rep < m; ++rep)
            for (const auto& [l, e] : w.word)
                for (unsigned long i = 0; i < e; ++i) {
                    append_move(out.chain, frame, l, +1);
                    ++letters;
                }
    } else {
        out.base_cycle = frame_cycle(frame);
        for (const auto& [l, e] : general_word(power)) {
            int dir = e >= 0 ? 1 : -1;
            for (long long i = 0; i < (e >= 0 ? e : -e); ++i) {
                append_move(out.chain, frame, l, dir);
                letters += 1;
            }
        }
    }
    out.bound = letters;
    out.target = apply_linear(power, out.base_cycle);
    out.target -= out.base_cycle;
    if (!(affine_boundary(out.chain) == out.target))
        fail(errc::BadInput, "word filling boundary identity failed");
    return out;
}

Int trace_power(const Mat2& a, unsigned m) {
    if (a.det() != 1) fail(errc::NotSL2, "determinant must be 1");
    Int t = a.trace();
    Int prev = 2, cur = t;
    if (m == 0) return prev;
    for (unsigned i = 1; i < m; ++i) {
        Int next = t * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Int tors_order(const Mat2& a, unsigned m) {
    Int tm = trace_power(a, m);
    if (tm <= 2) fail(errc::TraceTooSmall, "tr(A^m) must exceed 2");
    Int value = tm - 2;
    Mat2 p = a.pow(m);
    IntMat d(2, 2);
    d.at(0, 0) = p.a - 1;
    d.at(0, 1) = p.b;
    d.at(1, 0) = p.c;
    d.at(1, 1) = p.d - 1;
    if (abs_int(det(d)) != value) fail(errc::BadInput, "torsion cross-check failed");
    return value;
}

bool fv_lower_certificate(const Mat2& a, unsigned m, const Rat& q) {
    if (q < 0) fail(errc::BadInput, "certificate level must be nonnegative");
    if (q == 0) return true;  // FV_Z >= 0 always
    Int tm = trace_power(a, m);
    if (tm <= 2) fail(errc::TraceTooSmall, "tr(A^m) must exceed 2");
    Int base = tm - 2;
    if (base == 1) return false;
    Int u = rat_num(q), v = rat_den(q);
    Int exponent = 12 * Int(m) * u;
    // quick bit-length bracket before the exact power comparison:
    // 2^bits <= base < 2^(bits+1), the upper bound strict
    unsigned long bits = (unsigned long)boost::multiprecision::msb(base);
    if (Int(bits) * v >= exponent) return true;
    if (Int(bits + 1) * v <= exponent) return false;
    return int_pow(base, (unsigned long)v) >= int_pow(Int(2), (unsigned long)exponent);
}

} // namespace fillvol
