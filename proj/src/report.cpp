#include "fillvol/report.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "fillvol/errors.hpp"

namespace fillvol {

namespace {

std::string matrix_descriptor(const Mat2& a) {
    return a.a.str() + "," + a.b.str() + "," + a.c.str() + "," + a.d.str();
}

// Largest u/v <= the certificate threshold at step m among denominators
// v <= max_den. Binary search down the Stern-Brocot tree: any fraction
// strictly between the current bounds has denominator > ld + rd, so stopping
// at the cap is exact. The predicate is monotone in q.
Rat best_certified_at(const Mat2& a, unsigned m, unsigned max_den) {
    auto pass = [&](const Rat& q) { return fv_lower_certificate(a, m, q); };
    Int ln = 0, ld = 1;  // largest passing fraction so far
    Int rn = 1, rd = 0;  // smallest failing bound (starts at infinity)
    Rat best(0);
    while (true) {
        Int mn = ln + rn, md = ld + rd;
        if (md > (long)max_den) break;
        if (pass(Rat(mn, md))) {
            ln = mn;
            ld = md;
            best = Rat(mn, md);
        } else {
            rn = mn;
            rd = md;
        }
    }
    return best;
}

// Candidate columns for the dictionary refinement: the word-chain support
// (keeps the instance feasible) plus every dictionary 3-simplex all of whose
// faces already lie among the active 2-simplices of the instance. The full
// dictionary level is far beyond what the exact simplex can absorb; this
// flip-closure slice is the part that can actually exchange against the word
// chain.
std::vector<AffineSimplex> refine_columns(const Dictionary& dict, const AffineChain& word_chain,
                                          const AffineChain& target) {
    std::set<AffineSimplex> active;
    for (const auto& [s, c] : target.entries()) active.insert(s);
    for (const auto& [s, c] : word_chain.entries())
        for (int i = 0; i <= 3; ++i) active.insert(s.face(i));
    std::set<AffineSimplex> have;
    std::vector<AffineSimplex> cols;
    for (const auto& [s, c] : word_chain.entries())
        if (have.insert(s).second) cols.push_back(s);
    for (const AffineSimplex& s : dict.level(3)) {
        bool inside = true;
        for (int i = 0; i <= 3 && inside; ++i) inside = active.count(s.face(i)) > 0;
        if (inside && have.insert(s).second) cols.push_back(s);
    }
    return cols;
}

} // namespace

std::vector<FvEvidenceRow> fv_upper(const Mat2& a, const FvParams& params) {
    std::vector<FvEvidenceRow> rows;
    std::optional<Dictionary> dict;
    if (params.refine != FvParams::Refine::Word)
        dict.emplace(params.dict_q, params.dict_r, 3, true);
    for (unsigned m = 1; m <= params.m_max; ++m) {
        FvEvidenceRow row;
        row.m = m;
        WordFilling wf = word_filling(a, m);
        row.word_bound = wf.chain.l1_norm();
        row.has_upper = true;
        row.upper_fill_bound = *row.word_bound;
        if (dict && !wf.target.is_zero()) {
            AffineFillInstance inst =
                make_affine_fill(refine_columns(*dict, wf.chain, wf.target), wf.target);
            if (params.refine == FvParams::Refine::Lp) {
                FillProblem p{inst.boundary, inst.target, CoeffMode::Q,
                              FillProblem::Objective::L1};
                FillSolution sol = fill_lp(p);
                row.refined_bound = sol.value;
            } else {
                FillProblem p{inst.boundary, inst.target, CoeffMode::Z,
                              FillProblem::Objective::L1};
                FillSolution sol = fill_ilp(p, {params.node_limit});
                row.refined_bound = sol.value;  // incumbent is feasible, hence valid
                row.refine_budget_hit = sol.status == FillSolution::Status::BudgetExceeded;
            }
            if (*row.refined_bound < row.upper_fill_bound)
                row.upper_fill_bound = *row.refined_bound;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Rat fv_lower(const Mat2& a, const FvParams& params) {
    Rat best = 0;
    for (unsigned m = 1; m <= params.m_max; ++m) {
        if (trace_power(a, m) <= 2) continue;
        Rat q = best_certified_at(a, m, params.max_denominator);
        if (q > best) best = q;
    }
    return best;
}

FvReport fv_report(const Mat2& a, const FvParams& params) {
    if (a.det() != 1) fail(errc::NotSL2, "determinant must be 1");
    FvReport rep;
    rep.descriptor = matrix_descriptor(a);
    rep.mode = params.mode;
    rep.params = params;
    rep.rows = fv_upper(a, params);
    rep.lower = 0;
    for (FvEvidenceRow& row : rep.rows) {
        if (params.mode == CoeffMode::Z && trace_power(a, row.m) > 2) {
            row.lower_tested = true;
            row.lower_cert = best_certified_at(a, row.m, params.max_denominator);
            if (row.lower_cert > rep.lower) rep.lower = row.lower_cert;
        }
        if (row.has_upper) {
            Rat u = row.upper_fill_bound / Rat((long)row.m);
            if (!rep.upper_finite || u < rep.upper) {
                rep.upper_finite = true;
                rep.upper = u;
            }
        }
    }
    // the real-coefficient lower-bound route is out of reach: report 0
    if (params.mode == CoeffMode::Q) rep.lower = 0;
    if (rep.upper_finite && rep.lower > rep.upper)
        fail(errc::BadInput, "certified interval is inconsistent");
    return rep;
}

FvReport fv_report(const DeltaComplex& x, const SimplicialAutomorphism& f,
                   const FvParams& params) {
    FvReport rep;
    rep.descriptor = "automorphism";
    rep.mode = params.mode;
    rep.params = params;
    rep.lower = 0;
    CellChain z = fundamental_cycle(x);
    unsigned m_max = params.m_max;
    unsigned order = automorphism_order(x, f);
    if (order > m_max && order <= 1u << 12) m_max = order;  // reach the vanishing step
    SimplicialAutomorphism power = f;
    for (unsigned m = 1; m <= m_max; ++m) {
        FvEvidenceRow row;
        row.m = m;
        CellChain target = apply_chain(power, z);
        target -= z;
        if (target.is_zero()) {
            row.has_upper = true;
            row.upper_fill_bound = 0;
        }
        // a nonzero target in top degree has no fillings in the fiber complex
        rep.rows.push_back(row);
        if (row.has_upper) {
            Rat u = row.upper_fill_bound / Rat((long)m);
            if (!rep.upper_finite || u < rep.upper) {
                rep.upper_finite = true;
                rep.upper = u;
            }
        }
        if (m < m_max) power = compose(x, f, power);
    }
    return rep;
}

std::optional<std::pair<unsigned, unsigned>> subadditivity_violation(const SubadditiveSeq& s) {
    std::size_t n = s.a.size();
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i; i + j <= n; ++j)
            if (s.a[i + j - 1] > s.a[i - 1] + s.a[j - 1])
                return std::make_pair((unsigned)i, (unsigned)j);
    return std::nullopt;
}

Rat fekete_inf(const SubadditiveSeq& s) {
    if (s.a.empty()) fail(errc::BadInput, "empty sequence");
    if (auto bad = subadditivity_violation(s))
        fail(errc::NotSubadditive, "a(" + std::to_string(bad->first + bad->second) + ") > a(" +
                                       std::to_string(bad->first) + ") + a(" +
                                       std::to_string(bad->second) + ")");
    Rat best = s.a[0];
    for (std::size_t m = 1; m <= s.a.size(); ++m) {
        Rat v = s.a[m - 1] / Rat((long)m);
        if (v < best) best = v;
    }
    return best;
}

LengthProbe length_axiom_probe(const Mat2& a, unsigned k_max, unsigned m_max,
                               unsigned num_conjugates, std::uint64_t seed) {
    if (classify(a).type != MappingClass2T::Type::Anosov)
        fail(errc::BadInput, "probe expects an Anosov class");
    LengthProbe probe;
    FvParams params;
    params.m_max = std::max(1u, m_max);

    Rat upper_one;
    {
        FvReport r = fv_report(a, params);
        upper_one = r.upper;
    }
    for (unsigned k = 1; k <= k_max; ++k) {
        LengthProbe::PowerRow row;
        row.k = k;
        FvReport rk = fv_report(a.pow(k), params);
        row.upper_k = rk.upper;
        row.k_upper_one = Rat((long)k) * upper_one;
        row.upper_ok = row.upper_k <= row.k_upper_one;
        row.tors_ok = true;
        row.cert_ok = true;
        for (unsigned m = 1; m <= m_max; ++m) {
            row.tors_ok = row.tors_ok && tors_order(a.pow(k), m) == tors_order(a, k * m);
            Rat q(2, 19);
            row.cert_ok = row.cert_ok && fv_lower_certificate(a.pow(k), m, Rat((long)k) * q) ==
                                             fv_lower_certificate(a, k * m, q);
        }
        probe.all_pass = probe.all_pass && row.upper_ok && row.tors_ok && row.cert_ok;
        probe.powers.push_back(row);
    }

    std::mt19937_64 rng(seed);
    FvReport base = fv_report(a, params);
    for (unsigned t = 0; t < num_conjugates; ++t) {
        Mat2 c = Mat2::identity();
        unsigned len = 1 + rng() % 8;
        for (unsigned i = 0; i < len; ++i) {
            switch (rng() % 4) {
                case 0: c = c * kShearR; break;
                case 1: c = c * kShearL; break;
                case 2: c = c * kShearR.unimodular_inverse(); break;
                default: c = c * kShearL.unimodular_inverse(); break;
            }
        }
        Mat2 b = c * a * c.unimodular_inverse();
        LengthProbe::ConjugateRow row;
        row.conjugator = c;
        row.tors_equal = true;
        for (unsigned m = 1; m <= m_max; ++m)
            row.tors_equal = row.tors_equal && tors_order(a, m) == tors_order(b, m);
        RlWord wa = rl_word(a), wb = rl_word(b);
        auto expand = [](const RlWord& w) {
            std::string s;
            for (const auto& [l, e] : w.word) s.append(e, l);
            return s;
        };
        std::string sa = expand(wa), sb = expand(wb);
        row.word_cyclic_equal = sa.size() == sb.size() && (sa + sa).find(sb) != std::string::npos;
        FvReport rb = fv_report(b, params);
        row.interval_equal = rb.lower == base.lower && rb.upper == base.upper &&
                             rb.upper_finite == base.upper_finite;
        probe.all_pass = probe.all_pass && row.tors_equal && row.word_cyclic_equal &&
                         row.interval_equal;
        probe.conjugates.push_back(row);
    }
    return probe;
}

} // namespace fillvol
