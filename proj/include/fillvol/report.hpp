#ifndef FILLVOL_REPORT_HPP
#define FILLVOL_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fillvol/delta.hpp"
#include "fillvol/fill.hpp"
#include "fillvol/mapping_class.hpp"

namespace fillvol {

struct FvParams {
    CoeffMode mode = CoeffMode::Z;
    unsigned m_max = 10;
    enum class Refine { Word, Ilp, Lp } refine = Refine::Word;
    unsigned dict_q = 1;
    unsigned dict_r = 1;
    std::size_t node_limit = 200'000;
    unsigned max_denominator = 1000;  // grid for certified lower bounds
};

struct FvEvidenceRow {
    unsigned m = 0;
    bool has_upper = false;
    Rat upper_fill_bound;                 // valid upper bound on fill(m)
    std::optional<Rat> word_bound;        // the explicit word-chain norm
    std::optional<Rat> refined_bound;     // dictionary LP/ILP value, if run
    bool refine_budget_hit = false;
    bool lower_tested = false;            // trace condition tr(A^m) > 2 held
    Rat lower_cert;                       // largest certified q at this m
};

struct FvReport {
    std::string descriptor;
    CoeffMode mode = CoeffMode::Z;
    FvParams params;
    std::vector<FvEvidenceRow> rows;
    Rat lower;               // max certified lower bound (0 when none)
    bool upper_finite = false;
    Rat upper;               // min over rows of upper_fill_bound / m
};

// Per-m upper bounds on fill(m) by explicit word fillings, optionally refined
// over a dictionary instance that contains the word chain's support.
std::vector<FvEvidenceRow> fv_upper(const Mat2& a, const FvParams& params);

// Largest certified lower bound over m <= params.m_max, denominator-capped
// Stern-Brocot search of the certificate threshold. Zero when no m qualifies.
Rat fv_lower(const Mat2& a, const FvParams& params);

FvReport fv_report(const Mat2& a, const FvParams& params);

// Mapping classes presented by a simplicial automorphism: upper evidence from
// the vanishing target at multiples of the order; the torsion route does not
// apply, so the lower bound is 0.
FvReport fv_report(const DeltaComplex& x, const SimplicialAutomorphism& f,
                   const FvParams& params);

// Fekete: for a subadditive prefix a_1..a_M, min a_m / m upper-bounds the
// limit. Throws NotSubadditive naming the violating pair.
struct SubadditiveSeq {
    std::vector<Rat> a;  // a[i] is a_{i+1}
};
std::optional<std::pair<unsigned, unsigned>> subadditivity_violation(const SubadditiveSeq& s);
Rat fekete_inf(const SubadditiveSeq& s);

struct LengthProbe {
    struct PowerRow {
        unsigned k;
        Rat upper_k;      // upper bound for A^k
        Rat k_upper_one;  // k * upper bound for A
        bool upper_ok;    // upper_k <= k_upper_one
        bool tors_ok;     // tors(A^k, m) = tors(A, km) for m <= m_max
        bool cert_ok;     // certificates transport across the power identity
    };
    struct ConjugateRow {
        Mat2 conjugator;
        bool tors_equal;
        bool word_cyclic_equal;
        bool interval_equal;
    };
    std::vector<PowerRow> powers;
    std::vector<ConjugateRow> conjugates;
    bool all_pass = true;
};

LengthProbe length_axiom_probe(const Mat2& a, unsigned k_max, unsigned m_max,
                               unsigned num_conjugates = 5, std::uint64_t seed = 1);

} // namespace fillvol

#endif
