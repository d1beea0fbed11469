#ifndef FILLVOL_FILL_HPP
#define FILLVOL_FILL_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "fillvol/delta.hpp"
#include "fillvol/lp.hpp"
#include "fillvol/matrix.hpp"

namespace fillvol {

// min ||c||_1 (or support size) over chains c with boundary(c) = target.
// Rows of `boundary` index the k-simplices carrying the target, columns the
// (k+1)-simplex candidates.
struct FillProblem {
    IntMat boundary;
    std::vector<Rat> target;
    CoeffMode mode = CoeffMode::Q;
    enum class Objective { L1, Support } objective = Objective::L1;
};

struct IlpBudget {
    std::size_t node_limit = 1'000'000;
};

struct FillSolution {
    enum class Status { Optimal, Infeasible, BudgetExceeded } status;
    Rat value;        // optimum; best incumbent when the budget was exhausted
    Rat lower_bound;  // certified; equals value when Optimal
    std::vector<Rat> witness;  // coefficient per column
    std::vector<Rat> dual;     // LP dual certificate (rational L1 solves)
    std::size_t nodes = 0;
};

// Exact rational LP (coefficient mode Q).
FillSolution fill_lp(const FillProblem& p);
// Exact branch-and-bound ILP (coefficient mode Z).
FillSolution fill_ilp(const FillProblem& p, const IlpBudget& budget = {});

// Exact witness check: boundary * witness = target (and integrality in Z mode).
bool check_fill_witness(const FillProblem& p, const FillSolution& s);

// min ||z + d c||_1 over chains c; witness returns the minimizing cycle
// (length = rows) and the filling coefficients (length = cols) after it.
struct MinCycleSolution {
    FillSolution::Status status;
    Rat value;
    std::vector<Rat> cycle;   // z + d c
    std::vector<Rat> filling; // c
    std::size_t nodes = 0;
};
MinCycleSolution min_cycle_in_class(const std::vector<Rat>& z, const IntMat& d, CoeffMode mode,
                                    const IlpBudget& budget = {});

// Minimal number of simplices carrying any representative z + d c, integral
// coefficients. Uses an indicator ILP with a Cramer/Hadamard-style coefficient
// bound computed from the instance.
struct SupportSolution {
    FillSolution::Status status;
    Int value;
    std::vector<Rat> cycle;
    Int coefficient_bound;  // the a-priori bound used in the big-M rows
    std::size_t nodes = 0;
};
SupportSolution weightless_min_support(const std::vector<Int>& z, const IntMat& d,
                                       const IlpBudget& budget = {});

// Max of fill(b)/||b||_1 over `samples` random boundaries b = d(u) in degree k.
struct UbcReport {
    Rat max_ratio;                 // 0 when no nonzero boundary was sampled
    std::size_t samples_used = 0;  // nonzero boundaries evaluated
    std::vector<Rat> worst_target; // the maximizing boundary (dense over k-cells)
};
UbcReport ubc_probe(const DeltaComplex& x, int k, std::size_t samples, std::uint64_t seed,
                    CoeffMode mode = CoeffMode::Q);

// Convenience adapters on complexes.
FillProblem fill_problem_on_complex(const DeltaComplex& x, const CellChain& target,
                                    CoeffMode mode,
                                    FillProblem::Objective obj = FillProblem::Objective::L1);

} // namespace fillvol

#endif
