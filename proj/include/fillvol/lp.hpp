#ifndef FILLVOL_LP_HPP
#define FILLVOL_LP_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "fillvol/numeric.hpp"

namespace fillvol {

// min c^T x  subject to  A x = b, x >= 0, everything rational and exact.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<Rat> objective;
    struct Row {
        std::vector<std::pair<int, Rat>> coef;
        Rat rhs;
    };
    std::vector<Row> rows;

    int add_var(const Rat& cost) {
        objective.push_back(cost);
        return (int)num_vars++;
    }
    void add_row(std::vector<std::pair<int, Rat>> coef, Rat rhs) {
        rows.push_back({std::move(coef), std::move(rhs)});
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rat value;
    std::vector<Rat> x;     // primal solution (original variables)
    std::vector<Rat> dual;  // y with A^T y <= c and y^T b = value
    std::size_t pivots = 0;
};

// Exact revised simplex, Bland's rule (lowest-index entering variable,
// lowest-index basic variable on ratio ties). Deterministic.
LpResult solve_lp(const LinearProgram& lp);

// Exact verification of primal feasibility, dual feasibility and equality of
// the two objective values.
bool check_lp_certificate(const LinearProgram& lp, const LpResult& r);

// Mixed-integer layer: branch and bound on the exact LP relaxation. The
// integrality requirements are linear forms in the LP variables (we use
// c_plus - c_minus forms for free integer chain coefficients).
struct MilpSpec {
    LinearProgram lp;
    std::vector<std::vector<std::pair<int, Rat>>> integer_forms;
    std::optional<std::vector<Rat>> warm_start;  // integral feasible point
    bool objective_cutoff = true;  // add c x <= incumbent rows (needs c >= 0)
    std::size_t node_limit = 1'000'000;
};

enum class MilpStatus { Optimal, Infeasible, BudgetExceeded };

struct MilpResult {
    MilpStatus status = MilpStatus::Infeasible;
    Rat value;          // incumbent objective
    Rat lower_bound;    // certified bound; equals value when Optimal
    std::vector<Rat> x; // incumbent
    std::size_t nodes = 0;
};

MilpResult solve_milp(const MilpSpec& spec);

} // namespace fillvol

#endif
