#include "fillvol/fill.hpp"

#include <algorithm>
#include <random>

#include "fillvol/errors.hpp"
#include "fillvol/smith.hpp"

namespace fillvol {

namespace {

// b in the rational column span of m? Exact, via elimination on the scaled
// integer system.
bool rationally_feasible(const IntMat& m, const std::vector<Rat>& b) {
    Int den = 1;
    for (const Rat& v : b) den = boost::multiprecision::lcm(den, rat_den(v));
    std::vector<Int> bi(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) bi[i] = rat_num(b[i]) * (den / rat_den(b[i]));
    return solve_rational(m, bi).has_value();
}

std::optional<std::vector<Int>> integrally_feasible(const IntMat& m, const std::vector<Rat>& b) {
    std::vector<Int> bi(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (rat_den(b[i]) != 1) fail(errc::BadInput, "Z-mode target must be integral");
        bi[i] = rat_num(b[i]);
    }
    auto sol = solve_integer(m, bi);
    if (!sol) return std::nullopt;
    return sol->particular;
}

// split-variable LP: columns c+ / c- with unit costs, rows d c+ - d c- = b
LinearProgram build_fill_lp(const IntMat& d, const std::vector<Rat>& b) {
    LinearProgram lp;
    std::size_t n = d.cols();
    for (std::size_t j = 0; j < 2 * n; ++j) lp.add_var(Rat(1));
    for (std::size_t i = 0; i < d.rows(); ++i) {
        std::vector<std::pair<int, Rat>> coef;
        for (std::size_t j = 0; j < n; ++j)
            if (d.at(i, j) != 0) {
                coef.push_back({(int)j, Rat(d.at(i, j))});
                coef.push_back({(int)(n + j), Rat(-d.at(i, j))});
            }
        lp.add_row(std::move(coef), b[i]);
    }
    return lp;
}

std::vector<Rat> merge_split(const std::vector<Rat>& x, std::size_t n) {
    std::vector<Rat> c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = x[j] - x[n + j];
    return c;
}

// Cramer/Hadamard-style bound: a consistent integer system M c = w with
// |entries| <= e admits an integer solution with |c_j| <= (n+1)*((r+1)*e)^r,
// r = min(rows, cols). Generous on purpose; only finiteness matters.
Int coefficient_bound(const IntMat& m, const Int& rhs_max) {
    Int e = rhs_max > 1 ? rhs_max : 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (abs_int(m.at(i, j)) > e) e = abs_int(m.at(i, j));
    unsigned long r = (unsigned long)std::min(m.rows(), m.cols());
    return Int(m.cols() + 1) * int_pow(Int(r + 1) * e, r);
}

} // namespace

FillSolution fill_lp(const FillProblem& p) {
    if (p.mode != CoeffMode::Q) fail(errc::BadInput, "fill_lp expects coefficient mode Q");
    if (p.target.size() != p.boundary.rows()) fail(errc::BadInput, "target/row size mismatch");
    FillSolution out;
    if (!rationally_feasible(p.boundary, p.target)) {
        out.status = FillSolution::Status::Infeasible;
        return out;
    }
    LinearProgram lp = build_fill_lp(p.boundary, p.target);
    LpResult r = solve_lp(lp);
    if (r.status != LpStatus::Optimal)
        fail(errc::BadInput, "fill LP must be feasible and bounded here");
    out.status = FillSolution::Status::Optimal;
    out.value = r.value;
    out.lower_bound = r.value;
    out.witness = merge_split(r.x, p.boundary.cols());
    out.dual = r.dual;
    return out;
}

FillSolution fill_ilp(const FillProblem& p, const IlpBudget& budget) {
    if (p.mode != CoeffMode::Z) fail(errc::BadInput, "fill_ilp expects coefficient mode Z");
    if (p.target.size() != p.boundary.rows()) fail(errc::BadInput, "target/row size mismatch");
    FillSolution out;
    auto particular = integrally_feasible(p.boundary, p.target);
    if (!particular) {
        out.status = FillSolution::Status::Infeasible;
        return out;
    }
    std::size_t n = p.boundary.cols();
    MilpSpec spec;
    spec.lp = build_fill_lp(p.boundary, p.target);
    spec.node_limit = budget.node_limit;
    for (std::size_t j = 0; j < n; ++j)
        spec.integer_forms.push_back({{(int)j, Rat(1)}, {(int)(n + j), Rat(-1)}});
    std::vector<Rat> warm(2 * n, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
        const Int& v = (*particular)[j];
        if (v > 0) warm[j] = Rat(v);
        if (v < 0) warm[n + j] = Rat(-v);
    }
    spec.warm_start = warm;
    MilpResult r = solve_milp(spec);
    out.nodes = r.nodes;
    switch (r.status) {
        case MilpStatus::Optimal: out.status = FillSolution::Status::Optimal; break;
        case MilpStatus::Infeasible: out.status = FillSolution::Status::Infeasible; return out;
        case MilpStatus::BudgetExceeded: out.status = FillSolution::Status::BudgetExceeded; break;
    }
    out.value = r.value;
    out.lower_bound = r.lower_bound;
    out.witness = merge_split(r.x, n);
    return out;
}

bool check_fill_witness(const FillProblem& p, const FillSolution& s) {
    if (s.status == FillSolution::Status::Infeasible) return true;
    if (s.witness.size() != p.boundary.cols()) return false;
    Rat norm = 0;
    for (const Rat& v : s.witness) {
        if (p.mode == CoeffMode::Z && rat_den(v) != 1) return false;
        norm += abs_rat(v);
    }
    if (p.objective == FillProblem::Objective::L1 && norm != s.value) return false;
    for (std::size_t i = 0; i < p.boundary.rows(); ++i) {
        Rat ax = 0;
        for (std::size_t j = 0; j < p.boundary.cols(); ++j)
            if (p.boundary.at(i, j) != 0) ax += Rat(p.boundary.at(i, j)) * s.witness[j];
        if (ax != p.target[i]) return false;
    }
    return true;
}

MinCycleSolution min_cycle_in_class(const std::vector<Rat>& z, const IntMat& d, CoeffMode mode,
                                    const IlpBudget& budget) {
    std::size_t rows = d.rows(), n = d.cols();
    if (z.size() != rows) fail(errc::BadInput, "cycle/matrix size mismatch");
    // vars: w+ w- (cost 1), c+ c- (cost 0); rows: w - d c = z
    LinearProgram lp;
    for (std::size_t j = 0; j < 2 * rows; ++j) lp.add_var(Rat(1));
    for (std::size_t j = 0; j < 2 * n; ++j) lp.add_var(Rat(0));
    auto wp = [&](std::size_t i) { return (int)i; };
    auto wm = [&](std::size_t i) { return (int)(rows + i); };
    auto cp = [&](std::size_t j) { return (int)(2 * rows + j); };
    auto cm = [&](std::size_t j) { return (int)(2 * rows + n + j); };
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<std::pair<int, Rat>> coef{{wp(i), Rat(1)}, {wm(i), Rat(-1)}};
        for (std::size_t j = 0; j < n; ++j)
            if (d.at(i, j) != 0) {
                coef.push_back({cp(j), Rat(-d.at(i, j))});
                coef.push_back({cm(j), Rat(d.at(i, j))});
            }
        lp.add_row(std::move(coef), z[i]);
    }

    MinCycleSolution out;
    if (mode == CoeffMode::Q) {
        LpResult r = solve_lp(lp);
        if (r.status != LpStatus::Optimal) fail(errc::BadInput, "min-cycle LP must be solvable");
        out.status = FillSolution::Status::Optimal;
        out.value = r.value;
        out.cycle.resize(rows);
        out.filling.resize(n);
        for (std::size_t i = 0; i < rows; ++i) out.cycle[i] = r.x[wp(i)] - r.x[wm(i)];
        for (std::size_t j = 0; j < n; ++j) out.filling[j] = r.x[cp(j)] - r.x[cm(j)];
        return out;
    }

    // Z mode: bound the free filling coefficients so branching terminates.
    Rat znorm = 0;
    Int zmax = 0;
    for (const Rat& v : z) {
        if (rat_den(v) != 1) fail(errc::BadInput, "Z-mode cycle must be integral");
        znorm += abs_rat(v);
        if (abs_int(rat_num(v)) > zmax) zmax = abs_int(rat_num(v));
    }
    Int bc = coefficient_bound(d, zmax + rat_num(znorm));
    MilpSpec spec;
    spec.lp = lp;
    spec.node_limit = budget.node_limit;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::pair<int, Rat>> form{{cp(j), Rat(1)}, {cm(j), Rat(-1)}};
        int s1 = spec.lp.add_var(Rat(0));
        spec.lp.add_row({{cp(j), Rat(1)}, {cm(j), Rat(-1)}, {s1, Rat(1)}}, Rat(bc));
        int s2 = spec.lp.add_var(Rat(0));
        spec.lp.add_row({{cp(j), Rat(-1)}, {cm(j), Rat(1)}, {s2, Rat(1)}}, Rat(bc));
        spec.integer_forms.push_back(std::move(form));
    }
    for (std::size_t i = 0; i < rows; ++i)
        spec.integer_forms.push_back({{wp(i), Rat(1)}, {wm(i), Rat(-1)}});
    // warm start: w = z, c = 0
    std::vector<Rat> warm(spec.lp.num_vars, Rat(0));
    for (std::size_t i = 0; i < rows; ++i) {
        if (z[i] > 0) warm[wp(i)] = z[i];
        if (z[i] < 0) warm[wm(i)] = -z[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        warm[spec.lp.num_vars - 2 * (n - j)] = Rat(bc);      // slack of the <= bc row
        warm[spec.lp.num_vars - 2 * (n - j) + 1] = Rat(bc);  // slack of the >= -bc row
    }
    spec.warm_start = warm;
    MilpResult r = solve_milp(spec);
    out.nodes = r.nodes;
    out.status = r.status == MilpStatus::Optimal ? FillSolution::Status::Optimal
                                                 : FillSolution::Status::BudgetExceeded;
    out.value = r.value;
    out.cycle.resize(rows);
    out.filling.resize(n);
    for (std::size_t i = 0; i < rows; ++i) out.cycle[i] = r.x[wp(i)] - r.x[wm(i)];
    for (std::size_t j = 0; j < n; ++j) out.filling[j] = r.x[cp(j)] - r.x[cm(j)];
    return out;
}

SupportSolution weightless_min_support(const std::vector<Int>& z, const IntMat& d,
                                       const IlpBudget& budget) {
    std::size_t rows = d.rows(), n = d.cols();
    if (z.size() != rows) fail(errc::BadInput, "cycle/matrix size mismatch");
    Int zmax = 0;
    for (const Int& v : z)
        if (abs_int(v) > zmax) zmax = abs_int(v);

    // Branch and bound directly on the indicator variables. A partial
    // assignment fixes a set O of rows to zero; its relaxation bound is the
    // number of rows already fixed to one, and the exact pruning oracle is
    // integral solvability of (d c)|_O = -z|_O by Smith reduction. With the
    // indicators settled the coefficients need no a-priori box, but the
    // Cramer-style bound is reported for the record: some witness below it
    // always exists when the subsystem is solvable.
    auto solvable = [&](const std::vector<std::size_t>& zero_rows,
                        std::vector<Int>* witness) -> bool {
        IntMat sub(zero_rows.size(), n);
        std::vector<Int> rhs(zero_rows.size());
        for (std::size_t i = 0; i < zero_rows.size(); ++i) {
            rhs[i] = -z[zero_rows[i]];
            for (std::size_t j = 0; j < n; ++j) sub.at(i, j) = d.at(zero_rows[i], j);
        }
        auto sol = solve_integer(sub, rhs);
        if (!sol) return false;
        if (witness) *witness = sol->particular;
        return true;
    };

    SupportSolution out;
    out.coefficient_bound = coefficient_bound(d, zmax);
    Int best = 0;
    for (const Int& v : z)
        if (v != 0) ++best;  // c = 0 incumbent
    std::vector<Int> best_c(n, Int(0));
    std::size_t nodes = 0;
    bool budget_hit = false;

    std::vector<std::size_t> zero_rows;
    auto dfs = [&](auto&& self, std::size_t i, Int ones) -> void {
        if (budget_hit || ones >= best) return;
        if (++nodes > budget.node_limit) {
            budget_hit = true;
            return;
        }
        if (i == rows) {
            std::vector<Int> witness;
            if (solvable(zero_rows, &witness)) {
                best = ones;
                best_c = std::move(witness);
            }
            return;
        }
        // try s_i = 0 first: feasibility of the enlarged zero set prunes early
        zero_rows.push_back(i);
        if (solvable(zero_rows, nullptr)) self(self, i + 1, ones);
        zero_rows.pop_back();
        self(self, i + 1, ones + 1);
    };
    dfs(dfs, 0, Int(0));

    out.nodes = nodes;
    out.status =
        budget_hit ? FillSolution::Status::BudgetExceeded : FillSolution::Status::Optimal;
    out.value = best;
    out.cycle.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        Rat w = Rat(z[i]);
        for (std::size_t j = 0; j < n; ++j)
            if (d.at(i, j) != 0) w += Rat(d.at(i, j)) * Rat(best_c[j]);
        out.cycle[i] = w;
    }
    return out;
}

FillProblem fill_problem_on_complex(const DeltaComplex& x, const CellChain& target,
                                    CoeffMode mode, FillProblem::Objective obj) {
    FillProblem p;
    p.boundary = x.boundary_matrix(target.degree() + 1);
    p.target.assign(x.num_cells(target.degree()), Rat(0));
    for (const auto& [cell, c] : target.entries()) p.target[cell] = c;
    p.mode = mode;
    p.objective = obj;
    return p;
}

UbcReport ubc_probe(const DeltaComplex& x, int k, std::size_t samples, std::uint64_t seed,
                    CoeffMode mode) {
    if (x.num_cells(k + 1) == 0) fail(errc::BadInput, "no (k+1)-cells to generate boundaries");
    std::mt19937_64 rng(seed);
    UbcReport rep;
    rep.max_ratio = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        CellChain u(k + 1, CoeffMode::Z);
        for (std::size_t j = 0; j < x.num_cells(k + 1); ++j) {
            long long v = (long long)(rng() % 5) - 2;
            if (v != 0) u.add((int)j, Rat(v));
        }
        CellChain b = chain_boundary(x, u);
        if (b.is_zero()) continue;
        ++rep.samples_used;
        FillProblem p = fill_problem_on_complex(x, b, mode);
        Rat value;
        if (mode == CoeffMode::Q) {
            FillSolution sol = fill_lp(p);
            value = sol.value;
        } else {
            FillSolution sol = fill_ilp(p);
            value = sol.value;
        }
        Rat ratio = value / b.l1_norm();
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.worst_target.assign(x.num_cells(k), Rat(0));
            for (const auto& [cell, c] : b.entries()) rep.worst_target[cell] = c;
        }
    }
    return rep;
}

} // namespace fillvol
