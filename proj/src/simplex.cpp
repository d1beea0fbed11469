#include <algorithm>
#include <queue>

#include "fillvol/errors.hpp"
#include "fillvol/lp.hpp"

namespace fillvol {

namespace {

// Dense-basis revised simplex working state.
struct Tableau {
    std::size_t m = 0, n = 0;                      // rows, structural vars
    std::vector<std::vector<std::pair<int, Rat>>> cols;  // sparse columns, incl. artificials
    std::vector<Rat> rhs;                          // b >= 0 after row normalization
    std::vector<int> row_sign;                     // original row sign (+-1)
    std::vector<int> row_index;                    // original row ids of the kept rows
    std::vector<std::vector<Rat>> binv;            // m x m basis inverse
    std::vector<Rat> xb;                           // basic values
    std::vector<int> basis;                        // var per row
    std::size_t pivots = 0;

    std::vector<Rat> col_in_basis(int j) const {
        std::vector<Rat> d(m, Rat(0));
        for (std::size_t i = 0; i < m; ++i)
            for (const auto& [r, v] : cols[j]) d[i] += binv[i][r] * v;
        return d;
    }

    void pivot(std::size_t r, int entering, const std::vector<Rat>& d) {
        Rat piv = d[r];
        for (auto& v : binv[r]) v /= piv;
        xb[r] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || d[i] == 0) continue;
            for (std::size_t k = 0; k < m; ++k) binv[i][k] -= d[i] * binv[r][k];
            xb[i] -= d[i] * xb[r];
        }
        basis[r] = entering;
        ++pivots;
    }

    // One simplex phase: costs per variable, vars with banned[j] never enter.
    // Returns false when unbounded.
    bool run(const std::vector<Rat>& cost, const std::vector<char>& banned) {
        std::vector<char> is_basic(cols.size(), 0);
        for (int j : basis) is_basic[j] = 1;
        while (true) {
            std::vector<Rat> y(m, Rat(0));  // y = c_B B^{-1}
            for (std::size_t i = 0; i < m; ++i) {
                const Rat& cb = cost[basis[i]];
                if (cb == 0) continue;
                for (std::size_t k = 0; k < m; ++k) y[k] += cb * binv[i][k];
            }
            int entering = -1;
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if (is_basic[j] || banned[j]) continue;
                Rat rc = cost[j];
                for (const auto& [r, v] : cols[j]) rc -= y[r] * v;
                if (rc < 0) {
                    entering = (int)j;
                    break;  // Bland: lowest index
                }
            }
            if (entering < 0) return true;
            std::vector<Rat> d = col_in_basis(entering);
            int leave_row = -1;
            Rat best;
            for (std::size_t i = 0; i < m; ++i) {
                if (d[i] <= 0) continue;
                Rat ratio = xb[i] / d[i];
                if (leave_row < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave_row])) {
                    best = ratio;
                    leave_row = (int)i;
                }
            }
            if (leave_row < 0) return false;
            is_basic[basis[leave_row]] = 0;
            is_basic[entering] = 1;
            pivot(leave_row, entering, d);
        }
    }
};

} // namespace

LpResult solve_lp(const LinearProgram& lp) {
    std::size_t m = lp.rows.size(), n = lp.num_vars;
    Tableau t;
    t.m = m;
    t.n = n;
    t.cols.assign(n + m, {});
    t.rhs.resize(m);
    t.row_sign.resize(m);
    t.row_index.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        int s = lp.rows[i].rhs < 0 ? -1 : 1;
        t.row_sign[i] = s;
        t.row_index[i] = (int)i;
        t.rhs[i] = s < 0 ? Rat(-lp.rows[i].rhs) : lp.rows[i].rhs;
        for (const auto& [j, v] : lp.rows[i].coef)
            if (v != 0) t.cols[j].push_back({(int)i, s < 0 ? Rat(-v) : v});
        t.cols[n + i].push_back({(int)i, Rat(1)});  // artificial
    }
    t.binv.assign(m, std::vector<Rat>(m, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) t.binv[i][i] = 1;
    t.xb = t.rhs;
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) t.basis[i] = (int)(n + i);

    LpResult res;

    // Phase 1: minimize the sum of artificials.
    {
        std::vector<Rat> cost(n + m, Rat(0));
        for (std::size_t i = 0; i < m; ++i) cost[n + i] = 1;
        std::vector<char> banned(n + m, 0);
        t.run(cost, banned);  // bounded below by zero
        Rat v = 0;
        for (std::size_t i = 0; i < m; ++i) v += cost[t.basis[i]] * t.xb[i];
        if (v != 0) {
            res.status = LpStatus::Infeasible;
            res.pivots = t.pivots;
            return res;
        }
    }

    // Drive remaining artificials out of the basis. A row whose artificial
    // cannot leave is linearly dependent on the others: drop it from the
    // original system and re-solve (the reduced system has full row rank, so
    // the recursion bottoms out immediately).
    {
        std::vector<char> redundant(t.m, 0);
        bool any_redundant = false;
        for (std::size_t i = 0; i < t.m; ++i) {
            if ((std::size_t)t.basis[i] < n) continue;
            int pivot_col = -1;
            for (std::size_t j = 0; j < n && pivot_col < 0; ++j) {
                bool basic = false;
                for (int bv : t.basis) basic |= (bv == (int)j);
                if (basic) continue;
                std::vector<Rat> d = t.col_in_basis((int)j);
                if (d[i] != 0) pivot_col = (int)j;
            }
            if (pivot_col >= 0) {
                t.pivot(i, pivot_col, t.col_in_basis(pivot_col));
            } else {
                redundant[i] = 1;
                any_redundant = true;
            }
        }
        if (any_redundant) {
            LinearProgram reduced;
            reduced.num_vars = lp.num_vars;
            reduced.objective = lp.objective;
            std::vector<std::size_t> kept_rows;
            for (std::size_t i = 0; i < t.m; ++i)
                if (!redundant[i]) {
                    reduced.rows.push_back(lp.rows[t.row_index[i]]);
                    kept_rows.push_back((std::size_t)t.row_index[i]);
                }
            LpResult sub = solve_lp(reduced);
            if (sub.status == LpStatus::Optimal) {
                std::vector<Rat> dual(m, Rat(0));
                for (std::size_t i = 0; i < kept_rows.size(); ++i) dual[kept_rows[i]] = sub.dual[i];
                sub.dual = std::move(dual);
            }
            sub.pivots += t.pivots;
            return sub;
        }
    }

    // Phase 2.
    {
        std::vector<Rat> cost(n + t.m, Rat(0));
        for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
        std::vector<char> banned(n + t.m, 0);
        for (std::size_t i = 0; i < t.m; ++i) banned[n + i] = 1;
        if (!t.run(cost, banned)) {
            res.status = LpStatus::Unbounded;
            res.pivots = t.pivots;
            return res;
        }
        res.status = LpStatus::Optimal;
        res.x.assign(n, Rat(0));
        for (std::size_t i = 0; i < t.m; ++i)
            if ((std::size_t)t.basis[i] < n) res.x[t.basis[i]] = t.xb[i];
        res.value = 0;
        for (std::size_t j = 0; j < n; ++j) res.value += lp.objective[j] * res.x[j];
        // duals on the original row indexing (zero on dropped redundant rows)
        res.dual.assign(m, Rat(0));
        std::vector<Rat> y(t.m, Rat(0));
        for (std::size_t i = 0; i < t.m; ++i) {
            const Rat& cb = cost[t.basis[i]];
            if (cb == 0) continue;
            for (std::size_t k = 0; k < t.m; ++k) y[k] += cb * t.binv[i][k];
        }
        for (std::size_t k = 0; k < t.m; ++k)
            res.dual[t.row_index[k]] = t.row_sign[k] < 0 ? Rat(-y[k]) : y[k];
        res.pivots = t.pivots;
    }
    return res;
}

bool check_lp_certificate(const LinearProgram& lp, const LpResult& r) {
    if (r.status != LpStatus::Optimal) return false;
    if (r.x.size() != lp.num_vars || r.dual.size() != lp.rows.size()) return false;
    Rat cx = 0;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        if (r.x[j] < 0) return false;
        cx += lp.objective[j] * r.x[j];
    }
    if (cx != r.value) return false;
    Rat yb = 0;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        Rat ax = 0;
        for (const auto& [j, v] : lp.rows[i].coef) ax += v * r.x[j];
        if (ax != lp.rows[i].rhs) return false;
        yb += r.dual[i] * lp.rows[i].rhs;
    }
    if (yb != r.value) return false;
    std::vector<Rat> aty(lp.num_vars, Rat(0));
    for (std::size_t i = 0; i < lp.rows.size(); ++i)
        for (const auto& [j, v] : lp.rows[i].coef) aty[j] += r.dual[i] * v;
    for (std::size_t j = 0; j < lp.num_vars; ++j)
        if (aty[j] > lp.objective[j]) return false;
    return true;
}

// ---- branch and bound -------------------------------------------------------

namespace {

struct Branch {
    std::vector<std::pair<int, Rat>> form;
    bool upper;  // form <= bound (else form >= bound)
    Int bound;
};

struct Node {
    std::vector<Branch> branches;
    Rat bound;         // inherited LP bound
    std::size_t seq;   // deterministic tie-break
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        return a.seq > b.seq;
    }
};

LinearProgram with_branches(const LinearProgram& base,
                            const std::vector<Branch>& branches,
                            const std::optional<Rat>& cutoff) {
    LinearProgram lp = base;
    for (const Branch& br : branches) {
        int slack = lp.add_var(Rat(0));
        std::vector<std::pair<int, Rat>> coef;
        for (const auto& [j, v] : br.form) coef.push_back({j, br.upper ? v : Rat(-v)});
        coef.push_back({slack, Rat(1)});
        lp.add_row(std::move(coef), br.upper ? Rat(br.bound) : Rat(-Rat(br.bound)));
    }
    if (cutoff) {
        int slack = lp.add_var(Rat(0));
        std::vector<std::pair<int, Rat>> coef;
        for (std::size_t j = 0; j < base.num_vars; ++j)
            if (base.objective[j] != 0) coef.push_back({(int)j, base.objective[j]});
        coef.push_back({slack, Rat(1)});
        lp.add_row(std::move(coef), *cutoff);
    }
    return lp;
}

Rat eval_form(const std::vector<std::pair<int, Rat>>& form, const std::vector<Rat>& x) {
    Rat v = 0;
    for (const auto& [j, c] : form) v += c * x[j];
    return v;
}

} // namespace

MilpResult solve_milp(const MilpSpec& spec) {
    MilpResult res;
    std::optional<Rat> incumbent_value;
    std::vector<Rat> incumbent_x;
    if (spec.warm_start) {
        incumbent_x = *spec.warm_start;
        Rat v = 0;
        for (std::size_t j = 0; j < spec.lp.num_vars; ++j)
            v += spec.lp.objective[j] * incumbent_x[j];
        incumbent_value = v;
    }

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    std::size_t seq = 0;
    open.push({{}, Rat(0), seq++});
    std::size_t nodes = 0;
    bool budget_hit = false;

    while (!open.empty()) {
        if (nodes >= spec.node_limit) {
            budget_hit = true;
            break;
        }
        Node node = open.top();
        open.pop();
        if (incumbent_value && node.bound >= *incumbent_value) continue;
        ++nodes;

        std::optional<Rat> cutoff;
        if (spec.objective_cutoff && incumbent_value) cutoff = *incumbent_value;
        LinearProgram lp = with_branches(spec.lp, node.branches, cutoff);
        LpResult r = solve_lp(lp);
        if (r.status == LpStatus::Infeasible) continue;
        if (r.status == LpStatus::Unbounded)
            fail(errc::Unbounded, "integer relaxation is unbounded");
        if (incumbent_value && r.value >= *incumbent_value) continue;

        // most fractional form; ties broken by lowest index
        int branch_on = -1;
        Rat best_frac = 0;
        std::vector<Rat> values(spec.integer_forms.size());
        for (std::size_t f = 0; f < spec.integer_forms.size(); ++f) {
            values[f] = eval_form(spec.integer_forms[f], r.x);
            Rat fl = Rat(rat_floor(values[f]));
            Rat frac = values[f] - fl;
            Rat dist = std::min(frac, Rat(1) - frac);
            if (dist > best_frac) {
                best_frac = dist;
                branch_on = (int)f;
            }
        }
        if (branch_on < 0) {
            // integral: new incumbent (strict improvement guaranteed above)
            incumbent_value = r.value;
            incumbent_x.assign(r.x.begin(), r.x.begin() + spec.lp.num_vars);
            continue;
        }
        Int fl = rat_floor(values[branch_on]);
        Node down{node.branches, r.value, seq++};
        down.branches.push_back({spec.integer_forms[branch_on], true, fl});
        Node up{node.branches, r.value, seq++};
        up.branches.push_back({spec.integer_forms[branch_on], false, fl + 1});
        open.push(std::move(down));
        open.push(std::move(up));
    }

    res.nodes = nodes;
    if (budget_hit) {
        res.status = MilpStatus::BudgetExceeded;
        if (incumbent_value) {
            res.value = *incumbent_value;
            res.x = incumbent_x;
        }
        // certified lower bound: min over open nodes (incumbent if none)
        std::optional<Rat> lb;
        while (!open.empty()) {
            if (!lb || open.top().bound < *lb) lb = open.top().bound;
            open.pop();
        }
        if (incumbent_value && !lb) lb = incumbent_value;
        res.lower_bound = lb.value_or(Rat(0));
        return res;
    }
    if (!incumbent_value) {
        res.status = MilpStatus::Infeasible;
        return res;
    }
    res.status = MilpStatus::Optimal;
    res.value = *incumbent_value;
    res.lower_bound = res.value;
    res.x = incumbent_x;
    return res;
}

} // namespace fillvol
