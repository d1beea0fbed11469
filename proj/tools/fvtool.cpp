// fvtool: batch CLI over the filling-volume toolkit. Exit codes: 0 success,
// 2 domain error (reported as a JSON error object), 3 budget exhaustion.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "fillvol/errors.hpp"
#include "fillvol/fill.hpp"
#include "fillvol/report.hpp"
#include "fillvol/serialize.hpp"

using namespace fillvol;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void emit(const json& config, json body, const std::string& out_path) {
    body["config"] = config;
    body["version"] = kVersion;
    body["timestamp"] = timestamp_utc();
    std::string text = body.dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << text;
    }
    std::cout << text;
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(errc::BadInput, "cannot open " + path);
    json j;
    f >> j;
    return j;
}

Mat2 parse_matrix_flag(const std::string& s) {
    std::array<long long, 4> v{};
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t next = s.find(',', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
        try {
            v[i] = std::stoll(tok);
        } catch (...) {
            fail(errc::BadInput, "matrix flag must be a,b,c,d row-major");
        }
        if (next == std::string::npos && i < 3)
            fail(errc::BadInput, "matrix flag must have four entries");
        pos = next + 1;
    }
    return Mat2::from_row_major(v);
}

// "v1-v0", "2*e0+e1", or "0"
CellChain parse_target(const DeltaComplex& x, const std::string& expr, int fallback_degree,
                       CoeffMode mode) {
    std::string s;
    for (char c : expr)
        if (!std::isspace((unsigned char)c)) s.push_back(c);
    if (s == "0") {
        if (fallback_degree < 0) fail(errc::BadInput, "target 0 needs --degree");
        return CellChain(fallback_degree, mode);
    }
    int degree = -1;
    CellChain out(0, mode);
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        Int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            fail(errc::BadInput, "expected + or - in target expression");
        }
        first = false;
        std::string num;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) num.push_back(s[i++]);
        Int coeff = num.empty() ? Int(1) : parse_int(num);
        if (i < s.size() && s[i] == '*') ++i;
        std::string label;
        while (i < s.size() && s[i] != '+' && s[i] != '-') label.push_back(s[i++]);
        auto it = x.labels().find(label);
        if (it == x.labels().end()) fail(errc::BadInput, "unknown cell label '" + label + "'");
        auto [deg, idx] = it->second;
        if (degree < 0) {
            degree = deg;
            out = CellChain(degree, mode);
        } else if (deg != degree) {
            fail(errc::DegreeMismatch, "target mixes degrees");
        }
        out.add(idx, Rat(sign * coeff));
    }
    if (degree < 0) fail(errc::BadInput, "empty target expression");
    return out;
}

json fill_solution_to_json(const FillSolution& s) {
    json j;
    switch (s.status) {
        case FillSolution::Status::Optimal: j["status"] = "optimal"; break;
        case FillSolution::Status::Infeasible: j["status"] = "infeasible"; break;
        case FillSolution::Status::BudgetExceeded: j["status"] = "budget-exceeded"; break;
    }
    if (s.status != FillSolution::Status::Infeasible) {
        j["value"] = format_rat(s.value);
        j["lower_bound"] = format_rat(s.lower_bound);
        json w = json::array();
        for (std::size_t i = 0; i < s.witness.size(); ++i)
            if (s.witness[i] != 0) w.push_back({(int)i, format_rat(s.witness[i])});
        j["witness"] = std::move(w);
        if (!s.dual.empty()) {
            json d = json::array();
            for (const Rat& y : s.dual) d.push_back(format_rat(y));
            j["dual_certificate"] = std::move(d);
        }
        if (s.nodes) j["nodes"] = s.nodes;
    }
    return j;
}

std::size_t default_node_limit() {
    if (const char* env = std::getenv("FVTOOL_NODE_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return (std::size_t)v;
    }
    return 1'000'000;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact filling-volume toolkit"};
    app.require_subcommand(1);

    // complex ----------------------------------------------------------------
    auto* complex = app.add_subcommand("complex", "build and inspect Delta-complexes");
    complex->require_subcommand(1);
    std::string model = "one-vertex-torus", in_path, out_path, target_expr;
    unsigned q = 1, genus = 1;
    int degree = -1;

    auto* build = complex->add_subcommand("build", "generate a model complex");
    build->add_option("--model", model,
                      "one-vertex-torus | grid-torus | genus | klein | circle");
    build->add_option("--q", q, "grid/circle subdivision");
    build->add_option("--genus", genus, "genus of the surface model");
    build->add_option("--out", out_path, "output file");

    auto* validate_cmd = complex->add_subcommand("validate", "chain-complex checks");
    validate_cmd->add_option("--in", in_path, "complex file")->required();
    validate_cmd->add_option("--out", out_path, "output file");

    auto* hom = complex->add_subcommand("homology", "integral homology");
    hom->add_option("--in", in_path, "complex file")->required();
    hom->add_option("--degree", degree, "degree")->required();
    hom->add_option("--out", out_path, "output file");

    auto* fc = complex->add_subcommand("fundamental-cycle", "coherent top orientation");
    fc->add_option("--in", in_path, "complex file")->required();
    fc->add_option("--out", out_path, "chain output file");

    // fill ---------------------------------------------------------------------
    auto* fill = app.add_subcommand("fill", "exact l1 fillings");
    fill->require_subcommand(1);
    std::string complex_path;
    std::size_t node_limit = default_node_limit();
    std::size_t samples = 20;
    std::uint64_t seed = 1;
    auto add_fill_common = [&](CLI::App* sub) {
        sub->add_option("--complex", complex_path, "complex file")->required();
        sub->add_option("--target", target_expr, "label expression or 0")->required();
        sub->add_option("--degree", degree, "degree of a zero target");
        sub->add_option("--node-limit", node_limit, "branch-and-bound node budget");
        sub->add_option("--out", out_path, "output file");
    };
    auto* fill_lp_cmd = fill->add_subcommand("lp", "rational filling norm");
    add_fill_common(fill_lp_cmd);
    auto* fill_ilp_cmd = fill->add_subcommand("ilp", "integral filling norm");
    add_fill_common(fill_ilp_cmd);
    auto* fill_mc = fill->add_subcommand("min-cycle", "minimal norm in the homology class");
    add_fill_common(fill_mc);
    fill_mc->add_flag("--rational", "use rational coefficients");
    auto* fill_wl = fill->add_subcommand("weightless", "minimal support in the class");
    add_fill_common(fill_wl);
    auto* fill_ubc = fill->add_subcommand("ubc-probe", "sampled filling/boundary ratios");
    fill_ubc->add_option("--complex", complex_path, "complex file")->required();
    fill_ubc->add_option("--degree", degree, "boundary degree")->required();
    fill_ubc->add_option("--samples", samples, "number of samples");
    fill_ubc->add_option("--seed", seed, "RNG seed");
    fill_ubc->add_option("--out", out_path, "output file");

    // fv -------------------------------------------------------------------------
    auto* fv = app.add_subcommand("fv", "certified filling-volume interval");
    std::string matrix_flag, mode_flag = "z", refine_flag = "word", csv_path;
    unsigned m_max = 10, dict_q = 1, dict_r = 1, max_den = 1000;
    fv->add_option("--matrix", matrix_flag, "a,b,c,d row-major")->required();
    fv->add_option("--mode", mode_flag, "z | q");
    fv->add_option("--m-max", m_max, "largest power used for evidence");
    fv->add_option("--refine", refine_flag, "word | ilp | lp");
    fv->add_option("--q", dict_q, "dictionary lattice denominator");
    fv->add_option("--r", dict_r, "dictionary displacement radius");
    fv->add_option("--node-limit", node_limit, "refinement ILP budget");
    fv->add_option("--max-denominator", max_den, "certified lower-bound grid");
    fv->add_option("--out", out_path, "report file");
    fv->add_option("--csv", csv_path, "evidence rows as CSV");

    // torsion ----------------------------------------------------------------------
    auto* torsion = app.add_subcommand("torsion", "torsion orders of the torus bundles");
    torsion->add_option("--matrix", matrix_flag, "a,b,c,d row-major")->required();
    torsion->add_option("--m-max", m_max, "table length");
    torsion->add_option("--out", out_path, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            if (build->count("--genus") && !build->count("--model")) model = "genus";
            if (build->count("--q") && !build->count("--model")) model = "grid-torus";
            DeltaComplex x;
            if (model == "one-vertex-torus")
                x = build_one_vertex_torus();
            else if (model == "grid-torus")
                x = build_grid_torus(q);
            else if (model == "genus")
                x = build_genus_surface(genus);
            else if (model == "klein")
                x = build_klein_bottle();
            else if (model == "circle")
                x = build_circle(q);
            else
                fail(errc::BadInput, "unknown model '" + model + "'");
            json config{{"command", "complex build"}, {"model", model}, {"q", q},
                        {"genus", genus}};
            json body = complex_to_json(x);
            body["euler_characteristic"] = x.euler_characteristic().str();
            emit(config, std::move(body), out_path);
        } else if (validate_cmd->parsed()) {
            DeltaComplex x = complex_from_json(read_json_file(in_path));
            ValidationReport r = validate(x);
            emit({{"command", "complex validate"}, {"in", in_path}},
                 {{"is_complex", r.is_complex},
                  {"is_closed_pseudo_manifold", r.is_closed_pseudo_manifold},
                  {"problems", r.problems}},
                 out_path);
        } else if (hom->parsed()) {
            DeltaComplex x = complex_from_json(read_json_file(in_path));
            emit({{"command", "complex homology"}, {"in", in_path}, {"degree", degree}},
                 homology_to_json(homology(x, degree)), out_path);
        } else if (fc->parsed()) {
            DeltaComplex x = complex_from_json(read_json_file(in_path));
            CellChain z = fundamental_cycle(x);
            json body = chain_to_json(z);
            body["l1_norm"] = format_rat(z.l1_norm());
            emit({{"command", "complex fundamental-cycle"}, {"in", in_path}}, std::move(body),
                 out_path);
        } else if (fill_lp_cmd->parsed() || fill_ilp_cmd->parsed()) {
            bool integral = fill_ilp_cmd->parsed();
            CoeffMode mode = integral ? CoeffMode::Z : CoeffMode::Q;
            DeltaComplex x = complex_from_json(read_json_file(complex_path));
            CellChain b = parse_target(x, target_expr, degree, mode);
            FillProblem p = fill_problem_on_complex(x, b, mode);
            FillSolution s = integral ? fill_ilp(p, {node_limit}) : fill_lp(p);
            json config{{"command", integral ? "fill ilp" : "fill lp"},
                        {"complex", complex_path},
                        {"target", target_expr},
                        {"node_limit", node_limit}};
            emit(config, fill_solution_to_json(s), out_path);
            if (s.status == FillSolution::Status::Infeasible) return 2;
            return s.status == FillSolution::Status::BudgetExceeded ? 3 : 0;
        } else if (fill_mc->parsed() || fill_wl->parsed()) {
            DeltaComplex x = complex_from_json(read_json_file(complex_path));
            bool weightless = fill_wl->parsed();
            CoeffMode mode =
                (!weightless && fill_mc->count("--rational")) ? CoeffMode::Q : CoeffMode::Z;
            CellChain z = parse_target(x, target_expr, degree, mode);
            IntMat d = x.boundary_matrix(z.degree() + 1);
            json config{{"command", weightless ? "fill weightless" : "fill min-cycle"},
                        {"complex", complex_path},
                        {"target", target_expr},
                        {"node_limit", node_limit}};
            if (weightless) {
                SupportSolution s =
                    weightless_min_support(z.dense_int(x.num_cells(z.degree())), d, {node_limit});
                json body{{"status", s.status == FillSolution::Status::Optimal
                                          ? "optimal"
                                          : "budget-exceeded"},
                          {"value", s.value.str()},
                          {"coefficient_bound", s.coefficient_bound.str()},
                          {"nodes", s.nodes}};
                emit(config, std::move(body), out_path);
                return s.status == FillSolution::Status::Optimal ? 0 : 3;
            }
            std::vector<Rat> zd(x.num_cells(z.degree()), Rat(0));
            for (const auto& [cell, c] : z.entries()) zd[cell] = c;
            MinCycleSolution s = min_cycle_in_class(zd, d, mode, {node_limit});
            json cycle = json::array();
            for (std::size_t i = 0; i < s.cycle.size(); ++i)
                if (s.cycle[i] != 0) cycle.push_back({(int)i, format_rat(s.cycle[i])});
            json body{{"status", s.status == FillSolution::Status::Optimal ? "optimal"
                                                                           : "budget-exceeded"},
                      {"value", format_rat(s.value)},
                      {"cycle", std::move(cycle)}};
            emit(config, std::move(body), out_path);
            return s.status == FillSolution::Status::Optimal ? 0 : 3;
        } else if (fill_ubc->parsed()) {
            DeltaComplex x = complex_from_json(read_json_file(complex_path));
            UbcReport r = ubc_probe(x, degree, samples, seed);
            json worst = json::array();
            for (std::size_t i = 0; i < r.worst_target.size(); ++i)
                if (r.worst_target[i] != 0)
                    worst.push_back({(int)i, format_rat(r.worst_target[i])});
            emit({{"command", "fill ubc-probe"},
                  {"complex", complex_path},
                  {"degree", degree},
                  {"samples", samples},
                  {"seed", seed}},
                 {{"max_ratio", format_rat(r.max_ratio)},
                  {"samples_used", r.samples_used},
                  {"worst_target", std::move(worst)}},
                 out_path);
        } else if (fv->parsed()) {
            Mat2 a = parse_matrix_flag(matrix_flag);
            FvParams params;
            params.mode = (mode_flag == "q" || mode_flag == "Q") ? CoeffMode::Q : CoeffMode::Z;
            params.m_max = m_max;
            params.refine = refine_flag == "ilp"
                                ? FvParams::Refine::Ilp
                                : (refine_flag == "lp" ? FvParams::Refine::Lp
                                                       : FvParams::Refine::Word);
            params.dict_q = dict_q;
            params.dict_r = dict_r;
            params.node_limit = node_limit;
            params.max_denominator = max_den;
            FvReport rep = fv_report(a, params);
            json config{{"command", "fv"},
                        {"matrix", matrix_flag},
                        {"mode", params.mode == CoeffMode::Z ? "z" : "q"},
                        {"m_max", m_max},
                        {"refine", refine_flag},
                        {"dict_q", dict_q},
                        {"dict_r", dict_r},
                        {"node_limit", node_limit},
                        {"max_denominator", max_den}};
            if (!csv_path.empty()) {
                std::ofstream f(csv_path);
                f << report_to_csv(rep);
            }
            emit(config, report_to_json(rep), out_path);
        } else if (torsion->parsed()) {
            Mat2 a = parse_matrix_flag(matrix_flag);
            if (a.det() != 1) fail(errc::NotSL2, "determinant must be 1");
            json rows = json::array();
            bool all_match = true;
            for (unsigned m = 1; m <= m_max; ++m) {
                Int tm = trace_power(a, m);
                json row{{"m", m}};
                if (tm <= 2) {
                    row["flag"] = "TraceTooSmall";
                } else {
                    Mat2 p = a.pow(m);
                    IntMat d(2, 2);
                    d.at(0, 0) = p.a - 1;
                    d.at(0, 1) = p.b;
                    d.at(1, 0) = p.c;
                    d.at(1, 1) = p.d - 1;
                    Int dd = abs_int(det(d));
                    row["trace_minus_2"] = Int(tm - 2).str();
                    row["abs_det"] = dd.str();
                    row["match"] = (tm - 2) == dd;
                    all_match = all_match && (tm - 2) == dd;
                }
                rows.push_back(std::move(row));
            }
            emit({{"command", "torsion"}, {"matrix", matrix_flag}, {"m_max", m_max}},
                 {{"rows", std::move(rows)}, {"all_match", all_match}}, out_path);
        }
    } catch (const fillvol::error& e) {
        json err{{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return e.is_budget() ? 3 : 2;
    } catch (const std::exception& e) {
        json err{{"error", {{"code", "Internal"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return 2;
    }
    return 0;
}
