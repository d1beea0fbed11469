#include "fillvol/serialize.hpp"

#include <sstream>

#include "fillvol/errors.hpp"

namespace fillvol {

json complex_to_json(const DeltaComplex& x) {
    json cells = json::array();
    for (int k = 0; k <= x.dimension(); ++k) {
        json level = json::array();
        for (std::size_t i = 0; i < x.num_cells(k); ++i) level.push_back(x.faces(k, (int)i));
        cells.push_back(std::move(level));
    }
    json labels = json::object();
    for (const auto& [name, loc] : x.labels()) labels[name] = {loc.first, loc.second};
    return {{"dimension", x.dimension()}, {"cells", std::move(cells)}, {"labels", labels}};
}

DeltaComplex complex_from_json(const json& j) {
    if (!j.contains("cells")) fail(errc::BadInput, "missing 'cells'");
    DeltaComplex::CellTable cells;
    for (const json& level : j.at("cells")) {
        cells.emplace_back();
        for (const json& cell : level) cells.back().push_back(cell.get<std::vector<int>>());
    }
    DeltaComplex::LabelMap labels;
    if (j.contains("labels"))
        for (auto it = j.at("labels").begin(); it != j.at("labels").end(); ++it)
            labels[it.key()] = {it.value().at(0).get<int>(), it.value().at(1).get<int>()};
    return DeltaComplex::from_cells(std::move(cells), std::move(labels));
}

json chain_to_json(const CellChain& c) {
    json entries = json::array();
    for (const auto& [cell, coeff] : c.entries()) entries.push_back({cell, format_rat(coeff)});
    return {{"degree", c.degree()},
            {"mode", c.mode() == CoeffMode::Z ? "Z" : "Q"},
            {"entries", std::move(entries)}};
}

CellChain chain_from_json(const json& j) {
    CoeffMode mode = (j.value("mode", "Q") == std::string("Z")) ? CoeffMode::Z : CoeffMode::Q;
    CellChain c(j.at("degree").get<int>(), mode);
    for (const json& e : j.at("entries"))
        c.add(e.at(0).get<int>(), parse_rat(e.at(1).get<std::string>()));
    return c;
}

json affine_simplex_to_json(const AffineSimplex& s) {
    json disp = json::array();
    for (const Vec2Q& w : s.disp()) disp.push_back({format_rat(w.x), format_rat(w.y)});
    return {{"base", {format_rat(s.base().x), format_rat(s.base().y)}},
            {"disp", std::move(disp)}};
}

AffineSimplex affine_simplex_from_json(const json& j) {
    Vec2Q base{parse_rat(j.at("base").at(0).get<std::string>()),
               parse_rat(j.at("base").at(1).get<std::string>())};
    std::vector<Vec2Q> disp;
    for (const json& w : j.at("disp"))
        disp.push_back({parse_rat(w.at(0).get<std::string>()),
                        parse_rat(w.at(1).get<std::string>())});
    return AffineSimplex(base, std::move(disp));
}

json affine_chain_to_json(const AffineChain& c) {
    json entries = json::array();
    for (const auto& [s, coeff] : c.entries())
        entries.push_back({affine_simplex_to_json(s), format_rat(coeff)});
    return {{"degree", c.degree()},
            {"mode", c.mode() == CoeffMode::Z ? "Z" : "Q"},
            {"entries", std::move(entries)}};
}

json matrix_to_json(const IntMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

IntMat matrix_from_json(const json& j) {
    std::size_t rows = j.at("rows").get<std::size_t>(), cols = j.at("cols").get<std::size_t>();
    IntMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = parse_int(j.at("data").at(i).at(c).get<std::string>());
    return m;
}

json snf_certificate_to_json(const IntMat& m, const SmithDecomposition& s) {
    json diag = json::array();
    for (const Int& d : s.diag) diag.push_back(d.str());
    return {{"matrix", matrix_to_json(m)},
            {"U", matrix_to_json(s.U)},
            {"V", matrix_to_json(s.V)},
            {"diag", std::move(diag)}};
}

json homology_to_json(const HomologyGroup& h) {
    json torsion = json::array();
    for (const Int& t : h.torsion) torsion.push_back(t.str());
    return {{"degree", h.degree},
            {"betti", h.betti},
            {"torsion", std::move(torsion)},
            {"group", h.str()}};
}

json report_to_json(const FvReport& r) {
    json rows = json::array();
    for (const FvEvidenceRow& row : r.rows) {
        json jr = {{"m", row.m}};
        if (row.has_upper) jr["upper_fill_bound"] = format_rat(row.upper_fill_bound);
        if (row.word_bound) jr["word_bound"] = format_rat(*row.word_bound);
        if (row.refined_bound) {
            jr["refined_bound"] = format_rat(*row.refined_bound);
            jr["refine_budget_hit"] = row.refine_budget_hit;
        }
        if (row.lower_tested) {
            jr["lower_cert"] = {{"m", row.m},
                                {"q", format_rat(row.lower_cert)},
                                {"test", "pass"}};
        }
        rows.push_back(std::move(jr));
    }
    json out = {{"descriptor", r.descriptor},
                {"mode", r.mode == CoeffMode::Z ? "Z" : "Q"},
                {"rows", std::move(rows)},
                {"lower", format_rat(r.lower)},
                {"params",
                 {{"m_max", r.params.m_max},
                  {"refine",
                   r.params.refine == FvParams::Refine::Word
                       ? "word"
                       : (r.params.refine == FvParams::Refine::Ilp ? "ilp" : "lp")},
                  {"dict_q", r.params.dict_q},
                  {"dict_r", r.params.dict_r},
                  {"node_limit", r.params.node_limit},
                  {"max_denominator", r.params.max_denominator}}}};
    if (r.upper_finite)
        out["upper"] = format_rat(r.upper);
    else
        out["upper"] = "inf";
    out["interval"] = "[" + format_rat(r.lower) + ", " +
                      (r.upper_finite ? format_rat(r.upper) : std::string("inf")) + "]";
    return out;
}

std::string report_to_csv(const FvReport& r) {
    std::ostringstream out;
    out << "m,upper_fill_bound,lower_cert\n";
    for (const FvEvidenceRow& row : r.rows) {
        out << row.m << ",";
        if (row.has_upper) out << format_rat(row.upper_fill_bound);
        out << ",";
        if (row.lower_tested) out << format_rat(row.lower_cert);
        out << "\n";
    }
    return out.str();
}

} // namespace fillvol
