#ifndef FILLVOL_SERIALIZE_HPP
#define FILLVOL_SERIALIZE_HPP

#include <json.hpp>

#include "fillvol/affine.hpp"
#include "fillvol/delta.hpp"
#include "fillvol/report.hpp"
#include "fillvol/smith.hpp"

namespace fillvol {

using json = nlohmann::json;

// {"dimension": n, "cells": [[[face ids...], ...] per degree], "labels": {...}}
json complex_to_json(const DeltaComplex& x);
DeltaComplex complex_from_json(const json& j);

// {"degree": k, "entries": [[cell_id, "p/q"], ...], "mode": "Z"|"Q"}
json chain_to_json(const CellChain& c);
CellChain chain_from_json(const json& j);

// {"base": ["p/q","p/q"], "disp": [["a/b","c/d"], ...]}
json affine_simplex_to_json(const AffineSimplex& s);
AffineSimplex affine_simplex_from_json(const json& j);
json affine_chain_to_json(const AffineChain& c);

// row-major arrays of decimal strings
json matrix_to_json(const IntMat& m);
IntMat matrix_from_json(const json& j);
json snf_certificate_to_json(const IntMat& m, const SmithDecomposition& s);

json homology_to_json(const HomologyGroup& h);

// full report with inline certificate rows; all rationals "u/v" strings
json report_to_json(const FvReport& r);
std::string report_to_csv(const FvReport& r);

} // namespace fillvol

#endif
