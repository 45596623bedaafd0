#pragma once

// JSON interchange.  Every top-level document carries "schema": "eqsk/1";
// readers accept a missing schema field and reject any other value.
// Malformed input raises StructuralError (or PreconditionError for
// well-formed data violating an operation's preconditions).

#include <nlohmann/json.hpp>
#include <string>

#include "eqsk/burnside.hpp"
#include "eqsk/euler.hpp"
#include "eqsk/mackey.hpp"
#include "eqsk/report.hpp"
#include "eqsk/sk_dim0.hpp"
#include "eqsk/squares.hpp"

namespace eqsk::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "eqsk/1";

/// Throws StructuralError on a foreign schema tag.
void check_schema(const json& doc);
json tagged(json doc);

/// A fixture name, {"name", "order", "table"} or {"degree", "generators"}.
GroupPtr read_group(const json& ref);
json write_group(const FiniteGroup& g);

/// {"group"?, "size", "action": [[int; size] per element]}
GSet read_gset(const json& doc, const GroupPtr& group);
json write_gset(const GSet& x);
/// {"source", "target", "values"}
GMap read_gmap(const json& doc, const GroupPtr& group);
json write_gmap(const GMap& f);
/// {"left", "right"}
Span read_span(const json& doc, const GroupPtr& group);
json write_span(const Span& s);

json write_subgroup(const Subgroup& h);
Subgroup read_subgroup(const json& doc, const FiniteGroup& g);

json write_matrix(const IntMatrix& m);
IntMatrix read_matrix(const json& doc, int rows, int cols);
json write_group_summary(const FgAbelianGroup& a);

/// {"group", "levels": [{"class", "free_rank", "torsion"}],
///  "res"/"tr": [{"class", "subgroup", "matrix"}], "con": [{"class", "element", "matrix"}]}
MackeyFunctor read_mackey(const json& doc);
json write_mackey(const MackeyFunctor& m);

/// {"objects", "distinguished", "morphisms", "comp", "coproducts",
///  "squares": [[a, b, c, d, top, left, right, bottom]]}
SquaresPresentation read_presentation(const json& doc);
json write_presentation(const SquaresPresentation& p);
/// {"free_rank", "torsion", "classes": {object name: vector}}
json write_k0(const K0Result& k, const std::vector<std::string>& names);

/// {"group", "cells": [{"dim", "stabilizer"}]}
GCWComplex read_complex(const json& doc);
json write_complex(const GCWComplex& m);

json write_burnside(const BurnsideElement& a);
/// {"passed", "axioms": [{"axiom", "status", "witness"?}]}
json write_report(const ValidationReport& r);

}  // namespace eqsk::io
