#pragma once

#include <json.hpp>

#include "caw/actions.hpp"
#include "caw/tower.hpp"

namespace caw {

using Json = nlohmann::json;

// Group: {"name": str, "order": n, "product": [[int]]}; inverse derived.
Json group_to_json(const GroupTable& g);
GroupTable group_from_json(const Json& j);

// Cochain: {"group": name-or-inline-table, "degree": n,
//           "values": [{"args": [...], "phase": "p/q"}, ...]};
// omitted argument tuples mean phase 0. Loading rejects non-normalized data
// unless "normalize": true, in which case a coboundary shift is applied.
Json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const Json& j);

// Element entries on a multi-matrix algebra:
// {"block": s, "row": i, "col": j, "coeff": [["p/q", "r/s"], ...]}.
Json element_to_json(const Element<Cyc>& e);
Element<Cyc> element_from_json(const Json& j, const std::shared_ptr<MultiMatrixAlgebra>& alg);

Json algebra_to_json(const MultiMatrixAlgebra& a);
std::shared_ptr<MultiMatrixAlgebra> algebra_from_json(const Json& j);

// Action bundle: group + algebra + monomial alpha tables + u entries.
Json action_to_json(const AnomalousAction<Cyc>& a);
AnomalousAction<Cyc> action_from_json(const Json& j);

// Tower bundle: stages as action bundles plus connecting maps and
// partitions; deterministic given the construction inputs.
Json tower_to_json(const AfTower<Cyc>& t);
AfTower<Cyc> tower_from_json(const Json& j);

Json verification_failures_to_json(const std::vector<CheckFailure>& failures);

void write_json_file(const Json& j, const std::string& path);
Json read_json_file(const std::string& path);

} // namespace caw
