#pragma once

#include <nlohmann/json.hpp>

#include "eqloc/grass.hpp"
#include "eqloc/poly.hpp"
#include "eqloc/symfunc.hpp"

namespace eqloc {

/// {"nvars": N, "terms": [{"exp": [...], "coef": "p/q"}, ...]}, terms in
/// descending graded lexicographic order.
nlohmann::json to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j);

/// {"alphabets": [[1,2],[3,4]], "negated": [true,false],
///  "entries": [{"I": [2,1], "J": [1], "coef": "1"}]}; variables are 1-based.
nlohmann::json to_json(const SchurTable& t);
SchurTable schur_table_from_json(const nlohmann::json& j);

/// {"grass": [m,n], "classes": [{"point": [1,2], "poly": {...}}]}.
nlohmann::json to_json(const LocalClassTable& t);
LocalClassTable local_table_from_json(const nlohmann::json& j);

}  // namespace eqloc
