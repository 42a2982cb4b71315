#pragma once

#include "lcbal/catalog.hpp"
#include "lcbal/conditions.hpp"
#include "lcbal/feasibility.hpp"
#include "lcbal/obstruction.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lcbal {

/// Insertion-ordered, so dumps are byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "1";

/// Contents of an algebra file: structure constants plus optional J and
/// metric. Indices in files are 1-based.
struct AlgebraFile {
    RawAlgebra raw{1}; ///< placeholder until read
    std::optional<Matrix> j;
    std::optional<Form> metric;
    std::vector<std::string> basis_labels;
};

/// All parse functions throw StructuralError on malformed input.
Rational rational_from_json(const Json& v);
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& v);

/// {"schema", "dim", "name"?, "brackets": [{"i", "j", "out": {"k": "p/q"}}]}
Json to_json(const RawAlgebra& raw);
RawAlgebra algebra_from_json(const Json& v);

/// {"schema", "degree", "dim", "variables"?, "terms": {"1,2": "poly"}}.
/// Every variable in a coefficient must be listed in "variables".
Json to_json(const Form& f);
Form form_from_json(const Json& v);

AlgebraFile algebra_file_from_json(const Json& v);
Json to_json(const AlgebraFile& f);
/// Algebra file for a catalog entry (algebra, J, reference metric, labels,
/// expected verdicts).
Json export_entry(const CatalogEntry& e);

Json to_json(const ConditionReport& r);
Json to_json(const LeeSolution& s, int k);
Json to_json(const ProductReport& r);
Json to_json(const ObstructionReport& r);
Json to_json(const FeasibilityReport& r);

} // namespace lcbal
