#pragma once

#include "lcbal/conditions.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lcbal {

struct ExpectedVerdict {
    Condition condition;
    Verdict verdict;
    std::string provenance;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    Hermitian candidate;
    std::vector<std::string> basis_labels;
    std::vector<ExpectedVerdict> expected;
    std::vector<std::string> notes;
    /// Empty for base entries; the two factor names for named products.
    std::vector<std::string> factors;
};

/// Base entries first (inoue_sol14, kodaira_thurston, iwasawa, su2_r), then
/// the named products.
const std::vector<CatalogEntry>& catalog();

/// Throws StructuralError for an unknown name.
const CatalogEntry& catalog_entry(std::string_view name);

/// Deterministic search for an integrable J on the Inoue algebra: 2x2 blocks
/// on <Y,Z> and <T,U>, entries tried in the order 0, -1, 1, row-major, first
/// block outermost; returns the first J with J^2 = -I and N = 0 that admits
/// a positive invariant (1,1)-form of the shape a Y*^Z* + b T*^U*.
Matrix inoue_j_search();

struct SelfcheckLine {
    std::string entry;
    Condition condition;
    Verdict expected;
    Verdict actual;
    bool ok() const { return expected == actual; }
};

/// Recomputes every expected verdict.
std::vector<SelfcheckLine> catalog_selfcheck();

} // namespace lcbal
