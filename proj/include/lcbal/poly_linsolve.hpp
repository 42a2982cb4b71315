#pragma once

#include "lcbal/polynomial.hpp"

#include <vector>

namespace lcbal {

/// sum_a coeffs[I][a] * x_a = rhs[I] over the fraction field of the polynomial ring.
struct PolyLinearSystem {
    std::vector<std::vector<Poly>> coeffs;
    std::vector<Poly> rhs;
    std::size_t unknowns() const { return coeffs.empty() ? 0 : coeffs.front().size(); }
};

struct PolySolution {
    std::size_t rank = 0;
    /// Row of the input used as pivot for each unknown; -1 when the column has no pivot.
    std::vector<int> pivot_rows;
    bool full_rank() const;
    /// x_a = numerators[a] / denominator for the pivot subsystem (full rank only).
    Poly denominator;
    std::vector<Poly> numerators;
    /// Input rows outside the pivot set.
    std::vector<int> other_rows;
    /// Eliminated augmented matrix; row q < rank is the pivot row of pivot_cols[q].
    std::vector<std::vector<Poly>> reduced;
    std::vector<std::size_t> pivot_cols;
    /// Common diagonal entry of the pivot rows (1 when rank is 0).
    Poly diagonal{1};
    /// Set when an intermediate entry exceeded the term budget; nothing else is valid then.
    bool aborted = false;
};

/// Divides numerators and denominator by their common monomial content and
/// by any of `candidates` that divides all of them exactly (repeatedly).
void cancel_common_factors(std::vector<Poly>& numerators, Poly& denominator, const std::vector<Poly>& candidates = {});

/// Fraction-free Gauss-Jordan elimination (Bareiss-type exact divisions).
/// Pivot choice: among rows with a nonzero entry in the current column,
/// the one with the fewest terms, earliest on ties. Callers control the
/// tie order through the row order.
/// A nonzero `term_budget` stops the elimination once any entry grows past it.
PolySolution solve_fraction_free(const PolyLinearSystem& system, std::size_t term_budget = 0);

} // namespace lcbal
