#pragma once

#include "lcbal/complex_structure.hpp"
#include "lcbal/lie_algebra.hpp"
#include "lcbal/poly_linsolve.hpp"
#include "lcbal/positivity_cert.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lcbal {

enum class ObstructionVerdict { no_invariant_lcb_generic, lee_form_family, undetermined };
std::string_view to_string(ObstructionVerdict v);

struct ForcedZero {
    Var param;
    /// "principal-minor" (exact certificate), "sampled-positive" or "generic"
    std::string status;
    std::string detail;
    /// k = 0 follows wherever this polynomial is nonzero.
    Poly governing;
    /// False when the governing polynomial was too large to expand; it is
    /// then the minor of P on ObstructionReport::forcing_rows, evaluated pointwise.
    bool expanded = true;
    /// Present when status is "principal-minor".
    std::optional<MinorCertificate> certificate;
};

struct ObstructionOptions {
    std::vector<std::string> basis_labels; ///< names of the basis vectors, for certificates
    std::uint64_t seed = 20240607;
    int samples = 1000;
    /// Symbolic elimination gives up once an entry exceeds this many terms.
    std::size_t term_budget = 1000;
};

struct ObstructionReport {
    std::string algebra;
    int complex_dim = 0;
    std::vector<Form> closed_basis; ///< beta_a
    std::vector<Var> lee_params;    ///< k_1..k_m, theta = sum k_a beta_a
    GenericMetric metric;           ///< Omega(h)
    /// Coefficients of d(Omega^{n-1}) - theta ^ Omega^{n-1} = Q_I - sum_a k_a P_{I,a}.
    std::vector<MultiIndex> rows;
    std::vector<Poly> q;
    std::vector<std::vector<Poly>> p;
    /// Elimination on the rows with Q = 0; a pivot row whose only entry is
    /// in column a gives forcing * k_a = 0.
    PolySolution homogeneous;
    Poly forcing{1};
    /// When the homogeneous rows have full column rank: rows (indices into
    /// `rows`) whose square minor is nonzero, with the point that shows it.
    std::vector<std::size_t> forcing_rows;
    std::map<Var, Rational> rank_witness;
    bool forcing_expanded = true;
    /// k_a = numerators[a] / denominator (zero for forced unknowns) when determined.
    bool determined = false;
    Poly denominator{1};
    std::vector<Poly> numerators;
    /// Pivot determinant before common factors were cancelled; the formula
    /// above is the solution only where this is nonzero.
    Poly validity{1};
    std::vector<ForcedZero> forced_zero;
    std::vector<Var> certified;
    std::vector<Poly> residual_system;
    ObstructionVerdict verdict = ObstructionVerdict::undetermined;
    std::vector<std::string> assumptions;
    std::vector<std::string> notes;
};

/// Lee coefficients forced by the LC-balanced equation for a generic
/// invariant metric, with certification of the forced zeros.
ObstructionReport extract_obstruction(const LieAlgebra& g, const ComplexStructure& j, ParamSession& session,
                                      const ObstructionOptions& options = {});

/// Value of the forcing polynomial at h, expanded or not.
Rational forcing_value(const ObstructionReport& r, const std::map<Var, Rational>& h);

/// What the symbolic family says at a concrete positive metric h. Since
/// theta -> theta ^ Omega^{n-1} is injective there, a vanishing residual
/// makes theta(h) the unique Lee form; a nonzero residual rules out a closed
/// Lee form only off the exceptional set (validity and forcing nonzero).
enum class FamilyStatus { solution, no_solution, inconclusive };
struct FamilyPoint {
    FamilyStatus status = FamilyStatus::inconclusive;
    Form theta; ///< set for `solution`
};
FamilyPoint family_at(const ObstructionReport& r, const std::map<Var, Rational>& h);

/// theta(h) when family_at reports a solution; ContractError otherwise.
Form specialize_lee_family(const ObstructionReport& r, const std::map<Var, Rational>& h);

/// Parameter values of a concrete (1,1)-form in the generic basis.
std::map<Var, Rational> metric_coordinates(const GenericMetric& m, const Form& omega);

} // namespace lcbal
