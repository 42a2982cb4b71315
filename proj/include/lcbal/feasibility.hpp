#pragma once

#include "lcbal/complex_structure.hpp"
#include "lcbal/lie_algebra.hpp"
#include "lcbal/numerics.hpp"
#include "lcbal/positivity_cert.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lcbal {

enum class SystemKind { kahler_surface_linear, kahler_linear, balanced_polynomial };
enum class FeasibilityVerdict { feasible, infeasible_certified, infeasible_heuristic, unknown };
std::string_view to_string(SystemKind k);
std::string_view to_string(FeasibilityVerdict v);

/// Nonzero positive semidefinite S with tr(S G(gamma)) = 0 for every closed
/// (1,1)-form gamma. A positive definite G(gamma) would give tr(S G) > 0.
struct DualCertificate {
    Matrix s;
    std::vector<Rational> pairings; ///< tr(S G(gamma_i)), one per subspace basis element
};

/// A coefficient of d(Omega^{n-1}) that is sign-definite on the positive cone.
struct MinorObstruction {
    MultiIndex index;
    Poly q;
    MinorCertificate certificate;
};

struct StartLog {
    int start = 0;
    double objective = 0; ///< Kahler: smallest eigenvalue reached; balanced: sum of squares
    int iterations = 0;
};

struct FeasibilityReport {
    SystemKind kind = SystemKind::kahler_surface_linear;
    FeasibilityVerdict verdict = FeasibilityVerdict::unknown;
    std::string algebra;
    std::vector<Form> subspace;          ///< closed (1,1)-forms (Kahler kinds)
    std::vector<MultiIndex> equation_index;
    std::vector<Poly> equations;         ///< Q_I(h) (balanced kind)
    std::vector<Var> params;
    std::optional<Form> witness;
    std::optional<DualCertificate> dual;
    std::optional<MinorObstruction> minor_obstruction;
    std::vector<StartLog> log;
    double best_objective = std::numeric_limits<double>::quiet_NaN();
    numerics::SearchOptions search;
    std::vector<std::string> assumptions;
    std::vector<std::string> notes;
};

struct FeasibilityOptions {
    numerics::SearchOptions search;
    /// Tried first, exactly (e.g. a catalog reference metric).
    std::optional<Form> start;
    std::vector<std::string> basis_labels;
};

/// Basis of {omega of type (1,1) : d omega = 0}.
std::vector<Form> closed_one_one_basis(const LieAlgebra& g, const ComplexStructure& j);

/// 1/2 sum_k (J^* e^k) ^ e^k, positive for every J.
Form reference_omega(const Matrix& j);

/// Searches the J-invariant symmetric matrices annihilating `subspace` for a PSD one.
std::optional<DualCertificate> find_dual_certificate(const Matrix& j, const std::vector<Form>& subspace,
                                                     const numerics::SearchOptions& opt);

FeasibilityReport kahler_feasibility(const LieAlgebra& g, const ComplexStructure& j, const FeasibilityOptions& opt = {});
/// dim 4 only (StructuralError otherwise).
FeasibilityReport kahler_surface_feasibility(const LieAlgebra& g, const ComplexStructure& j,
                                             const FeasibilityOptions& opt = {});
/// dim >= 6; in dim 4 balanced coincides with Kahler and the surface routine answers.
FeasibilityReport balanced_feasibility(const LieAlgebra& g, const ComplexStructure& j,
                                       const FeasibilityOptions& opt = {});

/// Soundness gate: re-derives everything from (g, J) and checks the report's
/// claims exactly. Heuristic and unknown verdicts must carry no certificate.
bool verify_report(const LieAlgebra& g, const ComplexStructure& j, const FeasibilityReport& r,
                   std::string* reason = nullptr);

} // namespace lcbal
