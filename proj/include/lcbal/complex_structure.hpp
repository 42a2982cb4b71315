#pragma once

#include "lcbal/form.hpp"
#include "lcbal/lie_algebra.hpp"
#include "lcbal/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lcbal {

/// Entry of J^2 + I that is nonzero (0-based).
struct AcsFailure {
    int row = 0;
    int col = 0;
    Rational value; ///< (J^2)(row, col)
};

/// Checks J^2 = -I exactly. Throws StructuralError for a non-square matrix.
std::optional<AcsFailure> check_acs(const Matrix& j);

struct NijenhuisDefect {
    int i = 0, j = 0; ///< 0-based, i < j
    Vector value;     ///< N(e_i, e_j)
};

/// N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] on all basis pairs; empty iff integrable.
std::vector<NijenhuisDefect> nijenhuis(const LieAlgebra& g, const Matrix& j);

/// Integrable complex structure on a validated algebra. Column c of the
/// matrix is J e_c.
class ComplexStructure {
public:
    /// Throws ContractError with details if J^2 != -I or N != 0.
    static ComplexStructure make(const LieAlgebra& g, Matrix j);

    const Matrix& matrix() const { return j_; }
    int dim() const { return static_cast<int>(j_.rows()); }
    Vector apply(const Vector& v) const { return j_ * v; }

    /// Block structure on g1 (+) g2.
    static ComplexStructure block(const ComplexStructure& a, const ComplexStructure& b);

private:
    explicit ComplexStructure(Matrix j) : j_(std::move(j)) {}
    Matrix j_;
};

/// omega(J., J.) as a form.
Form j_action(const Form& omega, const Matrix& j);

/// omega(JX, JY) = omega(X, Y) as a polynomial identity.
bool is_one_one(const Form& omega, const Matrix& j);

using PolyMatrix = std::vector<std::vector<Poly>>;

/// g_{ab} = omega(e_a, J e_b); works with symbolic coefficients.
PolyMatrix metric_matrix(const Form& omega, const Matrix& j);

/// Same for a concrete form.
Matrix concrete_metric(const Form& omega, const Matrix& j);

struct PositivityResult {
    bool positive_definite = false;
    Matrix metric;                     ///< g(X,Y) = omega(X, JY)
    std::vector<Rational> minors;      ///< leading principal minors, up to the first failure
    std::optional<Vector> witness;     ///< g(v, v) <= 0 when not positive
};

/// Sylvester test of g(X,Y) = omega(X, JY). Throws ContractError when omega
/// carries parameters or is not of type (1,1).
PositivityResult positivity_check(const Form& omega, const Matrix& j);

/// Basis of the real (1,1) subspace of Lambda^2, rows in reduced row-echelon form.
std::vector<Form> one_one_basis(const Matrix& j);

struct GenericMetric {
    Form omega;              ///< sum_a h_a * basis[a]
    std::vector<Var> params; ///< h_1..h_N
    std::vector<Form> basis;
};

GenericMetric generic_metric(const ComplexStructure& j, ParamSession& session, const std::string& prefix = "h");

/// Real vectors v_1..v_n such that v_1, Jv_1, ..., v_n, Jv_n is a basis;
/// chosen greedily from the standard basis.
std::vector<Vector> complex_frame(const Matrix& j);

/// Complex polynomial as real and imaginary parts.
struct ComplexPoly {
    Poly re, im;
};

/// H_{ab} = g(v_a, v_b) + i omega(v_a, v_b) on a complex frame. Hermitian,
/// positive definite exactly when g is.
std::vector<std::vector<ComplexPoly>> hermitian_matrix(const Form& omega, const Matrix& j,
                                                       const std::vector<Vector>& frame);

/// Principal minor on the rows/columns in `subset`; always real.
Poly principal_minor(const std::vector<std::vector<ComplexPoly>>& h, const std::vector<int>& subset);

/// Sign (+1 / -1) of det(v_1, Jv_1, ..., v_n, Jv_n) for the complex frame:
/// the orientation J induces relative to e^1 ^ ... ^ e^dim.
int j_orientation(const Matrix& j);

} // namespace lcbal
