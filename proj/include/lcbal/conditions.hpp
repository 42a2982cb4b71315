#pragma once

#include "lcbal/complex_structure.hpp"
#include "lcbal/errors.hpp"
#include "lcbal/form.hpp"
#include "lcbal/lie_algebra.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lcbal {

enum class Condition { Kahler, Balanced, LCK, LCBalanced, Vaisman };
enum class Verdict { holds, fails };

std::string_view to_string(Condition c);
std::string_view to_string(Verdict v);
/// Accepts kahler|balanced|lck|lcbalanced|vaisman (case-insensitive).
Condition parse_condition(std::string_view s);

/// Printed in every report: verdicts are about invariant data only.
inline constexpr std::string_view invariant_assumption =
    "invariant-level verdict only; cites reduction step 'Ω and θ are left invariant' (Prop 3.2 proof)";

/// Invariant metric candidate on a validated algebra.
struct Hermitian {
    LieAlgebra g;
    ComplexStructure j;
    Form omega;

    int complex_dim() const { return g.dim() / 2; }
};

/// The defect of a condition: a form, or for Vaisman the (0,2)-tensor
/// (nabla theta)_{ij} = (nabla_{e_i} theta)(e_j).
using Residual = std::variant<Form, Matrix>;
bool is_zero(const Residual& r);

struct ConditionReport {
    Condition condition = Condition::Kahler;
    Verdict verdict = Verdict::fails;
    std::optional<Form> lee_form;
    Residual residual;
    /// d(theta) for LCK / LC-balanced / Vaisman.
    std::optional<Form> lee_differential;
    /// Vaisman with theta = 0.
    bool degenerate = false;
    std::vector<std::string> assumptions{std::string(invariant_assumption)};
    std::vector<std::string> notes;
};

struct LeeSolution {
    Form theta;             ///< best candidate: orthogonal projection solution
    Form equation_residual; ///< d(omega^k) - theta ^ omega^k; zero iff the equation is solvable
    Form d_theta;
    bool solves() const { return equation_residual.is_zero(); }
    bool closed() const { return d_theta.is_zero(); }
    bool holds() const { return solves() && closed(); }
};

/// Matrix of theta |-> theta ^ omega^k; column a is e^a ^ omega^k over the
/// lexicographic (2k+1)-multi-indices.
Matrix lee_map(const Form& omega, int k);

/// Solves d(omega^k) = theta ^ omega^k exactly. When the system is
/// overdetermined the candidate is the exact least-squares solution for the
/// coefficient-wise inner product and the residual is the part of d(omega^k)
/// orthogonal to the image. Requires omega concrete and positive
/// (ContractError otherwise) and 1 <= k <= max(1, n-1).
LeeSolution lee_solve(const Hermitian& h, int k);

/// Throws ContractError if omega is not positive; Vaisman delegates to check_vaisman.
ConditionReport check(Condition c, const Hermitian& h);

/// Gamma^k_{ij} with nabla_{e_i} e_j = sum_k Gamma^k_{ij} e_k.
class Christoffel {
public:
    explicit Christoffel(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim)) {}
    int dim() const { return dim_; }
    Rational& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }
    const Rational& operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }
    /// nabla_X Y for coordinate vectors.
    Vector nabla(const Vector& x, const Vector& y) const;
    bool is_zero() const;

private:
    std::size_t index(int k, int i, int j) const
    {
        return static_cast<std::size_t>((k * dim_ + i) * dim_ + j);
    }
    int dim_;
    std::vector<Rational> data_;
};

/// Levi-Civita connection of an invariant metric via the Koszul formula
/// 2g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
/// Throws ContractError for a non-symmetric or singular metric.
Christoffel koszul_connection(const LieAlgebra& g, const Matrix& metric);

/// (nabla theta)_{ij} = -theta(nabla_{e_i} e_j).
Matrix covariant_derivative(const Christoffel& gamma, const Form& theta);

/// Raised by check_vaisman when the metric is not LCK.
class NotLckError : public ContractError {
public:
    explicit NotLckError(ConditionReport lck);
    const ConditionReport& lck_report() const { return lck_; }

private:
    ConditionReport lck_;
};

ConditionReport check_vaisman(const Hermitian& h);

struct ProductReport {
    Hermitian product;
    ConditionReport report; ///< LC-balanced verdict on the direct sum
    Form theta_first;       ///< pulled back to the sum
    Form theta_second;
    /// Omega^{N-1} = c_first * w1^{n1} ^ w2^{n2-1} + c_second * w1^{n1-1} ^ w2^{n2}
    Rational c_first, c_second;
    bool expansion_identity = false;
    /// Lee form found independently by lee_solve on the product equals theta1 + theta2.
    bool lee_matches_sum = false;
    ConditionReport lck_on_product;
};

/// Throws ContractError when a factor is not LC-balanced.
ProductReport product_verify(const Hermitian& first, const Hermitian& second);

Hermitian direct_sum(const Hermitian& first, const Hermitian& second);

} // namespace lcbal
