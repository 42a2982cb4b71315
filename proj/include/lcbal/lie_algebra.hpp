#pragma once

#include "lcbal/form.hpp"
#include "lcbal/linalg.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lcbal {

/// Structure constants as entered: only brackets [e_i, e_j] with i < j are
/// stored; [e_j, e_i] follows by antisymmetry. Indices are 0-based here
/// (files use 1-based indices). Not yet checked for the Jacobi identity.
class RawAlgebra {
public:
    explicit RawAlgebra(int dim, std::string name = {});

    int dim() const { return dim_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    /// [e_i, e_j] = sum_k out[k] e_k. Throws StructuralError unless
    /// 0 <= i < j < dim and out has dim entries.
    void set_bracket(int i, int j, Vector out);
    /// [e_i, e_j] += c e_k.
    void add_bracket(int i, int j, int k, const Rational& c);

    const std::map<std::pair<int, int>, Vector>& brackets() const { return brackets_; }
    Vector bracket(int i, int j) const;
    Vector bracket(const Vector& x, const Vector& y) const;

    friend bool operator==(const RawAlgebra& a, const RawAlgebra& b)
    {
        return a.dim_ == b.dim_ && a.brackets_ == b.brackets_;
    }

private:
    void check_index(int i) const;

    int dim_;
    std::string name_;
    std::map<std::pair<int, int>, Vector> brackets_;
};

struct JacobiViolation {
    int i, j, k;       ///< 0-based, i < j < k
    Vector jacobiator; ///< [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
};

/// Every triple with a nonzero Jacobiator; empty iff the constants define a Lie algebra.
std::vector<JacobiViolation> jacobi_check(const RawAlgebra& raw);

class JacobiError : public std::runtime_error {
public:
    explicit JacobiError(std::vector<JacobiViolation> v);
    const std::vector<JacobiViolation>& violations() const { return violations_; }

private:
    std::vector<JacobiViolation> violations_;
};

/// A validated Lie algebra. The only way to obtain one is validate(),
/// which runs jacobi_check.
class LieAlgebra {
public:
    static LieAlgebra validate(RawAlgebra raw);

    int dim() const { return raw_.dim(); }
    const std::string& name() const { return raw_.name(); }
    const RawAlgebra& constants() const { return raw_; }

    Vector bracket(int i, int j) const { return raw_.bracket(i, j); }
    Vector bracket(const Vector& x, const Vector& y) const { return raw_.bracket(x, y); }
    /// c^k_{ij}
    Rational structure(int k, int i, int j) const;
    /// d(e^k) = -sum_{i<j} c^k_{ij} e^i ^ e^j
    const Form& d_dual(int k) const { return d_duals_.at(static_cast<std::size_t>(k)); }

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.raw_ == b.raw_; }

private:
    explicit LieAlgebra(RawAlgebra raw);
    RawAlgebra raw_;
    std::vector<Form> d_duals_;
};

/// Chevalley-Eilenberg differential on invariant forms, with the sign
/// convention d(a)(X, Y) = -a([X, Y]) on 1-forms.
Form ce_differential(const LieAlgebra& g, const Form& a);

/// Same formula applied to unvalidated constants (d^2 may fail to vanish).
Form ce_differential_raw(const RawAlgebra& raw, const Form& a);

/// Basis of closed invariant 1-forms (annihilator of [g, g]), rows in
/// reduced row-echelon form.
std::vector<Form> closed_one_form_basis(const LieAlgebra& g);

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);
LieAlgebra abelian(int n);

/// Inclusions and projections for g1 (+) g2.
Matrix first_inclusion(int d1, int d2);
Matrix second_inclusion(int d1, int d2);
Matrix first_projection(int d1, int d2);
Matrix second_projection(int d1, int d2);

} // namespace lcbal
