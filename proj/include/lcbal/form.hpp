#pragma once

#include "lcbal/linalg.hpp"
#include "lcbal/multi_index.hpp"
#include "lcbal/polynomial.hpp"

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace lcbal {

/// Alternating form of fixed degree on a `dim`-dimensional algebra,
/// e^I coefficients in the polynomial ring. Degree > dim is the canonical
/// zero form of that degree.
class Form {
public:
    using Terms = std::map<MultiIndex, Poly>;

    Form() = default;
    Form(int dim, int degree);

    static Form scalar(int dim, const Poly& c);
    static Form basis(int dim, MultiIndex index, const Poly& c = Poly(1));
    /// e^i, 0-based.
    static Form dual(int dim, int i);
    static Form covector(int dim, const Vector& coeffs);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    Poly coefficient(MultiIndex index) const;

    /// Adds c * e^{i_1} ^ ... ^ e^{i_p}; indices are sorted here and the
    /// permutation parity folded into the coefficient.
    void add(std::vector<int> indices, const Poly& c);
    void add(MultiIndex index, const Poly& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_concrete() const;
    std::set<Var> variables() const;

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(const Poly& s);
    Form operator-() const;
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const Poly& s, Form a) { return a *= s; }
    friend bool operator==(const Form&, const Form&) = default;

    Form specialize(const std::map<Var, Rational>& values) const;
    Form substitute(const std::map<Var, Poly>& values) const;

    /// Coefficient vector over all multi-indices of this degree in
    /// lexicographic order (concrete forms only).
    Vector to_vector() const;
    static Form from_vector(int dim, int degree, const Vector& v);

    /// Dual-basis notation, e.g. "-e4" or "(h1 + 2)*e1^e2 + e3^e4".
    std::string to_string() const;

private:
    int dim_ = 0;
    int degree_ = 0;
    Terms terms_;
};

/// All multi-indices of length p in {0..dim-1}, lexicographic.
std::vector<MultiIndex> multi_indices(int dim, int p);

Form wedge(const Form& a, const Form& b);
/// m-th wedge power of an even-degree form; power(a, 0) is the scalar 1.
Form power(const Form& a, int m);

/// Fully alternating evaluation on `degree` vectors given by coordinates.
Poly evaluate(const Form& a, std::span<const Vector> vectors);

/// (L^* a)(v_1..v_p) = a(L v_1, ..., L v_p); L is (a.dim() x source_dim).
Form pullback(const Form& a, const Matrix& linear_map);

} // namespace lcbal
