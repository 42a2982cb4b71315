#pragma once

#include "lcbal/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lcbal {

/// Interned parameter name. Ids are process-wide; names are unique.
class Var {
public:
    Var() = default;
    static Var intern(std::string_view name);
    static Var from_id(std::uint32_t id); ///< id must come from intern()
    const std::string& name() const;
    std::uint32_t id() const { return id_; }
    friend auto operator<=>(const Var&, const Var&) = default;

private:
    explicit Var(std::uint32_t id) : id_(id) {}
    std::uint32_t id_ = 0;
};

/// Declares the parameters of one computation. A name can be declared
/// only once per session, so metric and Lee parameters cannot collide.
class ParamSession {
public:
    Var declare(const std::string& name);
    std::vector<Var> fresh(const std::string& prefix, std::size_t count);
    bool declared(const std::string& name) const { return names_.count(name) != 0; }
    std::vector<Var> variables() const { return order_; }

private:
    std::set<std::string> names_;
    std::vector<Var> order_;
};

/// Product of powers of variables, stored sorted by variable id.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(Var v, std::uint32_t e = 1);
    /// Factors must be sorted by id with positive exponents.
    static Monomial from_factors(std::vector<std::pair<std::uint32_t, std::uint32_t>> f);

    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& factors() const { return f_; }
    std::uint32_t degree() const;
    std::uint32_t exponent(Var v) const;
    bool is_one() const { return f_.empty(); }
    bool divides(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// Exact quotient; caller guarantees divisibility.
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;
    /// Graded lexicographic order (smaller id is more significant).
    friend bool operator<(const Monomial& a, const Monomial& b);

    Monomial without(Var v) const;

private:
    std::vector<std::pair<std::uint32_t, std::uint32_t>> f_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored, so equality is structural.
class Poly {
public:
    using Terms = std::map<Monomial, Rational>;

    Poly() = default;
    Poly(const Rational& c);
    Poly(long c) : Poly(Rational(c)) {}
    Poly(int c) : Poly(Rational(c)) {}
    static Poly variable(Var v);
    static Poly term(const Monomial& m, const Rational& c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; ///< throws ContractError when not constant
    Rational constant_term() const;
    std::uint32_t total_degree() const;
    bool is_homogeneous() const;
    std::set<Var> variables() const;
    std::size_t size() const { return terms_.size(); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& s);
    Poly operator-() const;
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend Poly operator*(Poly a, long s) { return a *= Rational(s); }
    friend Poly operator*(long s, Poly a) { return a *= Rational(s); }
    friend Poly operator*(Poly a, int s) { return a *= Rational(s); }
    friend Poly operator*(int s, Poly a) { return a *= Rational(s); }
    friend bool operator==(const Poly&, const Poly&) = default;

    /// Adds c*m in place.
    void add_term(const Monomial& m, const Rational& c);

    Rational evaluate(const std::map<Var, Rational>& values) const; ///< all variables must be bound
    Poly specialize(const std::map<Var, Rational>& values) const;   ///< binds a subset
    Poly substitute(const std::map<Var, Poly>& values) const;
    Poly derivative(Var v) const;
    /// Coefficient of v^1 (terms with exponent exactly one, v removed).
    Poly linear_coefficient(Var v) const;
    /// Terms free of every variable in vs.
    Poly without(const std::set<Var>& vs) const;
    /// Exact division; throws ContractError when b does not divide *this.
    Poly divide_exact(const Poly& b) const;

    std::string to_string() const;
    static Poly parse(std::string_view text);

private:
    Terms terms_;
};

std::string to_string(const Poly& p);

} // namespace lcbal
