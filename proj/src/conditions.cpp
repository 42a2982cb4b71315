#include "lcbal/conditions.hpp"

#include "lcbal/errors.hpp"

#include <algorithm>
#include <cctype>

namespace lcbal {

namespace {

Vector unit(std::size_t n, std::size_t i)
{
    Vector v(n);
    v[i] = 1;
    return v;
}

Rational binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    Rational r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

void require_positive(const Hermitian& h)
{
    if (h.omega.dim() != h.g.dim() || h.j.dim() != h.g.dim())
        throw StructuralError("metric, complex structure and algebra dimensions differ");
    auto pc = positivity_check(h.omega, h.j.matrix());
    if (!pc.positive_definite)
        throw ContractError("omega is not positive definite (g(v,v) <= 0 for a witness v)");
}

ConditionReport lee_report(Condition c, const Hermitian& h, int k)
{
    LeeSolution s = lee_solve(h, k);
    ConditionReport r;
    r.condition = c;
    r.lee_form = s.theta;
    r.lee_differential = s.d_theta;
    if (!s.solves())
        r.residual = s.equation_residual;
    else
        r.residual = s.d_theta;
    r.verdict = s.holds() ? Verdict::holds : Verdict::fails;
    if (!s.solves())
        r.notes.push_back("no 1-form solves the defining equation; residual is the part of d(omega^" +
                          std::to_string(k) + ") outside the image of theta |-> theta^omega^" + std::to_string(k));
    else if (!s.closed())
        r.notes.push_back("the unique solution theta is not closed; residual is d(theta)");
    return r;
}

} // namespace

std::string_view to_string(Condition c)
{
    switch (c) {
    case Condition::Kahler: return "Kahler";
    case Condition::Balanced: return "Balanced";
    case Condition::LCK: return "LCK";
    case Condition::LCBalanced: return "LCBalanced";
    case Condition::Vaisman: return "Vaisman";
    }
    return "?";
}

std::string_view to_string(Verdict v)
{
    return v == Verdict::holds ? "holds" : "fails";
}

Condition parse_condition(std::string_view s)
{
    std::string low;
    for (char ch : s)
        low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (low == "kahler")
        return Condition::Kahler;
    if (low == "balanced")
        return Condition::Balanced;
    if (low == "lck")
        return Condition::LCK;
    if (low == "lcbalanced" || low == "lcb")
        return Condition::LCBalanced;
    if (low == "vaisman")
        return Condition::Vaisman;
    throw StructuralError("unknown condition '" + std::string(s) + "'");
}

bool is_zero(const Residual& r)
{
    if (const auto* f = std::get_if<Form>(&r))
        return f->is_zero();
    return std::get<Matrix>(r).is_zero();
}

Matrix lee_map(const Form& omega, int k)
{
    const int n = omega.dim();
    Form w = power(omega, k);
    auto rows = multi_indices(n, 2 * k + 1);
    Matrix a(rows.size(), static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        Vector col = wedge(Form::dual(n, c), w).to_vector();
        for (std::size_t r = 0; r < rows.size(); ++r)
            a(r, static_cast<std::size_t>(c)) = col[r];
    }
    return a;
}

LeeSolution lee_solve(const Hermitian& h, int k)
{
    require_positive(h);
    const int n = h.complex_dim();
    if (k < 1 || k > std::max(1, n - 1))
        throw ContractError("lee_solve: power k=" + std::to_string(k) + " outside 1.." + std::to_string(std::max(1, n - 1)));
    const int dim = h.g.dim();
    Form w = power(h.omega, k);
    Form target = ce_differential(h.g, w);
    LeeSolution s;
    if (2 * k + 1 > dim) {
        // both sides vanish identically
        s.theta = Form(dim, 1);
        s.equation_residual = target;
        s.d_theta = Form(dim, 2);
        return s;
    }
    Matrix a = lee_map(h.omega, k);
    Vector b = target.to_vector();
    Matrix at = a.transpose();
    auto sol = solve_any(at * a, at * b);
    if (!sol.ok)
        throw ContractError("lee_solve: normal equations inconsistent");
    s.theta = Form::covector(dim, sol.x);
    s.equation_residual = target - wedge(s.theta, w);
    s.d_theta = ce_differential(h.g, s.theta);
    return s;
}

ConditionReport check(Condition c, const Hermitian& h)
{
    if (c == Condition::Vaisman)
        return check_vaisman(h);
    require_positive(h);
    const int n = h.complex_dim();
    ConditionReport r;
    r.condition = c;
    switch (c) {
    case Condition::Kahler:
        r.residual = ce_differential(h.g, h.omega);
        break;
    case Condition::Balanced:
        r.residual = ce_differential(h.g, power(h.omega, n - 1));
        break;
    case Condition::LCK:
        return lee_report(c, h, 1);
    case Condition::LCBalanced: {
        auto rep = lee_report(c, h, std::max(1, n - 1));
        if (n == 2)
            rep.notes.push_back("complex dimension 2: omega^{n-1} = omega, so LC-balanced and LCK coincide");
        return rep;
    }
    case Condition::Vaisman:
        break;
    }
    r.verdict = is_zero(r.residual) ? Verdict::holds : Verdict::fails;
    return r;
}

Vector Christoffel::nabla(const Vector& x, const Vector& y) const
{
    const auto n = static_cast<std::size_t>(dim_);
    Vector out(n);
    for (int i = 0; i < dim_; ++i) {
        if (x[static_cast<std::size_t>(i)] == 0)
            continue;
        for (int j = 0; j < dim_; ++j) {
            Rational xy = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
            if (xy == 0)
                continue;
            for (int k = 0; k < dim_; ++k)
                out[static_cast<std::size_t>(k)] += xy * (*this)(k, i, j);
        }
    }
    return out;
}

bool Christoffel::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

Christoffel koszul_connection(const LieAlgebra& g, const Matrix& metric)
{
    const int n = g.dim();
    const auto un = static_cast<std::size_t>(n);
    if (metric.rows() != un || !metric.square())
        throw StructuralError("metric size does not match the algebra");
    if (!is_symmetric(metric))
        throw ContractError("koszul_connection: metric is not symmetric");
    if (determinant(metric) == 0)
        throw ContractError("koszul_connection: metric is singular");
    Matrix ginv = inverse(metric);
    auto gform = [&](const Vector& x, const Vector& y) { return dot(x, metric * y); };
    Christoffel gamma(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vector ei = unit(un, static_cast<std::size_t>(i)), ej = unit(un, static_cast<std::size_t>(j));
            Vector kv(un); // g(nabla_{e_i} e_j, e_l)
            for (int l = 0; l < n; ++l) {
                Vector el = unit(un, static_cast<std::size_t>(l));
                kv[static_cast<std::size_t>(l)] =
                    (gform(g.bracket(i, j), el) - gform(g.bracket(j, l), ei) + gform(g.bracket(l, i), ej)) / 2;
            }
            Vector coords = ginv * kv;
            for (int k = 0; k < n; ++k)
                gamma(k, i, j) = coords[static_cast<std::size_t>(k)];
        }
    return gamma;
}

Matrix covariant_derivative(const Christoffel& gamma, const Form& theta)
{
    const int n = gamma.dim();
    if (theta.degree() != 1 || theta.dim() != n)
        throw StructuralError("covariant_derivative expects a 1-form of matching dimension");
    Vector t(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Poly c = theta.coefficient(MultiIndex::single(k));
        if (!c.is_constant())
            throw ContractError("covariant_derivative: symbolic Lee form");
        t[static_cast<std::size_t>(k)] = c.constant_term();
    }
    Matrix out(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational s = 0;
            for (int k = 0; k < n; ++k)
                s -= gamma(k, i, j) * t[static_cast<std::size_t>(k)];
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = s;
        }
    return out;
}

NotLckError::NotLckError(ConditionReport lck)
    : ContractError("Vaisman check requires an LCK metric; LCK fails"), lck_(std::move(lck))
{
}

ConditionReport check_vaisman(const Hermitian& h)
{
    ConditionReport lck = check(Condition::LCK, h);
    if (lck.verdict != Verdict::holds)
        throw NotLckError(std::move(lck));
    auto gamma = koszul_connection(h.g, concrete_metric(h.omega, h.j.matrix()));
    ConditionReport r;
    r.condition = Condition::Vaisman;
    r.lee_form = lck.lee_form;
    r.lee_differential = lck.lee_differential;
    r.residual = covariant_derivative(gamma, *lck.lee_form);
    r.verdict = is_zero(r.residual) ? Verdict::holds : Verdict::fails;
    r.degenerate = lck.lee_form->is_zero();
    if (r.degenerate)
        r.notes.push_back("theta = 0: the metric is Kahler and the Vaisman condition holds degenerately");
    return r;
}

Hermitian direct_sum(const Hermitian& first, const Hermitian& second)
{
    const int d1 = first.g.dim(), d2 = second.g.dim();
    Form omega = pullback(first.omega, first_projection(d1, d2)) + pullback(second.omega, second_projection(d1, d2));
    return Hermitian{lcbal::direct_sum(first.g, second.g), ComplexStructure::block(first.j, second.j), std::move(omega)};
}

ProductReport product_verify(const Hermitian& first, const Hermitian& second)
{
    ConditionReport r1 = check(Condition::LCBalanced, first);
    ConditionReport r2 = check(Condition::LCBalanced, second);
    if (r1.verdict != Verdict::holds)
        throw ContractError("product_verify: first factor is not LC-balanced");
    if (r2.verdict != Verdict::holds)
        throw ContractError("product_verify: second factor is not LC-balanced");

    const int d1 = first.g.dim(), d2 = second.g.dim();
    const int n1 = d1 / 2, n2 = d2 / 2, big = n1 + n2;
    Matrix p1 = first_projection(d1, d2), p2 = second_projection(d1, d2);
    Hermitian prod = direct_sum(first, second);
    ProductReport rep{prod, {}, pullback(*r1.lee_form, p1), pullback(*r2.lee_form, p2), 0, 0, false, false, {}};

    Form theta = rep.theta_first + rep.theta_second;
    Form top = power(prod.omega, big - 1);
    Form residual = ce_differential(prod.g, top) - wedge(theta, top);
    ConditionReport& r = rep.report;
    r.condition = Condition::LCBalanced;
    r.lee_form = theta;
    r.lee_differential = ce_differential(prod.g, theta);
    r.residual = residual.is_zero() ? *r.lee_differential : residual;
    r.verdict = is_zero(r.residual) ? Verdict::holds : Verdict::fails;

    rep.c_first = binomial(big - 1, n1);
    rep.c_second = binomial(big - 1, n1 - 1);
    Form a = pullback(first.omega, p1), b = pullback(second.omega, p2);
    Form expansion = Poly(rep.c_first) * wedge(power(a, n1), power(b, n2 - 1)) +
                     Poly(rep.c_second) * wedge(power(a, n1 - 1), power(b, n2));
    rep.expansion_identity = expansion == top;
    if (rep.c_first == rep.c_second)
        r.notes.push_back("Omega^{N-1} = c*(w1^n1 ^ w2^(n2-1) + w1^(n1-1) ^ w2^n2) with c = " + to_string(rep.c_first));
    else
        r.notes.push_back("Omega^{N-1} = " + to_string(rep.c_first) + "*w1^n1 ^ w2^(n2-1) + " +
                          to_string(rep.c_second) + "*w1^(n1-1) ^ w2^n2 (the two constants differ)");

    LeeSolution direct = lee_solve(prod, std::max(1, big - 1));
    rep.lee_matches_sum = direct.solves() && direct.theta == theta;
    rep.lck_on_product = check(Condition::LCK, prod);
    return rep;
}

} // namespace lcbal
