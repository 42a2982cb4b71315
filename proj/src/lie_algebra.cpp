#include "lcbal/lie_algebra.hpp"

#include "lcbal/errors.hpp"

namespace lcbal {

RawAlgebra::RawAlgebra(int dim, std::string name) : dim_(dim), name_(std::move(name))
{
    if (dim < 1 || dim > MultiIndex::max_dim)
        throw StructuralError("algebra dimension must be in [1, " + std::to_string(MultiIndex::max_dim) +
                              "], got " + std::to_string(dim));
}

void RawAlgebra::check_index(int i) const
{
    if (i < 0 || i >= dim_)
        throw StructuralError("basis index " + std::to_string(i + 1) + " out of range for dimension " +
                              std::to_string(dim_));
}

void RawAlgebra::set_bracket(int i, int j, Vector out)
{
    check_index(i);
    check_index(j);
    if (i >= j)
        throw StructuralError("bracket entries must satisfy i < j (got i=" + std::to_string(i + 1) +
                              ", j=" + std::to_string(j + 1) + ")");
    if (static_cast<int>(out.size()) != dim_)
        throw StructuralError("bracket output has wrong length");
    if (is_zero(out))
        brackets_.erase({i, j});
    else
        brackets_[{i, j}] = std::move(out);
}

void RawAlgebra::add_bracket(int i, int j, int k, const Rational& c)
{
    check_index(k);
    Vector v = bracket(i, j);
    if (i >= j)
        throw StructuralError("bracket entries must satisfy i < j");
    v[static_cast<std::size_t>(k)] += c;
    set_bracket(i, j, std::move(v));
}

Vector RawAlgebra::bracket(int i, int j) const
{
    check_index(i);
    check_index(j);
    if (i == j)
        return Vector(static_cast<std::size_t>(dim_));
    bool flip = i > j;
    auto it = brackets_.find(flip ? std::pair{j, i} : std::pair{i, j});
    if (it == brackets_.end())
        return Vector(static_cast<std::size_t>(dim_));
    Vector v = it->second;
    if (flip)
        for (auto& x : v)
            x = -x;
    return v;
}

Vector RawAlgebra::bracket(const Vector& x, const Vector& y) const
{
    if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
        throw StructuralError("bracket: vector length mismatch");
    Vector out(static_cast<std::size_t>(dim_));
    for (const auto& [ij, v] : brackets_) {
        auto [i, j] = ij;
        Rational w = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] -
                     x[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(i)];
        if (w == 0)
            continue;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k] != 0)
                out[k] += w * v[k];
    }
    return out;
}

std::vector<JacobiViolation> jacobi_check(const RawAlgebra& raw)
{
    const int n = raw.dim();
    auto unit = [n](int i) {
        Vector v(static_cast<std::size_t>(n));
        v[static_cast<std::size_t>(i)] = 1;
        return v;
    };
    std::vector<JacobiViolation> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Vector a = raw.bracket(raw.bracket(i, j), unit(k));
                Vector b = raw.bracket(raw.bracket(j, k), unit(i));
                Vector c = raw.bracket(raw.bracket(k, i), unit(j));
                Vector s(static_cast<std::size_t>(n));
                for (std::size_t t = 0; t < s.size(); ++t)
                    s[t] = a[t] + b[t] + c[t];
                if (!is_zero(s))
                    out.push_back({i, j, k, std::move(s)});
            }
    return out;
}

JacobiError::JacobiError(std::vector<JacobiViolation> v)
    : std::runtime_error("Jacobi identity fails on " + std::to_string(v.size()) + " triple(s)"),
      violations_(std::move(v))
{
}

LieAlgebra LieAlgebra::validate(RawAlgebra raw)
{
    auto violations = jacobi_check(raw);
    if (!violations.empty())
        throw JacobiError(std::move(violations));
    return LieAlgebra(std::move(raw));
}

Rational LieAlgebra::structure(int k, int i, int j) const
{
    return raw_.bracket(i, j).at(static_cast<std::size_t>(k));
}

namespace {

Form differential(int dim, const std::vector<Form>& d_duals, const Form& a)
{
    if (a.dim() != dim)
        throw StructuralError("form dimension " + std::to_string(a.dim()) + " does not match algebra dimension " +
                              std::to_string(dim));
    Form out(dim, a.degree() + 1);
    if (a.degree() + 1 > dim)
        return out;
    for (const auto& [idx, c] : a.terms()) {
        auto e = idx.entries();
        for (std::size_t pos = 0; pos < e.size(); ++pos) {
            const Form& de = d_duals[static_cast<std::size_t>(e[pos])];
            Poly coef = (pos % 2 == 0) ? c : -c;
            for (const auto& [pair, dc] : de.terms()) {
                if ((pair.mask() & idx.mask() & ~(std::uint64_t{1} << e[pos])) != 0)
                    continue;
                std::vector<int> ind;
                ind.reserve(e.size() + 1);
                for (std::size_t q = 0; q < pos; ++q)
                    ind.push_back(e[q]);
                for (int p : pair.entries())
                    ind.push_back(p);
                for (std::size_t q = pos + 1; q < e.size(); ++q)
                    ind.push_back(e[q]);
                out.add(std::move(ind), coef * dc);
            }
        }
    }
    return out;
}

std::vector<Form> raw_d_duals(const RawAlgebra& raw)
{
    std::vector<Form> out;
    const int n = raw.dim();
    for (int k = 0; k < n; ++k) {
        Form d(n, 2);
        for (const auto& [ij, v] : raw.brackets()) {
            const auto& c = v[static_cast<std::size_t>(k)];
            if (c != 0)
                d.add(MultiIndex::from_sorted({ij.first, ij.second}), Poly(Rational(-c)));
        }
        out.push_back(std::move(d));
    }
    return out;
}

} // namespace

LieAlgebra::LieAlgebra(RawAlgebra raw) : raw_(std::move(raw)), d_duals_(raw_d_duals(raw_)) {}

Form ce_differential(const LieAlgebra& g, const Form& a)
{
    std::vector<Form> duals;
    duals.reserve(static_cast<std::size_t>(g.dim()));
    for (int k = 0; k < g.dim(); ++k)
        duals.push_back(g.d_dual(k));
    return differential(g.dim(), duals, a);
}

Form ce_differential_raw(const RawAlgebra& raw, const Form& a)
{
    return differential(raw.dim(), raw_d_duals(raw), a);
}

std::vector<Form> closed_one_form_basis(const LieAlgebra& g)
{
    const int n = g.dim();
    auto pairs = multi_indices(n, 2);
    Matrix d(pairs.size(), static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Form& de = g.d_dual(k);
        for (std::size_t r = 0; r < pairs.size(); ++r)
            d(r, static_cast<std::size_t>(k)) = de.coefficient(pairs[r]).constant_value();
    }
    std::vector<Form> out;
    for (const auto& v : nullspace(d))
        out.push_back(Form::covector(n, v));
    return out;
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b)
{
    const int d1 = a.dim();
    const int d2 = b.dim();
    std::string name;
    if (!a.name().empty() || !b.name().empty())
        name = a.name() + "+" + b.name();
    RawAlgebra raw(d1 + d2, name);
    for (const auto& [ij, v] : a.constants().brackets()) {
        Vector out(static_cast<std::size_t>(d1 + d2));
        for (int k = 0; k < d1; ++k)
            out[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>(k)];
        raw.set_bracket(ij.first, ij.second, std::move(out));
    }
    for (const auto& [ij, v] : b.constants().brackets()) {
        Vector out(static_cast<std::size_t>(d1 + d2));
        for (int k = 0; k < d2; ++k)
            out[static_cast<std::size_t>(d1 + k)] = v[static_cast<std::size_t>(k)];
        raw.set_bracket(d1 + ij.first, d1 + ij.second, std::move(out));
    }
    return LieAlgebra::validate(std::move(raw));
}

LieAlgebra abelian(int n)
{
    return LieAlgebra::validate(RawAlgebra(n, "abelian" + std::to_string(n)));
}

Matrix first_inclusion(int d1, int d2)
{
    Matrix m(static_cast<std::size_t>(d1 + d2), static_cast<std::size_t>(d1));
    for (int i = 0; i < d1; ++i)
        m(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1;
    return m;
}

Matrix second_inclusion(int d1, int d2)
{
    Matrix m(static_cast<std::size_t>(d1 + d2), static_cast<std::size_t>(d2));
    for (int i = 0; i < d2; ++i)
        m(static_cast<std::size_t>(d1 + i), static_cast<std::size_t>(i)) = 1;
    return m;
}

Matrix first_projection(int d1, int d2)
{
    return first_inclusion(d1, d2).transpose();
}

Matrix second_projection(int d1, int d2)
{
    return second_inclusion(d1, d2).transpose();
}

} // namespace lcbal
