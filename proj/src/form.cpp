#include "lcbal/form.hpp"

#include "lcbal/errors.hpp"
#include "lcbal/kernels.hpp"

#include <algorithm>

namespace lcbal {

Form::Form(int dim, int degree) : dim_(dim), degree_(degree)
{
    if (dim < 0 || dim > MultiIndex::max_dim)
        throw StructuralError("ambient dimension " + std::to_string(dim) + " out of range");
    if (degree < 0)
        throw StructuralError("negative form degree");
}

Form Form::scalar(int dim, const Poly& c)
{
    Form f(dim, 0);
    f.add(MultiIndex{}, c);
    return f;
}

Form Form::basis(int dim, MultiIndex index, const Poly& c)
{
    Form f(dim, index.size());
    f.add(index, c);
    return f;
}

Form Form::dual(int dim, int i)
{
    if (i < 0 || i >= dim)
        throw StructuralError("dual basis index out of range");
    return basis(dim, MultiIndex::single(i));
}

Form Form::covector(int dim, const Vector& coeffs)
{
    if (static_cast<int>(coeffs.size()) != dim)
        throw StructuralError("covector length mismatch");
    Form f(dim, 1);
    for (int i = 0; i < dim; ++i)
        f.add(MultiIndex::single(i), Poly(coeffs[static_cast<std::size_t>(i)]));
    return f;
}

Poly Form::coefficient(MultiIndex index) const
{
    auto it = terms_.find(index);
    return it == terms_.end() ? Poly() : it->second;
}

void Form::add(std::vector<int> indices, const Poly& c)
{
    if (static_cast<int>(indices.size()) != degree_)
        throw StructuralError("multi-index length does not match form degree");
    for (int i : indices)
        if (i < 0 || i >= dim_)
            throw StructuralError("basis index " + std::to_string(i) + " out of range");
    int parity = 0;
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = i + 1; j < indices.size(); ++j) {
            if (indices[i] == indices[j])
                return;
            if (indices[i] > indices[j])
                ++parity;
        }
    std::sort(indices.begin(), indices.end());
    add(MultiIndex::from_sorted(indices), (parity & 1) ? -c : c);
}

void Form::add(MultiIndex index, const Poly& c)
{
    if (index.size() != degree_)
        throw StructuralError("multi-index length does not match form degree");
    if (index.max_entry() >= dim_)
        throw StructuralError("multi-index exceeds ambient dimension");
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(index, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

bool Form::is_concrete() const
{
    for (const auto& [i, c] : terms_)
        if (!c.is_constant())
            return false;
    return true;
}

std::set<Var> Form::variables() const
{
    std::set<Var> out;
    for (const auto& [i, c] : terms_) {
        auto vs = c.variables();
        out.insert(vs.begin(), vs.end());
    }
    return out;
}

static void require_same_shape(const Form& a, const Form& b)
{
    if (a.dim() != b.dim())
        throw StructuralError("ambient dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                              std::to_string(b.dim()));
    if (a.degree() != b.degree())
        throw StructuralError("form degree mismatch in sum");
}

Form& Form::operator+=(const Form& o)
{
    require_same_shape(*this, o);
    for (const auto& [i, c] : o.terms_)
        add(i, c);
    return *this;
}

Form& Form::operator-=(const Form& o)
{
    require_same_shape(*this, o);
    for (const auto& [i, c] : o.terms_)
        add(i, -c);
    return *this;
}

Form& Form::operator*=(const Poly& s)
{
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    Terms out;
    for (const auto& [i, c] : terms_) {
        Poly p = c * s;
        if (!p.is_zero())
            out.emplace(i, std::move(p));
    }
    terms_ = std::move(out);
    return *this;
}

Form Form::operator-() const
{
    Form f = *this;
    for (auto& [i, c] : f.terms_)
        c = -c;
    return f;
}

Form Form::specialize(const std::map<Var, Rational>& values) const
{
    Form f(dim_, degree_);
    for (const auto& [i, c] : terms_)
        f.add(i, c.specialize(values));
    return f;
}

Form Form::substitute(const std::map<Var, Poly>& values) const
{
    Form f(dim_, degree_);
    for (const auto& [i, c] : terms_)
        f.add(i, c.substitute(values));
    return f;
}

Vector Form::to_vector() const
{
    auto idx = multi_indices(dim_, degree_);
    Vector v(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        auto it = terms_.find(idx[k]);
        if (it != terms_.end())
            v[k] = it->second.constant_value();
    }
    return v;
}

Form Form::from_vector(int dim, int degree, const Vector& v)
{
    auto idx = multi_indices(dim, degree);
    if (idx.size() != v.size())
        throw StructuralError("coefficient vector length mismatch");
    Form f(dim, degree);
    for (std::size_t k = 0; k < idx.size(); ++k)
        f.add(idx[k], Poly(v[k]));
    return f;
}

std::string Form::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : terms_) {
        std::string basis;
        for (int e : i.entries()) {
            if (!basis.empty())
                basis += "^";
            basis += "e" + std::to_string(e + 1);
        }
        std::string coef;
        bool negative = false;
        if (c.is_constant()) {
            Rational q = c.constant_value();
            negative = q < 0;
            if (negative)
                q = -q;
            coef = q == 1 && !basis.empty() ? "" : lcbal::to_string(q);
        } else if (c.size() == 1 && c.terms().begin()->second < 0) {
            negative = true;
            coef = (-c).to_string();
        } else {
            coef = c.size() == 1 ? c.to_string() : "(" + c.to_string() + ")";
        }
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (coef.empty())
            out += basis;
        else if (basis.empty())
            out += coef;
        else
            out += coef + "*" + basis;
    }
    return out;
}

std::vector<MultiIndex> multi_indices(int dim, int p)
{
    std::vector<MultiIndex> out;
    if (p < 0 || p > dim)
        return out;
    std::vector<int> idx(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i)
        idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(MultiIndex::from_sorted(idx));
        int k = p - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == dim - p + k)
            --k;
        if (k < 0)
            break;
        ++idx[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < p; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

Form wedge(const Form& a, const Form& b)
{
    if (a.terms().size() * b.terms().size() >= kernels::parallel_threshold)
        return kernels::wedge_parallel(a, b);
    return kernels::wedge_serial(a, b);
}

Form power(const Form& a, int m)
{
    if (a.degree() % 2 != 0)
        throw ContractError("power() requires an even-degree form");
    if (m < 0)
        throw ContractError("negative exponent");
    Form r = Form::scalar(a.dim(), Poly(1));
    for (int i = 0; i < m; ++i)
        r = wedge(r, a);
    return r;
}

Poly evaluate(const Form& a, std::span<const Vector> vectors)
{
    if (static_cast<int>(vectors.size()) != a.degree())
        throw StructuralError("evaluate: expected " + std::to_string(a.degree()) + " vectors, got " +
                              std::to_string(vectors.size()));
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != a.dim())
            throw StructuralError("evaluate: vector length does not match ambient dimension");
    Poly sum;
    const std::size_t p = vectors.size();
    for (const auto& [idx, c] : a.terms()) {
        auto e = idx.entries();
        Matrix m(p, p);
        for (std::size_t r = 0; r < p; ++r)
            for (std::size_t col = 0; col < p; ++col)
                m(r, col) = vectors[col][static_cast<std::size_t>(e[r])];
        Rational det = p == 0 ? Rational(1) : determinant(m);
        if (det != 0)
            sum += c * det;
    }
    return sum;
}

Form pullback(const Form& a, const Matrix& linear_map)
{
    if (static_cast<int>(linear_map.rows()) != a.dim())
        throw StructuralError("pullback: map target dimension does not match form");
    const int src = static_cast<int>(linear_map.cols());
    std::vector<Form> pulled;
    pulled.reserve(static_cast<std::size_t>(a.dim()));
    for (int k = 0; k < a.dim(); ++k)
        pulled.push_back(Form::covector(src, linear_map.row(static_cast<std::size_t>(k))));
    Form out(src, a.degree());
    for (const auto& [idx, c] : a.terms()) {
        Form t = Form::scalar(src, c);
        for (int e : idx.entries()) {
            t = kernels::wedge_serial(t, pulled[static_cast<std::size_t>(e)]);
            if (t.is_zero())
                break;
        }
        if (!t.is_zero())
            out += t;
    }
    return out;
}

} // namespace lcbal
