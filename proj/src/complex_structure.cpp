#include "lcbal/complex_structure.hpp"

#include "lcbal/errors.hpp"

#include <functional>
#include <map>

namespace lcbal {

namespace {

Vector unit(std::size_t n, std::size_t i)
{
    Vector v(n);
    v[i] = 1;
    return v;
}

// omega(x, y) for a 2-form
Poly pair(const Form& omega, const Vector& x, const Vector& y)
{
    Poly out;
    for (const auto& [idx, c] : omega.terms()) {
        auto e = idx.entries();
        auto a = static_cast<std::size_t>(e[0]), b = static_cast<std::size_t>(e[1]);
        Rational m = x[a] * y[b] - x[b] * y[a];
        if (m != 0)
            out += c * m;
    }
    return out;
}

void require_two_form(const Form& omega, const Matrix& j)
{
    if (omega.degree() != 2)
        throw StructuralError("expected a 2-form, got degree " + std::to_string(omega.degree()));
    if (!j.square() || j.rows() != static_cast<std::size_t>(omega.dim()))
        throw StructuralError("complex structure does not match the form's dimension");
}

ComplexPoly mul(const ComplexPoly& a, const ComplexPoly& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

} // namespace

std::optional<AcsFailure> check_acs(const Matrix& j)
{
    if (!j.square())
        throw StructuralError("J must be square, got " + std::to_string(j.rows()) + "x" + std::to_string(j.cols()));
    Matrix sq = j * j;
    for (std::size_t r = 0; r < sq.rows(); ++r)
        for (std::size_t c = 0; c < sq.cols(); ++c) {
            Rational expected = r == c ? -1 : 0;
            if (sq(r, c) != expected)
                return AcsFailure{static_cast<int>(r), static_cast<int>(c), sq(r, c)};
        }
    return std::nullopt;
}

std::vector<NijenhuisDefect> nijenhuis(const LieAlgebra& g, const Matrix& j)
{
    if (!j.square() || j.rows() != static_cast<std::size_t>(g.dim()))
        throw StructuralError("J does not match the algebra dimension");
    const auto n = j.rows();
    std::vector<NijenhuisDefect> out;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            Vector x = unit(n, a), y = unit(n, b);
            Vector jx = j * x, jy = j * y;
            Vector t1 = g.bracket(jx, jy);
            Vector t2 = j * g.bracket(jx, y);
            Vector t3 = j * g.bracket(x, jy);
            Vector t4 = g.bracket(x, y);
            Vector v(n);
            for (std::size_t k = 0; k < n; ++k)
                v[k] = t1[k] - t2[k] - t3[k] - t4[k];
            if (!is_zero(v))
                out.push_back({static_cast<int>(a), static_cast<int>(b), std::move(v)});
        }
    return out;
}

ComplexStructure ComplexStructure::make(const LieAlgebra& g, Matrix j)
{
    if (auto f = check_acs(j))
        throw ContractError("J^2 != -I at entry (" + std::to_string(f->row + 1) + "," + std::to_string(f->col + 1) +
                            "): " + to_string(f->value));
    if (j.rows() != static_cast<std::size_t>(g.dim()))
        throw StructuralError("J does not match the algebra dimension");
    auto n = nijenhuis(g, j);
    if (!n.empty())
        throw ContractError("J is not integrable: N(e" + std::to_string(n[0].i + 1) + ", e" +
                            std::to_string(n[0].j + 1) + ") != 0");
    return ComplexStructure(std::move(j));
}

ComplexStructure ComplexStructure::block(const ComplexStructure& a, const ComplexStructure& b)
{
    const auto d1 = a.j_.rows(), d2 = b.j_.rows();
    Matrix m(d1 + d2, d1 + d2);
    for (std::size_t r = 0; r < d1; ++r)
        for (std::size_t c = 0; c < d1; ++c)
            m(r, c) = a.j_(r, c);
    for (std::size_t r = 0; r < d2; ++r)
        for (std::size_t c = 0; c < d2; ++c)
            m(d1 + r, d1 + c) = b.j_(r, c);
    return ComplexStructure(std::move(m));
}

Form j_action(const Form& omega, const Matrix& j)
{
    return pullback(omega, j);
}

bool is_one_one(const Form& omega, const Matrix& j)
{
    require_two_form(omega, j);
    return j_action(omega, j) == omega;
}

PolyMatrix metric_matrix(const Form& omega, const Matrix& j)
{
    require_two_form(omega, j);
    const auto n = j.rows();
    PolyMatrix g(n, std::vector<Poly>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            g[a][b] = pair(omega, unit(n, a), j.col(b));
    return g;
}

Matrix concrete_metric(const Form& omega, const Matrix& j)
{
    if (!omega.is_concrete())
        throw ContractError("metric matrix of a symbolic form requested as concrete");
    auto pm = metric_matrix(omega, j);
    Matrix g(pm.size(), pm.size());
    for (std::size_t a = 0; a < pm.size(); ++a)
        for (std::size_t b = 0; b < pm.size(); ++b)
            g(a, b) = pm[a][b].constant_term();
    return g;
}

PositivityResult positivity_check(const Form& omega, const Matrix& j)
{
    require_two_form(omega, j);
    if (!omega.is_concrete())
        throw ContractError("positivity_check needs a parameter-free form; use the generic pathway instead");
    if (!is_one_one(omega, j))
        throw ContractError("positivity_check: form is not of type (1,1)");
    PositivityResult res;
    res.metric = concrete_metric(omega, j);
    const auto& g = res.metric;
    if (!is_symmetric(g))
        throw ContractError("positivity_check: g(X,Y) = omega(X,JY) is not symmetric");
    const auto n = g.rows();
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix lead(k, k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c)
                lead(r, c) = g(r, c);
        Rational d = determinant(lead);
        res.minors.push_back(d);
        if (d > 0)
            continue;
        // first failure at size k: the previous block is positive definite,
        // so v = (-G_{k-1}^{-1} b, 1, 0, ...) has g(v,v) = d_k / d_{k-1} <= 0
        Vector v(n);
        v[k - 1] = 1;
        if (k > 1) {
            Matrix prev(k - 1, k - 1);
            Vector b(k - 1);
            for (std::size_t r = 0; r + 1 < k; ++r) {
                b[r] = -g(r, k - 1);
                for (std::size_t c = 0; c + 1 < k; ++c)
                    prev(r, c) = g(r, c);
            }
            Vector x = solve(prev, b);
            for (std::size_t r = 0; r + 1 < k; ++r)
                v[r] = x[r];
        }
        if (dot(v, g * v) > 0)
            throw ContractError("positivity_check: witness construction failed");
        res.witness = std::move(v);
        return res;
    }
    res.positive_definite = true;
    return res;
}

std::vector<Form> one_one_basis(const Matrix& j)
{
    const int n = static_cast<int>(j.rows());
    auto idx = multi_indices(n, 2);
    Matrix m(idx.size(), idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) {
        Form b = Form::basis(n, idx[c]);
        Form diff = j_action(b, j) - b;
        Vector col = diff.to_vector();
        for (std::size_t r = 0; r < idx.size(); ++r)
            m(r, c) = col[r];
    }
    std::vector<Form> out;
    for (const auto& v : nullspace(m))
        out.push_back(Form::from_vector(n, 2, v));
    return out;
}

GenericMetric generic_metric(const ComplexStructure& j, ParamSession& session, const std::string& prefix)
{
    GenericMetric gm;
    gm.basis = one_one_basis(j.matrix());
    gm.params = session.fresh(prefix, gm.basis.size());
    gm.omega = Form(j.dim(), 2);
    for (std::size_t a = 0; a < gm.basis.size(); ++a)
        gm.omega += Poly::variable(gm.params[a]) * gm.basis[a];
    return gm;
}

std::vector<Vector> complex_frame(const Matrix& j)
{
    const auto n = j.rows();
    std::vector<Vector> frame, span;
    for (std::size_t i = 0; i < n && span.size() < n; ++i) {
        auto trial = span;
        trial.push_back(unit(n, i));
        trial.push_back(j.col(i));
        if (row_basis(trial, n).size() == span.size() + 2) {
            frame.push_back(unit(n, i));
            span = std::move(trial);
        }
    }
    if (span.size() != n)
        throw ContractError("complex_frame: J does not admit a complex frame");
    return frame;
}

std::vector<std::vector<ComplexPoly>> hermitian_matrix(const Form& omega, const Matrix& j,
                                                       const std::vector<Vector>& frame)
{
    require_two_form(omega, j);
    const auto m = frame.size();
    std::vector<std::vector<ComplexPoly>> h(m, std::vector<ComplexPoly>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            h[a][b] = {pair(omega, frame[a], j * frame[b]), pair(omega, frame[a], frame[b])};
    return h;
}

Poly principal_minor(const std::vector<std::vector<ComplexPoly>>& h, const std::vector<int>& subset)
{
    const auto k = subset.size();
    if (k == 0)
        return Poly(1);
    // Laplace expansion along rows, memoized on the set of columns still free
    std::map<unsigned, ComplexPoly> memo;
    std::function<ComplexPoly(std::size_t, unsigned)> rec = [&](std::size_t row, unsigned cols) -> ComplexPoly {
        if (row == k)
            return {Poly(1), Poly()};
        if (auto it = memo.find(cols); it != memo.end())
            return it->second;
        ComplexPoly acc{Poly(), Poly()};
        int sign = 1;
        for (std::size_t c = 0; c < k; ++c) {
            if (!(cols & (1u << c)))
                continue;
            const auto& entry = h[static_cast<std::size_t>(subset[row])][static_cast<std::size_t>(subset[c])];
            if (!entry.re.is_zero() || !entry.im.is_zero()) {
                ComplexPoly t = mul(entry, rec(row + 1, cols & ~(1u << c)));
                if (sign > 0) {
                    acc.re += t.re;
                    acc.im += t.im;
                } else {
                    acc.re -= t.re;
                    acc.im -= t.im;
                }
            }
            sign = -sign;
        }
        memo.emplace(cols, acc);
        return acc;
    };
    ComplexPoly d = rec(0, (1u << k) - 1);
    if (!d.im.is_zero())
        throw ContractError("principal_minor: matrix is not Hermitian");
    return d.re;
}

int j_orientation(const Matrix& j)
{
    auto frame = complex_frame(j);
    const auto n = j.rows();
    Matrix m(n, n);
    std::size_t c = 0;
    for (const auto& v : frame) {
        Vector jv = j * v;
        for (std::size_t r = 0; r < n; ++r) {
            m(r, c) = v[r];
            m(r, c + 1) = jv[r];
        }
        c += 2;
    }
    return sgn(determinant(m)) > 0 ? 1 : -1;
}

} // namespace lcbal
