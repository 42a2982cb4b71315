#include "doctest.h"

#include "lcbal/errors.hpp"
#include "lcbal/lie_algebra.hpp"
#include "test_support.hpp"

#include <random>

using namespace lcbal;
using testing::unit;

namespace {

// Independent oracle: dense bracket tensor and the Koszul formula
// dA(X_0..X_p) = sum_{i<j} (-1)^{i+j} A([X_i,X_j], X_0, ..^i..^j.., X_p)
// evaluated on all basis tuples.
Form koszul_oracle(const LieAlgebra& g, const Form& a)
{
    const int n = g.dim();
    const int p = a.degree();
    Form out(n, p + 1);
    for (auto idx : multi_indices(n, p + 1)) {
        auto e = idx.entries();
        Poly value;
        for (int i = 0; i <= p; ++i)
            for (int j = i + 1; j <= p; ++j) {
                std::vector<Vector> args;
                args.push_back(g.bracket(e[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)]));
                for (int m = 0; m <= p; ++m)
                    if (m != i && m != j)
                        args.push_back(unit(n, e[static_cast<std::size_t>(m)]));
                Poly term = evaluate(a, args);
                value += ((i + j) % 2 == 0) ? term : -term;
            }
        out.add(idx, value);
    }
    return out;
}

Vector jacobiator_oracle(const RawAlgebra& raw, int i, int j, int k)
{
    // expand with dense structure constants c[a][b][c]
    const int n = raw.dim();
    auto br = [&](const Vector& x, const Vector& y) {
        Vector out(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Vector ab = raw.bracket(a, b);
                for (int c = 0; c < n; ++c)
                    out[static_cast<std::size_t>(c)] +=
                        x[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(b)] * ab[static_cast<std::size_t>(c)];
            }
        return out;
    };
    Vector s1 = br(br(unit(n, i), unit(n, j)), unit(n, k));
    Vector s2 = br(br(unit(n, j), unit(n, k)), unit(n, i));
    Vector s3 = br(br(unit(n, k), unit(n, i)), unit(n, j));
    Vector s(static_cast<std::size_t>(n));
    for (std::size_t t = 0; t < s.size(); ++t)
        s[t] = s1[t] + s2[t] + s3[t];
    return s;
}

} // namespace

TEST_CASE("jacobi_check")
{
    CHECK(jacobi_check(RawAlgebra(4)).empty());
    CHECK(jacobi_check(testing::inoue_algebra().constants()).empty());

    RawAlgebra raw(3);
    raw.add_bracket(0, 1, 2, 1);
    raw.add_bracket(0, 2, 1, 1);
    CHECK(jacobi_check(raw).empty());
    raw.add_bracket(0, 1, 0, 1); // [e1,e2] += e1
    auto v = jacobi_check(raw);
    REQUIRE(v.size() == 1);
    CHECK(v[0].i == 0);
    CHECK(v[0].j == 1);
    CHECK(v[0].k == 2);
    CHECK(v[0].jacobiator == jacobiator_oracle(raw, 0, 1, 2));
    CHECK(v[0].jacobiator == Vector{0, 1, 0});
    CHECK_THROWS_AS(LieAlgebra::validate(raw), JacobiError);
}

TEST_CASE("structural errors are distinct from Jacobi failures")
{
    RawAlgebra raw(3);
    CHECK_THROWS_AS(raw.set_bracket(0, 3, Vector(3)), StructuralError);
    CHECK_THROWS_AS(raw.set_bracket(1, 1, Vector(3)), StructuralError);
    CHECK_THROWS_AS(raw.set_bracket(2, 1, Vector(3)), StructuralError);
    CHECK_THROWS_AS(raw.set_bracket(0, 1, Vector(2)), StructuralError);
    CHECK_THROWS_AS(RawAlgebra(0), StructuralError);
}

TEST_CASE("ce_differential on the Inoue algebra")
{
    auto g = testing::inoue_algebra();
    const int Y = 0, T = 2;
    Form dT = ce_differential(g, Form::dual(4, T));
    CHECK(dT.is_zero());
    CHECK(dT.degree() == 2);
    Form dY = ce_differential(g, Form::dual(4, Y));
    CHECK(dY == -wedge(Form::dual(4, Y), Form::dual(4, T)));
    CHECK(dY == koszul_oracle(g, Form::dual(4, Y)));
    // on 1-forms the oracle is d a(e_i, e_j) = -a([e_i, e_j])
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            std::vector<Vector> args{unit(4, i), unit(4, j)};
            Poly lhs = evaluate(dY, args);
            std::vector<Vector> br{g.bracket(i, j)};
            CHECK(lhs == -evaluate(Form::dual(4, Y), br));
        }
}

TEST_CASE("ce_differential agrees with the Koszul formula on random forms")
{
    std::mt19937_64 rng(7);
    for (const auto& g : {testing::inoue_algebra(), testing::heisenberg3(), testing::su2()})
        for (int p = 0; p <= g.dim(); ++p)
            for (int trial = 0; trial < 10; ++trial) {
                Form a = testing::random_form(rng, g.dim(), p);
                CHECK(ce_differential(g, a) == koszul_oracle(g, a));
            }
}

TEST_CASE("ce_differential on abelian algebras and top degree")
{
    auto g = abelian(4);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial)
        CHECK(ce_differential(g, testing::random_form(rng, 4, 1)).is_zero());
    auto h = testing::inoue_algebra();
    Form top = Form::basis(4, MultiIndex::from_sorted({0, 1, 2, 3}), Poly(5));
    Form d = ce_differential(h, top);
    CHECK(d.is_zero());
    CHECK(d.degree() == 5);
}

TEST_CASE("d squared vanishes exactly when Jacobi holds")
{
    std::mt19937_64 rng(11);
    auto g = direct_sum(testing::inoue_algebra(), testing::su2());
    for (int p = 0; p < g.dim(); ++p)
        for (int trial = 0; trial < 20; ++trial) {
            Form a = testing::random_form(rng, g.dim(), p);
            CHECK(ce_differential(g, ce_differential(g, a)).is_zero());
        }

    RawAlgebra bad(3);
    bad.add_bracket(0, 1, 2, 1);
    bad.add_bracket(0, 2, 1, 1);
    bad.add_bracket(0, 1, 0, 1);
    bool some_nonzero = false;
    for (int k = 0; k < 3; ++k)
        some_nonzero |= !ce_differential_raw(bad, ce_differential_raw(bad, Form::dual(3, k))).is_zero();
    CHECK(some_nonzero);
}

TEST_CASE("ce_differential is linear")
{
    std::mt19937_64 rng(5);
    auto g = testing::inoue_algebra();
    for (int trial = 0; trial < 50; ++trial) {
        Form a = testing::random_form(rng, 4, 2);
        Form b = testing::random_form(rng, 4, 2);
        Poly s(testing::random_rational(rng)), t(testing::random_rational(rng));
        CHECK(ce_differential(g, s * a + t * b) == s * ce_differential(g, a) + t * ce_differential(g, b));
    }
}

namespace {

// Test-side elimination: rank of the span of all brackets (the derived algebra).
std::size_t derived_dimension(const LieAlgebra& g)
{
    std::vector<Vector> rows;
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j)
            rows.push_back(g.bracket(i, j));
    std::size_t r = 0;
    const auto n = static_cast<std::size_t>(g.dim());
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t q = r + 1; q < rows.size(); ++q) {
            Rational f = rows[q][c] / rows[r][c];
            for (std::size_t k = 0; k < n; ++k)
                rows[q][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

} // namespace

TEST_CASE("closed_one_form_basis")
{
    auto inoue = testing::inoue_algebra();
    auto b = closed_one_form_basis(inoue);
    REQUIRE(b.size() == 1);
    CHECK(b[0] == Form::dual(4, 2));

    auto ab = closed_one_form_basis(abelian(5));
    REQUIRE(ab.size() == 5);
    for (int i = 0; i < 5; ++i)
        CHECK(ab[static_cast<std::size_t>(i)] == Form::dual(5, i));

    auto sum = direct_sum(inoue, inoue);
    auto b2 = closed_one_form_basis(sum);
    REQUIRE(b2.size() == 2);
    CHECK(b2[0] == Form::dual(8, 2));
    CHECK(b2[1] == Form::dual(8, 6));
    CHECK(b2.size() == static_cast<std::size_t>(sum.dim()) - derived_dimension(sum));

    // both inclusions: every basis element is closed, and every closed
    // random combination of duals lies in the span
    std::mt19937_64 rng(9);
    for (const auto& g : {inoue, testing::heisenberg3(), testing::su2(), sum}) {
        auto basis = closed_one_form_basis(g);
        CHECK(basis.size() == static_cast<std::size_t>(g.dim()) - derived_dimension(g));
        for (const auto& f : basis)
            CHECK(ce_differential(g, f).is_zero());
        Form combo(g.dim(), 1);
        for (const auto& f : basis)
            combo += Poly(testing::random_rational(rng)) * f;
        CHECK(ce_differential(g, combo).is_zero());
    }
}

TEST_CASE("direct_sum")
{
    CHECK(direct_sum(abelian(2), abelian(3)).constants() == abelian(5).constants());
    auto inoue = testing::inoue_algebra();
    auto s = direct_sum(inoue, inoue);
    CHECK(s.dim() == 8);
    CHECK(jacobi_check(s.constants()).empty());
    CHECK(s.bracket(4, 6) == unit(8, 4));
    for (int i = 0; i < 4; ++i)
        for (int j = 4; j < 8; ++j)
            CHECK(is_zero(s.bracket(i, j)));

    // d commutes with pullback along the factor projections
    std::mt19937_64 rng(21);
    auto h = testing::heisenberg3();
    auto sum = direct_sum(inoue, h);
    Matrix p1 = first_projection(4, 3), p2 = second_projection(4, 3);
    for (int trial = 0; trial < 20; ++trial) {
        Form a = testing::random_form(rng, 4, 2);
        Form b = testing::random_form(rng, 3, 1);
        CHECK(ce_differential(sum, pullback(a, p1)) == pullback(ce_differential(inoue, a), p1));
        CHECK(ce_differential(sum, pullback(b, p2)) == pullback(ce_differential(h, b), p2));
        for (const auto& [idx, c] : ce_differential(sum, pullback(b, p2)).terms())
            CHECK(idx.entries().front() >= 4);
    }
}
