#include "doctest.h"

#include "lcbal/catalog.hpp"
#include "lcbal/conditions.hpp"
#include "properties.hpp"
#include "test_support.hpp"

#include <random>

using namespace lcbal;
using namespace lcbal::testing;

namespace {

Hermitian flat(int dim)
{
    auto g = abelian(dim);
    return Hermitian{g, ComplexStructure::make(g, standard_j(dim)), standard_omega(dim)};
}

// Independent oracle: dense Gaussian elimination of the system
// dw(e_I) = sum_a t_a (e^a ^ w)(e_I) built by evaluation on all basis tuples.
std::optional<Vector> dense_lee_oracle(const Hermitian& h, int k)
{
    const int n = h.g.dim();
    Form w = power(h.omega, k);
    Form dw = ce_differential(h.g, w);
    std::vector<Vector> rows;
    for (auto idx : multi_indices(n, 2 * k + 1)) {
        std::vector<Vector> args;
        for (int i : idx.entries())
            args.push_back(unit(n, i));
        Vector row;
        for (int a = 0; a < n; ++a)
            row.push_back(evaluate(wedge(Form::dual(n, a), w), args).constant_term());
        row.push_back(evaluate(dw, args).constant_term());
        rows.push_back(row);
    }
    std::size_t r = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][static_cast<std::size_t>(c)] == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[r]);
        Rational lead = rows[r][static_cast<std::size_t>(c)];
        for (auto& x : rows[r])
            x /= lead;
        for (std::size_t q = 0; q < rows.size(); ++q)
            if (q != r && rows[q][static_cast<std::size_t>(c)] != 0) {
                Rational f = rows[q][static_cast<std::size_t>(c)];
                for (std::size_t m = 0; m < rows[q].size(); ++m)
                    rows[q][m] -= f * rows[r][m];
            }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t q = r; q < rows.size(); ++q)
        if (rows[q].back() != 0)
            return std::nullopt;
    Vector t(static_cast<std::size_t>(n));
    for (std::size_t q = 0; q < r; ++q)
        t[static_cast<std::size_t>(pivot_col[q])] = rows[q].back();
    return t;
}

} // namespace

TEST_CASE("lee_solve examples")
{
    auto f = lee_solve(flat(4), 1);
    CHECK(f.holds());
    CHECK(f.theta.is_zero());

    const auto& kt = catalog_entry("kodaira_thurston").candidate;
    auto s = lee_solve(kt, 1);
    CHECK(s.holds());
    CHECK(s.theta == -Form::dual(4, 3));
    auto oracle = dense_lee_oracle(kt, 1);
    REQUIRE(oracle.has_value());
    CHECK(Form::covector(4, *oracle) == s.theta);
    // residual re-evaluation
    CHECK((ce_differential(kt.g, kt.omega) - wedge(Form::covector(4, *oracle), kt.omega)).is_zero());

    const auto& iw = catalog_entry("iwasawa").candidate;
    auto b = lee_solve(iw, 2);
    CHECK(b.holds());
    CHECK(b.theta.is_zero());
    // overdetermined k = 1 on Iwasawa: no solution, nonzero residual
    auto lck = lee_solve(iw, 1);
    CHECK_FALSE(lck.solves());
    CHECK_FALSE(dense_lee_oracle(iw, 1).has_value());
    // the residual is orthogonal to the image of theta |-> theta ^ omega
    Matrix a = lee_map(iw.omega, 1);
    Vector res = lck.equation_residual.to_vector();
    CHECK(is_zero(a.transpose() * res));

    CHECK_THROWS_AS(lee_solve(Hermitian{kt.g, kt.j, -kt.omega}, 1), ContractError);
    CHECK_THROWS_AS(lee_solve(kt, 2), ContractError);
}

TEST_CASE("check examples")
{
    const auto& kt = catalog_entry("kodaira_thurston").candidate;
    auto k = check(Condition::Kahler, kt);
    CHECK(k.verdict == Verdict::fails);
    CHECK(std::get<Form>(k.residual) == -wedge(wedge(Form::dual(4, 0), Form::dual(4, 1)), Form::dual(4, 3)));
    CHECK(k.assumptions.front() == invariant_assumption);
    CHECK(check(Condition::LCK, kt).verdict == Verdict::holds);

    const auto& iw = catalog_entry("iwasawa").candidate;
    auto bal = check(Condition::Balanced, iw);
    CHECK(bal.verdict == Verdict::holds);
    CHECK(is_zero(bal.residual));
    auto kah = check(Condition::Kahler, iw);
    CHECK(kah.verdict == Verdict::fails);
    CHECK_FALSE(is_zero(kah.residual));

    // LCK implies LC-balanced; the two Lee forms are recorded per example
    for (const auto& e : catalog()) {
        auto lck = check(Condition::LCK, e.candidate);
        if (lck.verdict != Verdict::holds)
            continue;
        auto lcb = check(Condition::LCBalanced, e.candidate);
        CHECK(lcb.verdict == Verdict::holds);
        const int n = e.candidate.complex_dim();
        Form top = power(e.candidate.omega, n - 1);
        CHECK(ce_differential(e.candidate.g, top) == wedge(*lcb.lee_form, top));
        // observed on the catalog (all of complex dimension 2): identical Lee forms
        CHECK(*lcb.lee_form == *lck.lee_form);
    }
}

TEST_CASE("koszul_connection")
{
    auto a = abelian(4);
    CHECK(koszul_connection(a, Matrix::identity(4)).is_zero());
    CHECK(koszul_connection(a, Matrix::from_rows({{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 3}}, 4)).is_zero());

    // su(2) with the bi-invariant metric: nabla_X Y = 1/2 [X, Y] on all 27 triples
    auto s = su2();
    auto gamma = koszul_connection(s, Matrix::identity(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Vector br = s.bracket(i, j);
            for (int k = 0; k < 3; ++k)
                CHECK(gamma(k, i, j) == br[static_cast<std::size_t>(k)] / 2);
        }

    auto inoue = inoue_algebra();
    Matrix diag = Matrix::from_rows({{1, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 5}}, 4);
    auto gi = koszul_connection(inoue, diag);
    CHECK_FALSE(gi.is_zero());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                Vector x = unit(4, i), y = unit(4, j), z = unit(4, k);
                CHECK(dot(gi.nabla(x, y), diag * z) + dot(y, diag * gi.nabla(x, z)) == 0);
            }
    CHECK_THROWS_AS(koszul_connection(inoue, Matrix(4, 4)), ContractError);
}

TEST_CASE("check_vaisman")
{
    auto su = check_vaisman(catalog_entry("su2_r").candidate);
    CHECK(su.verdict == Verdict::holds);
    CHECK_FALSE(su.degenerate);

    auto fl = check_vaisman(flat(4));
    CHECK(fl.verdict == Verdict::holds);
    CHECK(fl.degenerate);
    CHECK(fl.lee_form->is_zero());

    // frozen after the Koszul oracle
    CHECK(check_vaisman(catalog_entry("kodaira_thurston").candidate).verdict == Verdict::holds);
    auto in = check_vaisman(catalog_entry("inoue_sol14").candidate);
    CHECK(in.verdict == Verdict::fails);
    // Gamma^T_{YY} = -1, so (nabla_Y theta)(Y) = -theta(nabla_Y Y) = 1
    CHECK(std::get<Matrix>(in.residual)(0, 0) == 1);

    try {
        check_vaisman(catalog_entry("iwasawa").candidate);
        FAIL("expected NotLckError");
    } catch (const NotLckError& e) {
        CHECK(e.lck_report().verdict == Verdict::fails);
        CHECK_FALSE(is_zero(e.lck_report().residual));
    }
}

TEST_CASE("product_verify")
{
    const auto& kt = catalog_entry("kodaira_thurston").candidate;
    auto p = product_verify(kt, kt);
    CHECK(p.report.verdict == Verdict::holds);
    CHECK(*p.report.lee_form == -Form::dual(8, 3) - Form::dual(8, 7));
    CHECK(p.c_first == 3);
    CHECK(p.c_second == 3);
    CHECK(p.expansion_identity);
    CHECK(p.lee_matches_sum);

    auto f = product_verify(flat(4), flat(4));
    CHECK(f.report.verdict == Verdict::holds);
    CHECK(f.report.lee_form->is_zero());

    const auto& su = catalog_entry("su2_r").candidate;
    auto q = product_verify(su, su);
    CHECK(q.report.verdict == Verdict::holds);
    CHECK(q.lck_on_product.verdict == Verdict::fails);

    // unequal factor dimensions: the two constants differ
    auto mixed = product_verify(kt, catalog_entry("iwasawa").candidate);
    CHECK(mixed.report.verdict == Verdict::holds);
    CHECK(mixed.c_first == 6);
    CHECK(mixed.c_second == 4);
    CHECK(mixed.expansion_identity);

    const auto& iw = catalog_entry("iwasawa").candidate;
    Form w = iw.omega;
    w.add({0, 2}, Poly(Rational(1, 4)));
    w.add({1, 3}, Poly(Rational(1, 4)));
    Hermitian skew{iw.g, iw.j, w};
    if (check(Condition::LCBalanced, skew).verdict != Verdict::holds)
        CHECK_THROWS_AS(product_verify(skew, kt), ContractError);
}

TEST_CASE("property suites on the catalog (short)")
{
    for (const auto& e : catalog()) {
        CAPTURE(e.name);
        CHECK(property_koszul(e, 1, 1).ok());
        CHECK(property_lee_bijective(e, 2, 5).ok());
        CHECK(property_scale_invariance(e, 3, 10).ok());
        CHECK(property_hierarchy(e, 4, 5).ok());
    }
}
