#include "doctest.h"

#include "lcbal/complex_structure.hpp"
#include "lcbal/errors.hpp"
#include "test_support.hpp"

#include <random>

using namespace lcbal;
using namespace lcbal::testing;

namespace {

// Independent oracle: N^k_{ab} from structure constants by explicit index sums.
std::vector<std::pair<int, int>> nijenhuis_oracle(const LieAlgebra& g, const Matrix& j)
{
    const int n = g.dim();
    auto J = [&](int r, int c) { return j(static_cast<std::size_t>(r), static_cast<std::size_t>(c)); };
    std::vector<std::pair<int, int>> bad;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            bool nonzero = false;
            for (int k = 0; k < n; ++k) {
                Rational s = -g.structure(k, a, b);
                for (int p = 0; p < n; ++p)
                    for (int q = 0; q < n; ++q)
                        s += J(p, a) * J(q, b) * g.structure(k, p, q);
                for (int m = 0; m < n; ++m)
                    for (int p = 0; p < n; ++p) {
                        s -= J(k, m) * J(p, a) * g.structure(m, p, b);
                        s -= J(k, m) * J(p, b) * g.structure(m, a, p);
                    }
                nonzero |= s != 0;
            }
            if (nonzero)
                bad.emplace_back(a, b);
        }
    return bad;
}

std::vector<std::pair<int, int>> pairs(const std::vector<NijenhuisDefect>& d)
{
    std::vector<std::pair<int, int>> out;
    for (const auto& x : d)
        out.emplace_back(x.i, x.j);
    return out;
}

Form random_one_one(std::mt19937_64& rng, const Matrix& j)
{
    Form a = random_form(rng, static_cast<int>(j.rows()), 2);
    return a + j_action(a, j);
}

// omega(X, Y) = <JX, Y>; positive whenever J is orthogonal
Form orthogonal_omega(const Matrix& j)
{
    const int n = static_cast<int>(j.rows());
    Form w(n, 2);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            w.add({a, b}, Poly(j(static_cast<std::size_t>(b), static_cast<std::size_t>(a))));
    return w;
}

} // namespace

TEST_CASE("check_acs")
{
    CHECK_FALSE(check_acs(standard_j(4)).has_value());
    auto f = check_acs(Matrix::identity(4));
    REQUIRE(f.has_value());
    CHECK(f->row == 0);
    CHECK(f->col == 0);
    CHECK(f->value == 1);
    CHECK_FALSE(check_acs(su2_r_j()).has_value());
    CHECK_THROWS_AS(check_acs(Matrix(3, 4)), StructuralError);
}

TEST_CASE("nijenhuis")
{
    std::mt19937_64 rng(41);
    CHECK(nijenhuis(abelian(4), standard_j(4)).empty());
    // any J on an abelian algebra: conjugate the standard one
    Matrix p = Matrix::from_rows({{1, 2, 0, 0}, {0, 1, 3, 0}, {0, 0, 1, -1}, {1, 0, 0, 1}}, 4);
    Matrix twisted = p * standard_j(4) * inverse(p);
    CHECK_FALSE(check_acs(twisted).has_value());
    CHECK(nijenhuis(abelian(4), twisted).empty());

    auto kt = kodaira_thurston_algebra();
    CHECK(nijenhuis(kt, standard_j(4)).empty());
    CHECK(nijenhuis_oracle(kt, standard_j(4)).empty());

    auto s = su2_r_algebra();
    CHECK(nijenhuis(s, su2_r_j()).empty());
    CHECK(nijenhuis_oracle(s, su2_r_j()).empty());
    // pairing (e1,e2),(e3,e4) instead: integrable as well (regression fixture)
    CHECK(pairs(nijenhuis(s, standard_j(4))) == nijenhuis_oracle(s, standard_j(4)));
    CHECK(nijenhuis(s, standard_j(4)).empty());

    // a non-integrable structure on the Inoue algebra: JY = U, JZ = T
    auto inoue = inoue_algebra();
    Matrix bad(4, 4);
    bad(3, 0) = 1;
    bad(0, 3) = -1;
    bad(2, 1) = 1;
    bad(1, 2) = -1;
    CHECK_FALSE(check_acs(bad).has_value());
    auto defects = nijenhuis(inoue, bad);
    CHECK_FALSE(defects.empty());
    CHECK(pairs(defects) == nijenhuis_oracle(inoue, bad));
    CHECK(pairs(defects) == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK_THROWS_AS(ComplexStructure::make(inoue, bad), ContractError);
    CHECK_NOTHROW(ComplexStructure::make(inoue, standard_j(4)));
}

TEST_CASE("is_one_one")
{
    CHECK(is_one_one(standard_omega(4), standard_j(4)));
    Form e13 = Form::basis(4, MultiIndex::from_sorted({0, 2}));
    CHECK_FALSE(is_one_one(e13, standard_j(4)));
    // pair (e1, e4): omega(Je1, Je4) = omega(e2, -e3) = 0 vs omega(e1, e4) = 0;
    // the mismatch is on (e1, e3): omega(e2, e4) = 0 vs 1
    std::vector<Vector> args{unit(4, 0), unit(4, 2)};
    std::vector<Vector> jargs{standard_j(4) * args[0], standard_j(4) * args[1]};
    CHECK(evaluate(e13, args) != evaluate(e13, jargs));

    std::mt19937_64 rng(43);
    Matrix j = su2_r_j();
    for (int trial = 0; trial < 100; ++trial) {
        Form a = random_form(rng, 4, 2);
        Form ja = j_action(a, j);
        CHECK(is_one_one(a, j) == is_one_one(ja, j));
        CHECK(j_action(ja, j) == a);
    }
}

TEST_CASE("positivity_check")
{
    auto r = positivity_check(standard_omega(4), standard_j(4));
    CHECK(r.positive_definite);
    CHECK(r.metric == Matrix::identity(4));
    auto neg = positivity_check(-standard_omega(4), standard_j(4));
    CHECK_FALSE(neg.positive_definite);
    REQUIRE(neg.witness.has_value());
    CHECK(*neg.witness == unit(4, 0));

    // Kodaira-Thurston metric: all leading minors equal 1
    auto kt = positivity_check(standard_omega(4), standard_j(4));
    CHECK(kt.minors == std::vector<Rational>{1, 1, 1, 1});

    // indefinite with positive first minor: witness from the 2x2 block
    Form w = standard_omega(4);
    w.add({0, 2}, Poly(2));
    w.add({1, 3}, Poly(2));
    REQUIRE(is_one_one(w, standard_j(4)));
    auto ind = positivity_check(w, standard_j(4));
    CHECK_FALSE(ind.positive_definite);
    REQUIRE(ind.witness.has_value());
    CHECK(dot(*ind.witness, ind.metric * *ind.witness) <= 0);

    ParamSession s;
    auto h = s.fresh("pc", 1);
    CHECK_THROWS_AS(positivity_check(Poly::variable(h[0]) * standard_omega(4), standard_j(4)), ContractError);
    CHECK_THROWS_AS(positivity_check(Form::basis(4, MultiIndex::from_sorted({0, 2})), standard_j(4)), ContractError);
}

TEST_CASE("generic_metric")
{
    ParamSession s;
    auto a2 = generic_metric(ComplexStructure::make(abelian(2), standard_j(2)), s, "ga");
    CHECK(a2.params.size() == 1);
    CHECK(a2.omega == Poly::variable(a2.params[0]) * Form::basis(2, MultiIndex::from_sorted({0, 1})));

    auto a4 = generic_metric(ComplexStructure::make(abelian(4), standard_j(4)), s, "gb");
    CHECK(a4.params.size() == 4);
    CHECK(is_one_one(a4.omega, standard_j(4)));

    auto ii = direct_sum(inoue_algebra(), inoue_algebra());
    auto j8 = ComplexStructure::make(ii, standard_j(8));
    auto g8 = generic_metric(j8, s, "gc");
    CHECK(g8.params.size() == 16);
    CHECK(is_one_one(g8.omega, j8.matrix()));
    CHECK(g8.params.front().name() == "gc1");
    CHECK(g8.params.back().name() == "gc16");

    // every concrete (1,1)-form is a specialization
    std::mt19937_64 rng(47);
    for (const Matrix& j : {standard_j(4), su2_r_j(), standard_j(8)}) {
        const auto n = static_cast<int>(j.rows());
        ParamSession local;
        auto gm = generic_metric(ComplexStructure::make(abelian(n), j), local);
        for (int trial = 0; trial < 20; ++trial) {
            Form target = random_one_one(rng, j);
            std::vector<Vector> cols;
            for (const auto& b : gm.basis)
                cols.push_back(b.to_vector());
            Matrix a(cols.empty() ? 0 : cols[0].size(), cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c)
                for (std::size_t r = 0; r < a.rows(); ++r)
                    a(r, c) = cols[c][r];
            auto sol = solve_any(a, target.to_vector());
            REQUIRE(sol.ok);
            std::map<Var, Rational> values;
            for (std::size_t i = 0; i < gm.params.size(); ++i)
                values[gm.params[i]] = sol.x[i];
            CHECK(gm.omega.specialize(values) == target);
        }
    }
}

TEST_CASE("hermitian matrix, principal minors, orientation")
{
    auto h = hermitian_matrix(standard_omega(4), standard_j(4), complex_frame(standard_j(4)));
    CHECK(principal_minor(h, {0}) == 1);
    CHECK(principal_minor(h, {0, 1}) == 1);

    std::mt19937_64 rng(53);
    for (const Matrix& j : {standard_j(4), su2_r_j(), standard_j(6)}) {
        const int n = static_cast<int>(j.rows());
        auto frame = complex_frame(j);
        CHECK(frame.size() == static_cast<std::size_t>(n / 2));
        int tested = 0;
        for (int trial = 0; trial < 200 && tested < 20; ++trial) {
            Form w = orthogonal_omega(j) + Poly(Rational(1, 8)) * random_one_one(rng, j);
            auto pc = positivity_check(w, j);
            if (!pc.positive_definite)
                continue;
            ++tested;
            auto hm = hermitian_matrix(w, j, frame);
            std::vector<int> all;
            for (int i = 0; i < n / 2; ++i) {
                all.push_back(i);
                CHECK(principal_minor(hm, all).constant_term() > 0);
            }
            std::vector<Vector> basis;
            for (int i = 0; i < n; ++i)
                basis.push_back(unit(n, i));
            Rational top = evaluate(power(w, n / 2), basis).constant_term();
            CHECK(top != 0);
            CHECK(sign(top) == j_orientation(j));
        }
        CHECK(tested > 0);
    }
    // catalog metric on su(2)+R: omega = e14 + e23 is positive for its J
    Form w(4, 2);
    w.add({0, 3}, Poly(1));
    w.add({1, 2}, Poly(1));
    CHECK(positivity_check(w, su2_r_j()).positive_definite);
}
