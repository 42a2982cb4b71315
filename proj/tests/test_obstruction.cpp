#include "doctest.h"

#include "lcbal/catalog.hpp"
#include "lcbal/conditions.hpp"
#include "lcbal/obstruction.hpp"
#include "lcbal/poly_linsolve.hpp"
#include "properties.hpp"
#include "test_support.hpp"

#include <random>

using namespace lcbal;
using namespace lcbal::testing;

namespace {

Poly random_poly(std::mt19937_64& rng, const std::vector<Var>& vars, int terms)
{
    std::uniform_int_distribution<int> c(-3, 3), e(0, 2);
    Poly p;
    for (int t = 0; t < terms; ++t) {
        Poly m(c(rng));
        for (auto v : vars)
            for (int k = e(rng); k > 0; --k)
                m *= Poly::variable(v);
        p += m;
    }
    return p;
}

std::map<Var, Rational> random_point(std::mt19937_64& rng, const std::vector<Var>& vars)
{
    std::map<Var, Rational> h;
    for (auto v : vars)
        h[v] = random_rational(rng, 7, 3);
    return h;
}

ObstructionReport obstruct(const CatalogEntry& e, ParamSession& s)
{
    ObstructionOptions opt;
    opt.samples = 200;
    return extract_obstruction(e.candidate.g, e.candidate.j, s, opt);
}

} // namespace

TEST_CASE("fraction-free solve matches a planted polynomial solution")
{
    std::mt19937_64 rng(11);
    ParamSession s;
    auto vars = s.fresh("x", 2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 3;
        std::vector<Poly> planted;
        for (std::size_t a = 0; a < m; ++a)
            planted.push_back(random_poly(rng, vars, 2));
        PolyLinearSystem sys;
        for (std::size_t i = 0; i < m + 2; ++i) {
            std::vector<Poly> row;
            Poly rhs;
            for (std::size_t a = 0; a < m; ++a) {
                row.push_back(random_poly(rng, vars, 3));
                rhs += row.back() * planted[a];
            }
            sys.coeffs.push_back(row);
            sys.rhs.push_back(rhs);
        }
        auto sol = solve_fraction_free(sys);
        REQUIRE(sol.full_rank());
        for (std::size_t a = 0; a < m; ++a)
            CHECK(sol.numerators[a] == sol.denominator * planted[a]);

        // specialization commutes with solving
        auto h = random_point(rng, vars);
        Matrix a(m, m);
        Vector b(m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t c = 0; c < m; ++c)
                a(i, c) = sys.coeffs[static_cast<std::size_t>(sol.pivot_rows[c])][c].evaluate(h);
        }
        Rational den = sol.denominator.evaluate(h);
        if (den != 0 && determinant(a) != 0)
            for (std::size_t c = 0; c < m; ++c)
                CHECK(sol.numerators[c].evaluate(h) / den == planted[c].evaluate(h));
    }
}

TEST_CASE("rank-deficient and budgeted elimination")
{
    ParamSession s;
    auto v = s.fresh("x", 2);
    Poly x = Poly::variable(v[0]), y = Poly::variable(v[1]);
    PolyLinearSystem sys{{{x, y}, {2 * x, 2 * y}}, {Poly(1), Poly(2)}};
    auto sol = solve_fraction_free(sys);
    CHECK(sol.rank == 1);
    CHECK_FALSE(sol.full_rank());

    Poly big(1);
    for (int i = 0; i < 6; ++i)
        big *= x + y + 1;
    PolyLinearSystem heavy{{{big, x}, {y, big}}, {Poly(), Poly()}};
    CHECK(solve_fraction_free(heavy, 5).aborted);
    CHECK_FALSE(solve_fraction_free(heavy).aborted);
}

TEST_CASE("cancel_common_factors")
{
    ParamSession s;
    auto v = s.fresh("x", 2);
    Poly x = Poly::variable(v[0]), y = Poly::variable(v[1]);
    std::vector<Poly> nums{x * y * (x + 1), x * (x + 1)};
    Poly den = 2 * x * (x + 1) * (x + 1);
    cancel_common_factors(nums, den, {x + 1});
    CHECK(den == x + 1);
    CHECK(nums[0] == Rational(1, 2) * y);
    CHECK(nums[1] == Poly(Rational(1, 2)));
}

TEST_CASE("principal-minor recognition")
{
    const auto& kt = catalog_entry("kodaira_thurston");
    ParamSession s;
    auto gm = generic_metric(kt.candidate.j, s, "h");
    MinorTable table(gm, kt.candidate.j, {"A", "B"});
    REQUIRE(table.minors().size() == 3);
    for (const auto& minor : table.minors()) {
        auto cert = recognize(3 * minor.value, table);
        REQUIRE(cert);
        CHECK(cert->sign == 1);
        CHECK(verify(*cert, 3 * minor.value, table));
        auto tampered = *cert;
        tampered.coefficients[0] += 1;
        CHECK_FALSE(verify(tampered, 3 * minor.value, table));
    }
    auto prod = recognize(-(table.minors()[0].value * table.minors()[1].value), table);
    REQUIRE(prod);
    CHECK(prod->sign == -1);
    CHECK(prod->text.find("det H[A]") != std::string::npos);

    // the minors are positive on sampled positive metrics; a difference is not
    for (const auto& minor : table.minors())
        CHECK(sample_sign(minor.value, table, 5, 200).sign() == 1);
    auto diff = table.minors()[0].value - table.minors()[1].value;
    CHECK_FALSE(recognize(diff, table));
}

TEST_CASE("abelian(4): every invariant metric is Kahler")
{
    auto g = abelian(4);
    auto j = ComplexStructure::make(g, standard_j(4));
    ParamSession s;
    auto r = extract_obstruction(g, j, s);
    CHECK(r.verdict == ObstructionVerdict::lee_form_family);
    CHECK(r.closed_basis.size() == 4);
    CHECK(r.residual_system.empty());
    for (const auto& num : r.numerators)
        CHECK(num.is_zero());
    CHECK(r.assumptions.front() == invariant_assumption);
}

TEST_CASE("inoue x inoue: the Lee coefficients are forced to zero generically")
{
    const auto& e = catalog_entry("inoue_x_inoue");
    ParamSession s;
    auto r = obstruct(e, s);
    REQUIRE(r.closed_basis.size() == 2);
    CHECK(r.closed_basis[0] == Form::dual(8, 2));
    CHECK(r.closed_basis[1] == Form::dual(8, 6));
    CHECK(r.metric.params.size() == 16);
    REQUIRE(r.forced_zero.size() == 2);
    CHECK(r.forced_zero[0].param.name() == "k1");
    CHECK(r.forced_zero[1].param.name() == "k2");
    for (const auto& f : r.forced_zero)
        CHECK(f.status == "generic");
    CHECK(r.certified.empty());
    CHECK(r.verdict == ObstructionVerdict::no_invariant_lcb_generic);

    // with theta = 0 the residual is exactly the balanced system
    Form dw = ce_differential(e.candidate.g, power(r.metric.omega, 3));
    std::vector<Poly> balanced;
    for (const auto& [idx, c] : dw.terms())
        balanced.push_back(c);
    CHECK(r.residual_system == balanced);

    // the product metric is LC-balanced with theta != 0, so the forcing
    // polynomial must vanish there: the zero is generic, not universal
    auto point = metric_coordinates(r.metric, e.candidate.omega);
    CHECK(forcing_value(r, point) == 0);
    CHECK_THROWS_AS(specialize_lee_family(r, point), ContractError);
    CHECK(check(Condition::LCBalanced, e.candidate).verdict == Verdict::holds);
}

TEST_CASE("theta ^ Omega^3 on (Y1,Z1,T1,U1,Y2,Z2,U2) picks out k1")
{
    const auto& e = catalog_entry("inoue_x_inoue");
    ParamSession s;
    auto gm = generic_metric(e.candidate.j, s, "h");
    auto k = s.fresh("k", 2);
    Form theta = Poly::variable(k[0]) * Form::dual(8, 2) + Poly::variable(k[1]) * Form::dual(8, 6);
    Form omega3 = power(gm.omega, 3);
    // Y,Z,T,U of each factor are e1..e4 and e5..e8
    std::vector<Vector> seven{unit(8, 0), unit(8, 1), unit(8, 2), unit(8, 3), unit(8, 4), unit(8, 5), unit(8, 7)};
    std::vector<Vector> six{unit(8, 0), unit(8, 1), unit(8, 3), unit(8, 4), unit(8, 5), unit(8, 7)};
    Poly lhs = evaluate(wedge(theta, omega3), seven);
    Poly rhs = Poly::variable(k[0]) * evaluate(omega3, six);
    CHECK(lhs == rhs);
    CHECK_FALSE(rhs.is_zero());
}

TEST_CASE("Kodaira-Thurston Lee family")
{
    const auto& e = catalog_entry("kodaira_thurston");
    ParamSession s;
    auto r = obstruct(e, s);
    REQUIRE(r.verdict == ObstructionVerdict::lee_form_family);
    CHECK(r.denominator == Poly::parse("h1*h4 - h2^2 - h3^2"));
    CHECK(r.forced_zero.empty());
    auto point = metric_coordinates(r.metric, e.candidate.omega);
    CHECK(specialize_lee_family(r, point) == -Form::dual(4, 3));
    CHECK(specialize_lee_family(r, point) == lee_solve(e.candidate, 1).theta);

    std::map<Var, Rational> degenerate;
    for (auto v : r.metric.params)
        degenerate[v] = 0;
    CHECK_THROWS_AS(specialize_lee_family(r, degenerate), ContractError);
}

TEST_CASE("kt x kt: unexpanded forcing minor")
{
    const auto& e = catalog_entry("kt_x_kt");
    ParamSession s;
    auto r = obstruct(e, s);
    CHECK(r.verdict == ObstructionVerdict::no_invariant_lcb_generic);
    CHECK(r.forced_zero.size() == 6);
    CHECK_FALSE(r.forcing_expanded);
    CHECK(r.forcing_rows.size() == 6);
    CHECK(forcing_value(r, r.rank_witness) != 0);
    // again the product metric lies on the exceptional set
    CHECK(forcing_value(r, metric_coordinates(r.metric, e.candidate.omega)) == 0);
}

TEST_CASE("metric_coordinates rejects forms that are not (1,1)")
{
    const auto& e = catalog_entry("kodaira_thurston");
    ParamSession s;
    auto gm = generic_metric(e.candidate.j, s, "h");
    Form mixed = wedge(Form::dual(4, 0), Form::dual(4, 2));
    CHECK_THROWS_AS(metric_coordinates(gm, mixed), ContractError);
}

TEST_CASE("symbolic family agrees with lee_solve at random metrics")
{
    for (const char* name : {"inoue_sol14", "kodaira_thurston", "iwasawa", "su2_r"}) {
        auto res = property_obstruction_oracle(catalog_entry(name), 20240607, 10);
        INFO(name << ": " << res.first_failure);
        CHECK(res.ok());
    }
}
