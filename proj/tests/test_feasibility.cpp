#include "doctest.h"

#include "lcbal/catalog.hpp"
#include "lcbal/conditions.hpp"
#include "lcbal/errors.hpp"
#include "lcbal/feasibility.hpp"
#include "test_support.hpp"

using namespace lcbal;
using namespace lcbal::testing;

namespace {

Matrix diag(std::initializer_list<int> d)
{
    Matrix m(d.size(), d.size());
    std::size_t i = 0;
    for (int v : d) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

FeasibilityOptions options_for(const CatalogEntry& e)
{
    FeasibilityOptions o;
    o.start = e.candidate.omega;
    o.basis_labels = e.basis_labels;
    o.search.starts = 8;
    o.search.iterations = 100;
    return o;
}

} // namespace

TEST_CASE("closed (1,1)-forms")
{
    auto g = abelian(4);
    auto j = ComplexStructure::make(g, standard_j(4));
    CHECK(closed_one_one_basis(g, j).size() == 4);

    const auto& kt = catalog_entry("kodaira_thurston");
    for (const auto& w : closed_one_one_basis(kt.candidate.g, kt.candidate.j)) {
        CHECK(ce_differential(kt.candidate.g, w).is_zero());
        CHECK(is_one_one(w, kt.candidate.j.matrix()));
    }
    CHECK(reference_omega(standard_j(6)) == standard_omega(6));
}

TEST_CASE("flat abelian algebras are feasible with the flat witness")
{
    for (int dim : {4, 6}) {
        auto g = abelian(dim);
        auto j = ComplexStructure::make(g, standard_j(dim));
        auto k = kahler_feasibility(g, j);
        CHECK(k.verdict == FeasibilityVerdict::feasible);
        REQUIRE(k.witness);
        CHECK(*k.witness == standard_omega(dim));
        CHECK(verify_report(g, j, k));
        auto b = balanced_feasibility(g, j);
        CHECK(b.verdict == FeasibilityVerdict::feasible);
        CHECK(verify_report(g, j, b));
    }
    auto g4 = abelian(4);
    CHECK(kahler_surface_feasibility(g4, ComplexStructure::make(g4, standard_j(4))).kind ==
          SystemKind::kahler_surface_linear);
    auto g6 = abelian(6);
    CHECK_THROWS_AS(kahler_surface_feasibility(g6, ComplexStructure::make(g6, standard_j(6))), StructuralError);
}

TEST_CASE("non-Kahler surfaces carry exact dual certificates")
{
    struct Case {
        const char* name;
        Matrix s;
    };
    for (const auto& c : {Case{"inoue_sol14", diag({1, 1, 0, 0})}, Case{"kodaira_thurston", diag({0, 0, 1, 1})}}) {
        const auto& e = catalog_entry(c.name);
        auto r = kahler_surface_feasibility(e.candidate.g, e.candidate.j, options_for(e));
        INFO(c.name);
        REQUIRE(r.verdict == FeasibilityVerdict::infeasible_certified);
        REQUIRE(r.dual);
        CHECK(r.dual->s == c.s);
        CHECK(verify_report(e.candidate.g, e.candidate.j, r));
    }
}

TEST_CASE("balanced feasibility on the catalog")
{
    const auto& iw = catalog_entry("iwasawa");
    auto r = balanced_feasibility(iw.candidate.g, iw.candidate.j, options_for(iw));
    CHECK(r.verdict == FeasibilityVerdict::feasible);
    REQUIRE(r.witness);
    CHECK(*r.witness == iw.candidate.omega);
    CHECK(r.equations.empty());

    const auto& ii = catalog_entry("inoue_x_inoue");
    auto b = balanced_feasibility(ii.candidate.g, ii.candidate.j, options_for(ii));
    CHECK(b.verdict == FeasibilityVerdict::infeasible_certified);
    REQUIRE(b.minor_obstruction);
    CHECK(b.minor_obstruction->certificate.text == "6*det H[Y_1,T_1,Y_2]");
    CHECK(verify_report(ii.candidate.g, ii.candidate.j, b));

    // in complex dimension 2 the question is the Kahler one
    const auto& kt = catalog_entry("kodaira_thurston");
    auto s = balanced_feasibility(kt.candidate.g, kt.candidate.j, options_for(kt));
    CHECK(s.kind == SystemKind::kahler_surface_linear);
    CHECK(s.verdict == FeasibilityVerdict::infeasible_certified);
}

TEST_CASE("soundness gate rejects tampered reports")
{
    auto g = abelian(4);
    auto j = ComplexStructure::make(g, standard_j(4));
    auto good = kahler_feasibility(g, j);
    REQUIRE(verify_report(g, j, good));
    std::string why;

    auto negative = good;
    negative.witness = -standard_omega(4);
    CHECK_FALSE(verify_report(g, j, negative, &why));
    CHECK(why == "witness is not positive definite");

    auto mixed = good;
    mixed.witness = standard_omega(4) + wedge(Form::dual(4, 0), Form::dual(4, 2));
    CHECK_FALSE(verify_report(g, j, mixed, &why));
    CHECK(why == "witness is not of type (1,1)");

    auto missing = good;
    missing.witness.reset();
    CHECK_FALSE(verify_report(g, j, missing));

    // a feasible system cannot be certified infeasible: no PSD S annihilates it
    auto fake = good;
    fake.witness.reset();
    fake.verdict = FeasibilityVerdict::infeasible_certified;
    fake.dual = DualCertificate{diag({1, 1, 0, 0}), {}};
    CHECK_FALSE(verify_report(g, j, fake, &why));
    CHECK(why == "dual certificate does not annihilate the closed (1,1)-forms");
    fake.dual = DualCertificate{diag({1, -1, 0, 0}), {}};
    CHECK_FALSE(verify_report(g, j, fake, &why));
    CHECK(why == "dual certificate is not positive semidefinite");
    fake.dual = DualCertificate{Matrix(4, 4), {}};
    CHECK_FALSE(verify_report(g, j, fake, &why));

    // a non-closed witness on Kodaira-Thurston
    const auto& kt = catalog_entry("kodaira_thurston");
    FeasibilityReport claim;
    claim.kind = SystemKind::kahler_surface_linear;
    claim.verdict = FeasibilityVerdict::feasible;
    claim.witness = kt.candidate.omega;
    CHECK_FALSE(verify_report(kt.candidate.g, kt.candidate.j, claim, &why));
    CHECK(why == "witness is not closed");

    // a balanced obstruction must be an actual coefficient
    const auto& ii = catalog_entry("inoue_x_inoue");
    auto b = balanced_feasibility(ii.candidate.g, ii.candidate.j, options_for(ii));
    REQUIRE(b.minor_obstruction);
    auto forged = b;
    forged.minor_obstruction->q = 2 * forged.minor_obstruction->q;
    CHECK_FALSE(verify_report(ii.candidate.g, ii.candidate.j, forged));
    forged = b;
    forged.minor_obstruction->certificate.coefficients[0] = -forged.minor_obstruction->certificate.coefficients[0];
    CHECK_FALSE(verify_report(ii.candidate.g, ii.candidate.j, forged));
}

TEST_CASE("heuristic verdicts are never promoted")
{
    // Kodaira-Thurston's closed (1,1)-forms reach the cone boundary (e^12 is
    // semidefinite) but not its interior: a degenerate system
    const auto& kt = catalog_entry("kodaira_thurston");
    auto closed = closed_one_one_basis(kt.candidate.g, kt.candidate.j);
    Matrix jm = kt.candidate.j.matrix();
    bool semidefinite_member = false;
    for (const auto& w : closed)
        semidefinite_member |= is_positive_semidefinite(concrete_metric(w, jm)) && !concrete_metric(w, jm).is_zero();
    CHECK(semidefinite_member);
    auto r = kahler_feasibility(kt.candidate.g, kt.candidate.j, options_for(kt));
    CHECK(r.verdict != FeasibilityVerdict::feasible);
    CHECK(r.best_objective < 1e-6);

    FeasibilityReport h;
    h.kind = SystemKind::kahler_surface_linear;
    h.verdict = FeasibilityVerdict::infeasible_heuristic;
    CHECK_FALSE(verify_report(kt.candidate.g, kt.candidate.j, h)); // no log
    h.log.push_back({0, -0.5, 10});
    CHECK(verify_report(kt.candidate.g, kt.candidate.j, h));
    h.dual = r.dual;
    CHECK_FALSE(verify_report(kt.candidate.g, kt.candidate.j, h)); // certificate on a heuristic verdict
    h.dual.reset();
    h.witness = kt.candidate.omega;
    CHECK_FALSE(verify_report(kt.candidate.g, kt.candidate.j, h));
}

TEST_CASE("searches are seed-deterministic")
{
    const auto& kt = catalog_entry("kt_x_kt");
    auto o = options_for(kt);
    o.start.reset();
    auto a = kahler_feasibility(kt.candidate.g, kt.candidate.j, o);
    o.search.parallel = false;
    auto b = kahler_feasibility(kt.candidate.g, kt.candidate.j, o);
    REQUIRE(a.log.size() == b.log.size());
    for (std::size_t i = 0; i < a.log.size(); ++i) {
        CHECK(a.log[i].objective == b.log[i].objective);
        CHECK(a.log[i].iterations == b.log[i].iterations);
    }
    CHECK(a.verdict == b.verdict);
}
