#include "lcbal/catalog.hpp"

#include "lcbal/errors.hpp"

#include <array>

namespace lcbal {

namespace {

Form two_form(int dim, std::initializer_list<std::pair<int, int>> pairs)
{
    Form w(dim, 2);
    for (auto [a, b] : pairs)
        w.add({a - 1, b - 1}, Poly(1));
    return w;
}

/// J from pairs (a, b) meaning J e_a = e_b, J e_b = -e_a (1-based).
Matrix pairing_j(int dim, std::initializer_list<std::pair<int, int>> pairs)
{
    Matrix j(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    for (auto [a, b] : pairs) {
        auto ua = static_cast<std::size_t>(a - 1), ub = static_cast<std::size_t>(b - 1);
        j(ub, ua) = 1;
        j(ua, ub) = -1;
    }
    return j;
}

LieAlgebra inoue_algebra()
{
    // Y, Z, T, U = e1..e4; Z central
    RawAlgebra raw(4, "inoue_sol14");
    raw.add_bracket(0, 2, 0, 1); // [Y,T] = Y
    raw.add_bracket(2, 3, 3, 1); // [T,U] = U
    raw.add_bracket(0, 3, 1, 1); // [Y,U] = Z
    return LieAlgebra::validate(raw);
}

LieAlgebra kodaira_thurston_algebra()
{
    RawAlgebra raw(4, "kodaira_thurston");
    raw.add_bracket(0, 1, 2, 1);
    return LieAlgebra::validate(raw);
}

LieAlgebra iwasawa_algebra()
{
    // real form of d(phi3) = -phi1 ^ phi2 with phi1 = e1 + i e2,
    // phi2 = e3 + i e4, phi3 = e5 + i e6
    RawAlgebra raw(6, "iwasawa");
    raw.add_bracket(0, 2, 4, 1);
    raw.add_bracket(1, 3, 4, -1);
    raw.add_bracket(0, 3, 5, 1);
    raw.add_bracket(1, 2, 5, 1);
    return LieAlgebra::validate(raw);
}

LieAlgebra su2_r_algebra()
{
    RawAlgebra raw(4, "su2_r");
    raw.add_bracket(0, 1, 2, 1);
    raw.add_bracket(1, 2, 0, 1);
    raw.add_bracket(0, 2, 1, -1);
    return LieAlgebra::validate(raw);
}

std::vector<std::string> suffixed(const std::vector<std::string>& labels, const std::string& suffix)
{
    std::vector<std::string> out;
    for (const auto& l : labels)
        out.push_back(l + suffix);
    return out;
}

CatalogEntry product(const CatalogEntry& a, const CatalogEntry& b, std::string name, std::string description,
                     std::vector<ExpectedVerdict> expected, std::vector<std::string> notes = {})
{
    Hermitian h = direct_sum(a.candidate, b.candidate);
    RawAlgebra raw = h.g.constants();
    raw.set_name(name);
    h.g = LieAlgebra::validate(raw);
    auto labels = suffixed(a.basis_labels, "_1");
    auto second = suffixed(b.basis_labels, "_2");
    labels.insert(labels.end(), second.begin(), second.end());
    return CatalogEntry{std::move(name), std::move(description), std::move(h), std::move(labels),
                        std::move(expected), std::move(notes), {a.name, b.name}};
}

std::vector<CatalogEntry> build()
{
    std::vector<CatalogEntry> out;
    const auto H = Verdict::holds;
    const auto F = Verdict::fails;

    {
        auto g = inoue_algebra();
        auto j = ComplexStructure::make(g, inoue_j_search());
        out.push_back(CatalogEntry{
            "inoue_sol14",
            "solvable algebra [Y,T] = Y, [T,U] = U, [Y,U] = Z with Z central",
            Hermitian{g, j, two_form(4, {{1, 2}, {3, 4}})},
            {"Y", "Z", "T", "U"},
            {{Condition::Kahler, F, "exact: d(omega) = Y*^Z*^T*"},
             {Condition::Balanced, F, "exact: complex dimension 2, same equation as Kahler"},
             {Condition::LCK, H, "exact: theta = T*"},
             {Condition::LCBalanced, H, "exact: coincides with LCK in complex dimension 2"},
             {Condition::Vaisman, F, "exact: Koszul table, nabla theta != 0"}},
            {"J is a modeling input found by a deterministic search (see inoue_j_search); JY = Z, JT = U",
             "the family parameters of Inoue surfaces do not enter the invariant Lie-algebra model"},
            {}});
    }
    {
        auto g = kodaira_thurston_algebra();
        auto j = ComplexStructure::make(g, pairing_j(4, {{1, 2}, {3, 4}}));
        out.push_back(CatalogEntry{
            "kodaira_thurston",
            "Heisenberg(3) + R: [e1,e2] = e3, e4 central",
            Hermitian{g, j, two_form(4, {{1, 2}, {3, 4}})},
            {"e1", "e2", "e3", "e4"},
            {{Condition::Kahler, F, "exact: d(omega) = -e1^e2^e4"},
             {Condition::Balanced, F, "exact: complex dimension 2, same equation as Kahler"},
             {Condition::LCK, H, "exact: theta = -e4, closed"},
             {Condition::LCBalanced, H, "exact: coincides with LCK in complex dimension 2"},
             {Condition::Vaisman, H, "exact: Koszul table, nabla theta = 0"}},
            {},
            {}});
    }
    {
        auto g = iwasawa_algebra();
        auto j = ComplexStructure::make(g, pairing_j(6, {{1, 2}, {3, 4}, {5, 6}}));
        out.push_back(CatalogEntry{
            "iwasawa",
            "complex Heisenberg algebra, real form of d(phi3) = -phi1^phi2",
            Hermitian{g, j, two_form(6, {{1, 2}, {3, 4}, {5, 6}})},
            {"e1", "e2", "e3", "e4", "e5", "e6"},
            {{Condition::Kahler, F, "exact: d(omega) != 0"},
             {Condition::Balanced, H, "exact: d(omega^2) = 0"},
             {Condition::LCK, F, "exact: d(omega) not of the form theta^omega"},
             {Condition::LCBalanced, H, "exact: theta = 0"}},
            {"deformations of this structure are not modeled (no deformation data); extension point"},
            {}});
    }
    {
        auto g = su2_r_algebra();
        auto j = ComplexStructure::make(g, pairing_j(4, {{2, 3}, {1, 4}}));
        out.push_back(CatalogEntry{
            "su2_r",
            "su(2) + R, Lie-algebra model of the standard Hopf surface",
            Hermitian{g, j, two_form(4, {{1, 4}, {2, 3}})},
            {"e1", "e2", "e3", "e4"},
            {{Condition::Kahler, F, "exact: d(omega) != 0"},
             {Condition::Balanced, F, "exact: complex dimension 2, same equation as Kahler"},
             {Condition::LCK, H, "exact: closed Lee form"},
             {Condition::LCBalanced, H, "exact: coincides with LCK in complex dimension 2"},
             {Condition::Vaisman, H, "exact: Koszul table, nabla theta = 0"}},
            {"models the standard Hopf surface only; no claim about other Hopf manifolds",
             "J e2 = e3, J e1 = e4; the pairing J e1 = e2, J e3 = e4 is also integrable"},
            {}});
    }
    const CatalogEntry inoue = out[0];
    const CatalogEntry kt = out[1];
    const CatalogEntry su2r = out[3];
    out.push_back(product(kt, kt, "kt_x_kt", "kodaira_thurston + kodaira_thurston",
                          {{Condition::Kahler, F, "exact"},
                           {Condition::Balanced, F, "exact"},
                           {Condition::LCBalanced, H, "exact: theta = theta_1 + theta_2"},
                           {Condition::LCK, F, "exact: d(Omega) not of the form theta^Omega"}}));
    out.push_back(product(su2r, su2r, "su2r_x_su2r", "su2_r + su2_r",
                          {{Condition::Kahler, F, "exact"},
                           {Condition::Balanced, F, "exact"},
                           {Condition::LCBalanced, H, "exact: theta = theta_1 + theta_2"},
                           {Condition::LCK, F, "exact: d(Omega) not of the form theta^Omega"}}));
    out.push_back(product(inoue, inoue, "inoue_x_inoue", "inoue_sol14 + inoue_sol14 with the product metric",
                          {{Condition::Kahler, F, "exact"},
                           {Condition::Balanced, F, "exact"},
                           {Condition::LCBalanced, H, "exact: theta = T_1* + T_2*"},
                           {Condition::LCK, F, "exact: d(Omega) not of the form theta^Omega"}},
                          {"the product of the two LCK metrics is an invariant LC-balanced metric"}));
    return out;
}

} // namespace

Matrix inoue_j_search()
{
    const std::array<int, 3> values{0, -1, 1};
    std::vector<std::array<int, 4>> blocks;
    for (int a : values)
        for (int b : values)
            for (int c : values)
                for (int d : values)
                    if (a * a + b * c == -1 && a * b + b * d == 0 && c * a + d * c == 0 && c * b + d * d == -1)
                        blocks.push_back({a, b, c, d});
    auto g = inoue_algebra();
    Form w = two_form(4, {{1, 2}, {3, 4}});
    for (const auto& p : blocks)
        for (const auto& q : blocks) {
            Matrix j(4, 4);
            j(0, 0) = p[0], j(0, 1) = p[1], j(1, 0) = p[2], j(1, 1) = p[3];
            j(2, 2) = q[0], j(2, 3) = q[1], j(3, 2) = q[2], j(3, 3) = q[3];
            if (check_acs(j) || !nijenhuis(g, j).empty())
                continue;
            if (!is_one_one(w, j) || !positivity_check(w, j).positive_definite)
                continue;
            return j;
        }
    throw ContractError("inoue_j_search: no integrable block structure found");
}

const std::vector<CatalogEntry>& catalog()
{
    static const std::vector<CatalogEntry> entries = build();
    return entries;
}

const CatalogEntry& catalog_entry(std::string_view name)
{
    for (const auto& e : catalog())
        if (e.name == name)
            return e;
    throw StructuralError("unknown catalog entry '" + std::string(name) + "'");
}

std::vector<SelfcheckLine> catalog_selfcheck()
{
    std::vector<SelfcheckLine> out;
    for (const auto& e : catalog())
        for (const auto& x : e.expected) {
            Verdict actual;
            try {
                actual = check(x.condition, e.candidate).verdict;
            } catch (const NotLckError&) {
                actual = Verdict::fails;
            }
            out.push_back({e.name, x.condition, x.verdict, actual});
        }
    return out;
}

} // namespace lcbal
