#include "lcbal/poly_linsolve.hpp"

#include "lcbal/errors.hpp"

#include <algorithm>
#include <map>

namespace lcbal {

bool PolySolution::full_rank() const
{
    return std::none_of(pivot_rows.begin(), pivot_rows.end(), [](int r) { return r < 0; });
}

PolySolution solve_fraction_free(const PolyLinearSystem& system, std::size_t term_budget)
{
    const std::size_t rows = system.coeffs.size();
    const std::size_t m = system.unknowns();
    if (system.rhs.size() != rows)
        throw StructuralError("solve_fraction_free: rhs length mismatch");
    std::vector<std::vector<Poly>> a(rows);
    std::vector<int> origin(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        if (system.coeffs[i].size() != m)
            throw StructuralError("solve_fraction_free: ragged coefficient rows");
        a[i] = system.coeffs[i];
        a[i].push_back(system.rhs[i]);
        origin[i] = static_cast<int>(i);
    }

    PolySolution sol;
    sol.pivot_rows.assign(m, -1);
    Poly prev(1);
    std::size_t r = 0;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t c = 0; c < m && r < rows; ++c) {
        std::size_t best = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (a[i][c].is_zero())
                continue;
            if (best == rows || a[i][c].size() < a[best][c].size())
                best = i;
        }
        if (best == rows)
            continue;
        std::swap(a[r], a[best]);
        std::swap(origin[r], origin[best]);
        const Poly piv = a[r][c];
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r)
                continue;
            const Poly f = a[i][c];
            for (std::size_t j = 0; j <= m; ++j) {
                Poly v = piv * a[i][j];
                if (!f.is_zero() && !a[r][j].is_zero())
                    v -= f * a[r][j];
                a[i][j] = v.divide_exact(prev);
                if (term_budget != 0 && a[i][j].size() > term_budget) {
                    sol.aborted = true;
                    return sol;
                }
            }
        }
        prev = piv;
        sol.pivot_rows[c] = origin[r];
        pivot_cols.push_back(c);
        ++r;
    }
    sol.rank = r;
    sol.diagonal = prev;
    sol.pivot_cols = pivot_cols;
    for (std::size_t i = r; i < rows; ++i)
        sol.other_rows.push_back(origin[i]);
    std::sort(sol.other_rows.begin(), sol.other_rows.end());
    if (sol.full_rank()) {
        sol.denominator = prev;
        sol.numerators.resize(m);
        for (std::size_t q = 0; q < r; ++q) {
            std::size_t c = pivot_cols[q];
            if (a[q][c] != prev)
                throw ContractError("solve_fraction_free: pivot rows did not reach a common denominator");
            sol.numerators[c] = a[q][m];
        }
    }
    sol.reduced = std::move(a);
    return sol;
}

namespace {

bool divides_all(const Poly& f, const std::vector<Poly>& nums, const Poly& den, std::vector<Poly>& qn, Poly& qd)
{
    try {
        qd = den.divide_exact(f);
        qn.clear();
        for (const auto& n : nums)
            qn.push_back(n.is_zero() ? n : n.divide_exact(f));
        return true;
    } catch (const ContractError&) {
        return false;
    }
}

} // namespace

void cancel_common_factors(std::vector<Poly>& numerators, Poly& denominator, const std::vector<Poly>& candidates)
{
    if (denominator.is_zero())
        return;
    // monomial content: smallest exponent of each variable over all terms
    std::map<std::uint32_t, std::uint32_t> content;
    bool first = true;
    auto visit = [&](const Poly& p) {
        for (const auto& [mono, c] : p.terms()) {
            std::map<std::uint32_t, std::uint32_t> here(mono.factors().begin(), mono.factors().end());
            if (first) {
                content = here;
                first = false;
                continue;
            }
            for (auto it = content.begin(); it != content.end();) {
                auto h = here.find(it->first);
                if (h == here.end()) {
                    it = content.erase(it);
                    continue;
                }
                it->second = std::min(it->second, h->second);
                ++it;
            }
        }
    };
    visit(denominator);
    for (const auto& n : numerators)
        visit(n);
    if (!content.empty()) {
        Poly m(1);
        for (auto [id, e] : content)
            for (std::uint32_t k = 0; k < e; ++k)
                m *= Poly::variable(Var::from_id(id));
        denominator = denominator.divide_exact(m);
        for (auto& n : numerators)
            if (!n.is_zero())
                n = n.divide_exact(m);
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& f : candidates) {
            if (f.is_constant())
                continue;
            std::vector<Poly> qn;
            Poly qd;
            if (divides_all(f, numerators, denominator, qn, qd)) {
                numerators = std::move(qn);
                denominator = std::move(qd);
                progress = true;
            }
        }
    }
    // normalize the sign and scale of the leading coefficient of the denominator
    Rational lead = denominator.terms().rbegin()->second;
    if (lead != 1) {
        Rational inv = 1 / lead;
        denominator *= inv;
        for (auto& n : numerators)
            n *= inv;
    }
}

} // namespace lcbal
