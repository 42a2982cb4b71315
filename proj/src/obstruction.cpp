#include "lcbal/obstruction.hpp"

#include "lcbal/conditions.hpp"
#include "lcbal/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace lcbal {

std::string_view to_string(ObstructionVerdict v)
{
    switch (v) {
    case ObstructionVerdict::no_invariant_lcb_generic: return "no_invariant_lcb_generic";
    case ObstructionVerdict::lee_form_family: return "lee_form_family";
    case ObstructionVerdict::undetermined: return "undetermined";
    }
    return "?";
}

std::map<Var, Rational> metric_coordinates(const GenericMetric& m, const Form& omega)
{
    std::map<Var, Rational> out;
    Form rebuilt(omega.dim(), 2);
    for (std::size_t a = 0; a < m.basis.size(); ++a) {
        Rational h = omega.coefficient(m.basis[a].terms().begin()->first).constant_term();
        out[m.params[a]] = h;
        rebuilt += Poly(h) * m.basis[a];
    }
    if (rebuilt != omega)
        throw ContractError("metric_coordinates: form is not of type (1,1)");
    return out;
}

namespace {

void certify(ObstructionReport& r, const MinorTable& table, const ObstructionOptions& opt)
{
    if (r.forced_zero.empty())
        return;
    auto mark = [&](ForcedZero& f, const std::string& detail, MinorCertificate cert) {
        f.status = "principal-minor";
        f.certificate = std::move(cert);
        f.detail = detail;
        r.certified.push_back(f.param);
    };

    // a sign-definite governing polynomial makes k_a = 0 hold on the whole cone
    for (auto& f : r.forced_zero) {
        if (!f.expanded)
            continue;
        auto cert = recognize(f.governing, table);
        if (cert)
            mark(f, "k = 0 wherever " + cert->text + " != 0, which holds on every positive metric", *cert);
    }

    // single-unknown homogeneous rows: P_{I,a} k_a = 0 with P sign-definite
    std::set<std::uint32_t> known;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            if (!r.q[i].is_zero())
                continue;
            std::vector<std::size_t> live;
            for (std::size_t a = 0; a < r.lee_params.size(); ++a)
                if (!r.p[i][a].is_zero() && !known.count(r.lee_params[a].id()))
                    live.push_back(a);
            if (live.size() != 1)
                continue;
            const std::size_t a = live.front();
            auto it = std::find_if(r.forced_zero.begin(), r.forced_zero.end(),
                                   [&](const ForcedZero& f) { return f.param == r.lee_params[a]; });
            if (it == r.forced_zero.end() || !it->status.empty())
                continue;
            auto cert = recognize(r.p[i][a], table);
            if (!cert)
                continue;
            mark(*it, "row e^" + r.rows[i].to_string() + ": (" + cert->text + ")*" + it->param.name() + " = 0", *cert);
            known.insert(r.lee_params[a].id());
            progress = true;
        }
    }

    // forced zeros usually share one governing polynomial
    std::vector<std::pair<const ForcedZero*, SampleResult>> seen;
    for (auto& f : r.forced_zero) {
        if (!f.status.empty())
            continue;
        auto hit = std::find_if(seen.begin(), seen.end(), [&](const auto& s) {
            return s.first->expanded == f.expanded && s.first->governing == f.governing;
        });
        SampleResult sampled;
        if (hit != seen.end()) {
            sampled = hit->second;
        } else {
            sampled = f.expanded ? sample_sign(f.governing, table, opt.seed, opt.samples)
                                 : sample_sign([&](const std::map<Var, Rational>& h) { return forcing_value(r, h); },
                                               table, opt.seed, opt.samples);
            seen.emplace_back(&f, sampled);
        }
        if (sampled.sign() != 0) {
            f.status = "sampled-positive";
            f.detail = "governing polynomial had constant sign on " + std::to_string(sampled.samples) +
                       " random positive metrics (not a proof)";
        } else {
            f.status = "generic";
            f.detail = "forced for metrics off the zero set of the governing polynomial; its signs on " +
                       std::to_string(sampled.samples) + " samples: +" + std::to_string(sampled.positive) + " -" +
                       std::to_string(sampled.negative) + " 0:" + std::to_string(sampled.zero);
        }
    }
}

Matrix specialize_rows(const ObstructionReport& r, const std::vector<std::size_t>& rows,
                       const std::map<Var, Rational>& h)
{
    Matrix out(rows.size(), r.lee_params.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t a = 0; a < r.lee_params.size(); ++a)
            out(i, a) = r.p[rows[i]][a].evaluate(h);
    return out;
}

// Exact rank of the homogeneous block at a few random integer points. A
// nonzero minor at one point proves the minor polynomial is nonzero.
std::size_t homogeneous_rank(ObstructionReport& r, std::size_t count, std::uint64_t seed)
{
    std::vector<std::size_t> all(count);
    std::iota(all.begin(), all.end(), 0);
    std::size_t best = 0;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(-9, 9);
    for (int attempt = 0; attempt < 3 && best < r.lee_params.size(); ++attempt) {
        std::map<Var, Rational> h;
        for (const auto& v : r.metric.params)
            h[v] = Rational(coord(rng));
        RowEchelon e = rref(specialize_rows(r, all, h).transpose());
        if (e.pivots.size() > best) {
            best = e.pivots.size();
            r.forcing_rows = e.pivots;
            r.rank_witness = h;
        }
    }
    return best;
}

} // namespace

ObstructionReport extract_obstruction(const LieAlgebra& g, const ComplexStructure& j, ParamSession& session,
                                      const ObstructionOptions& opt)
{
    const int dim = g.dim();
    if (dim % 2 != 0 || dim < 4)
        throw StructuralError("extract_obstruction needs even dimension >= 4");
    if (j.dim() != dim)
        throw StructuralError("complex structure does not match the algebra");
    ObstructionReport r;
    r.algebra = g.name();
    r.complex_dim = dim / 2;
    r.assumptions.emplace_back(invariant_assumption);
    r.closed_basis = closed_one_form_basis(g);
    r.lee_params = session.fresh("k", r.closed_basis.size());
    r.metric = generic_metric(j, session, "h");
    if (r.closed_basis.empty())
        r.notes.push_back("no closed invariant 1-forms: the Lee form vanishes and the question reduces to balanced");

    const int n = r.complex_dim;
    Form w = power(r.metric.omega, n - 1);
    Form dw = ce_differential(g, w);
    std::vector<Form> bw;
    for (const auto& b : r.closed_basis)
        bw.push_back(wedge(b, w));

    // rows with Q = 0 first so that pivots come from homogeneous equations when possible
    std::vector<MultiIndex> homogeneous, other;
    for (auto idx : multi_indices(dim, 2 * n - 1)) {
        bool any = !dw.coefficient(idx).is_zero();
        bool anyp = std::any_of(bw.begin(), bw.end(), [&](const Form& f) { return !f.coefficient(idx).is_zero(); });
        if (!any && !anyp)
            continue;
        (any ? other : homogeneous).push_back(idx);
    }
    r.rows = homogeneous;
    r.rows.insert(r.rows.end(), other.begin(), other.end());
    PolyLinearSystem sys;
    for (auto idx : r.rows) {
        r.q.push_back(dw.coefficient(idx));
        std::vector<Poly> row;
        for (const auto& f : bw)
            row.push_back(f.coefficient(idx));
        r.p.push_back(row);
    }
    const std::size_t m = r.lee_params.size();
    r.numerators.assign(m, Poly());

    // stage 1: unknowns forced to zero by the homogeneous equations alone
    PolyLinearSystem hom;
    for (std::size_t i = 0; i < r.rows.size() && r.q[i].is_zero(); ++i) {
        hom.coeffs.push_back(r.p[i]);
        hom.rhs.emplace_back();
    }
    std::vector<bool> forced(m, false);
    if (!hom.coeffs.empty() && homogeneous_rank(r, hom.coeffs.size(), opt.seed) == m) {
        // every unknown is forced; the forcing polynomial is one square minor
        PolyLinearSystem square;
        for (auto i : r.forcing_rows) {
            square.coeffs.push_back(r.p[i]);
            square.rhs.emplace_back();
        }
        r.homogeneous = solve_fraction_free(square, opt.term_budget);
        if (r.homogeneous.aborted) {
            r.forcing_expanded = false;
            r.forcing = Poly();
            r.notes.push_back("forcing minor not expanded (over " + std::to_string(opt.term_budget) +
                              " terms); shown nonzero by exact evaluation at a rational point");
        } else {
            r.forcing = r.homogeneous.diagonal;
        }
        for (std::size_t a = 0; a < m; ++a) {
            forced[a] = true;
            r.forced_zero.push_back({r.lee_params[a], "", "", r.forcing, r.forcing_expanded, std::nullopt});
        }
    } else if (!hom.coeffs.empty()) {
        r.forcing_rows.clear();
        r.rank_witness.clear();
        r.homogeneous = solve_fraction_free(hom, opt.term_budget);
        if (r.homogeneous.aborted) {
            r.verdict = ObstructionVerdict::undetermined;
            r.notes.push_back("symbolic elimination exceeded the term budget of " + std::to_string(opt.term_budget));
            return r;
        }
        r.forcing = r.homogeneous.diagonal;
        for (std::size_t qrow = 0; qrow < r.homogeneous.rank; ++qrow) {
            const auto& row = r.homogeneous.reduced[qrow];
            std::size_t c = r.homogeneous.pivot_cols[qrow];
            bool alone = true;
            for (std::size_t jcol = 0; jcol < m; ++jcol)
                alone &= jcol == c || row[jcol].is_zero();
            if (alone) {
                forced[c] = true;
                r.forced_zero.push_back({r.lee_params[c], "", "", r.forcing, true, std::nullopt});
            }
        }
    }

    // stage 2: the remaining unknowns from all equations
    std::vector<std::size_t> free;
    for (std::size_t a = 0; a < m; ++a)
        if (!forced[a])
            free.push_back(a);
    if (!free.empty()) {
        PolyLinearSystem sys;
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            std::vector<Poly> row;
            for (auto a : free)
                row.push_back(r.p[i][a]);
            sys.coeffs.push_back(std::move(row));
            sys.rhs.push_back(r.q[i]);
        }
        PolySolution sol = solve_fraction_free(sys, opt.term_budget);
        if (sol.aborted) {
            r.verdict = ObstructionVerdict::undetermined;
            r.notes.push_back("symbolic elimination exceeded the term budget of " + std::to_string(opt.term_budget));
            return r;
        }
        if (!sol.full_rank()) {
            r.verdict = ObstructionVerdict::undetermined;
            r.notes.push_back("the Lee coefficients are not determined by the equations for a generic metric");
            for (std::size_t i = 0; i < r.rows.size(); ++i)
                if (!r.q[i].is_zero())
                    r.residual_system.push_back(r.q[i]);
            return r;
        }
        std::vector<Poly> nums = sol.numerators;
        Poly den = sol.denominator;
        r.validity = den;
        std::vector<Poly> candidates;
        for (std::size_t qrow = 0; qrow < sol.rank; ++qrow)
            candidates.push_back(sol.reduced[qrow][sol.pivot_cols[qrow]]);
        for (const auto& row : sys.coeffs)
            for (const auto& e : row)
                if (!e.is_zero() && e.size() <= 8)
                    candidates.push_back(e);
        cancel_common_factors(nums, den, candidates);
        r.denominator = den;
        for (std::size_t k = 0; k < free.size(); ++k)
            r.numerators[free[k]] = nums[k];
        for (std::size_t k = 0; k < free.size(); ++k)
            if (nums[k].is_zero())
                r.forced_zero.push_back({r.lee_params[free[k]], "", "", r.validity, true, std::nullopt});
    }
    r.determined = true;

    bool all_zero = std::all_of(r.numerators.begin(), r.numerators.end(), [](const Poly& p) { return p.is_zero(); });
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        Poly res;
        if (all_zero) {
            res = r.q[i];
        } else {
            res = r.denominator * r.q[i];
            for (std::size_t a = 0; a < m; ++a)
                if (!r.numerators[a].is_zero())
                    res -= r.numerators[a] * r.p[i][a];
        }
        if (!res.is_zero())
            r.residual_system.push_back(res);
    }
    r.verdict = r.residual_system.empty() ? ObstructionVerdict::lee_form_family
                                          : ObstructionVerdict::no_invariant_lcb_generic;

    std::vector<std::string> labels = opt.basis_labels;
    MinorTable table(r.metric, j, labels);
    certify(r, table, opt);
    return r;
}

Rational forcing_value(const ObstructionReport& r, const std::map<Var, Rational>& h)
{
    if (r.forcing_expanded)
        return r.forcing.evaluate(h);
    return determinant(specialize_rows(r, r.forcing_rows, h));
}

FamilyPoint family_at(const ObstructionReport& r, const std::map<Var, Rational>& h)
{
    FamilyPoint out;
    if (!r.determined)
        return out;
    const bool trivial =
        std::all_of(r.numerators.begin(), r.numerators.end(), [](const Poly& p) { return p.is_zero(); });
    Rational den = trivial ? Rational(1) : r.denominator.evaluate(h);
    if (den == 0)
        return out;
    bool vanishes = std::all_of(r.residual_system.begin(), r.residual_system.end(),
                                [&](const Poly& q) { return q.evaluate(h) == 0; });
    if (vanishes) {
        out.status = FamilyStatus::solution;
        out.theta = Form(r.metric.omega.dim(), 1);
        for (std::size_t a = 0; a < r.closed_basis.size(); ++a)
            if (!r.numerators[a].is_zero())
                out.theta += Poly(r.numerators[a].evaluate(h) / den) * r.closed_basis[a];
        return out;
    }
    bool stage_one = !r.forcing_rows.empty() || r.homogeneous.rank > 0;
    if (r.validity.evaluate(h) != 0 && (!stage_one || forcing_value(r, h) != 0))
        out.status = FamilyStatus::no_solution;
    return out;
}

Form specialize_lee_family(const ObstructionReport& r, const std::map<Var, Rational>& h)
{
    if (!r.determined)
        throw ContractError("specialize_lee_family: Lee coefficients are not determined");
    auto at = family_at(r, h);
    if (at.status != FamilyStatus::solution)
        throw ContractError(at.status == FamilyStatus::no_solution
                                ? "specialize_lee_family: no closed Lee form at this metric"
                                : "specialize_lee_family: the solution formula degenerates at this metric");
    return at.theta;
}

} // namespace lcbal
