#include "properties.hpp"

#include "test_support.hpp"

#include "lcbal/obstruction.hpp"

#include <algorithm>

namespace lcbal::testing {

namespace {

Form random_mixed_form(std::mt19937_64& rng, int dim)
{
    std::uniform_int_distribution<int> deg(0, dim);
    return random_form(rng, dim, deg(rng));
}

std::string where(const CatalogEntry& e, int i)
{
    return e.name + " case " + std::to_string(i);
}

Hermitian with_metric(const Hermitian& h, Form omega)
{
    return Hermitian{h.g, h.j, std::move(omega)};
}

} // namespace

Form random_positive_metric(std::mt19937_64& rng, const Hermitian& h)
{
    const Matrix& j = h.j.matrix();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Form a = random_form(rng, h.g.dim(), 2);
        Form w = h.omega + Poly(Rational(1, 8)) * (a + j_action(a, j));
        if (positivity_check(w, j).positive_definite)
            return w;
    }
    return h.omega;
}

PropertyResult property_d_squared(const CatalogEntry& e, std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    PropertyResult r;
    const auto& g = e.candidate.g;
    for (int i = 0; i < count; ++i) {
        Form a = random_mixed_form(rng, g.dim());
        r.record(ce_differential(g, ce_differential(g, a)).is_zero(), where(e, i));
    }
    return r;
}

PropertyResult property_leibniz(const CatalogEntry& e, std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    PropertyResult r;
    const auto& g = e.candidate.g;
    for (int i = 0; i < count; ++i) {
        Form a = random_mixed_form(rng, g.dim()), b = random_mixed_form(rng, g.dim());
        Form rhs = wedge(ce_differential(g, a), b);
        Form second = wedge(a, ce_differential(g, b));
        rhs += a.degree() % 2 ? -second : second;
        r.record(ce_differential(g, wedge(a, b)) == rhs, where(e, i));
    }
    return r;
}

PropertyResult property_graded_algebra(const CatalogEntry& e, std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    PropertyResult r;
    const int n = e.candidate.g.dim();
    std::uniform_int_distribution<int> deg(0, std::min(n, 4));
    for (int i = 0; i < count; ++i) {
        int p = deg(rng), q = deg(rng), s = deg(rng);
        Form a = random_form(rng, n, p), b = random_form(rng, n, q), c = random_form(rng, n, s);
        Form ab = wedge(a, b), ba = wedge(b, a);
        bool comm = ab == ((p * q) % 2 ? -ba : ba);
        bool assoc = wedge(ab, c) == wedge(a, wedge(b, c));
        r.record(comm && assoc, where(e, i));
    }
    return r;
}

PropertyResult property_lee_bijective(const CatalogEntry& e, std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    PropertyResult r;
    const int n = e.candidate.complex_dim();
    for (int i = 0; i < count; ++i) {
        Form w = random_positive_metric(rng, e.candidate);
        Matrix a = lee_map(w, n - 1);
        r.record(a.square() && determinant(a) != 0, where(e, i));
    }
    return r;
}

PropertyResult property_koszul(const CatalogEntry& e, std::uint64_t seed, int metrics)
{
    std::mt19937_64 rng(seed);
    PropertyResult r;
    const auto& g = e.candidate.g;
    const int n = g.dim();
    for (int m = 0; m <= metrics; ++m) {
        Form w = m == 0 ? e.candidate.omega : random_positive_metric(rng, e.candidate);
        Matrix gm = concrete_metric(w, e.candidate.j.matrix());
        auto gamma = koszul_connection(g, gm);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    Vector x = unit(n, a), y = unit(n, b), z = unit(n, c);
                    // torsion: nabla_X Y - nabla_Y X - [X,Y]
                    Vector t = gamma.nabla(x, y);
                    Vector u = gamma.nabla(y, x);
                    Vector br = g.bracket(a, b);
                    bool torsion_free = true;
                    for (std::size_t k = 0; k < t.size(); ++k)
                        torsion_free &= t[k] - u[k] == br[k];
                    // compatibility for invariant g: g(nabla_X Y, Z) + g(Y, nabla_X Z) = 0
                    Rational compat = dot(gamma.nabla(x, y), gm * z) + dot(y, gm * gamma.nabla(x, z));
                    r.record(torsion_free && compat == 0,
                             e.name + " metric " + std::to_string(m) + " triple " + std::to_string(a) +
                                 std::to_string(b) + std::to_string(c));
                }
    }
    return r;
}

PropertyResult property_scale_invariance(const CatalogEntry& e, std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    PropertyResult r;
    const Condition conds[] = {Condition::Kahler, Condition::Balanced, Condition::LCK, Condition::LCBalanced,
                               Condition::Vaisman};
    std::uniform_int_distribution<int> num(1, 20), den(1, 7);
    for (int i = 0; i < count; ++i) {
        Condition c = conds[i % 5];
        Form w = i % 2 ? e.candidate.omega : random_positive_metric(rng, e.candidate);
        Rational s(num(rng), den(rng));
        s.canonicalize();
        Hermitian base = with_metric(e.candidate, w);
        Hermitian scaled = with_metric(e.candidate, Poly(s) * w);
        if (c == Condition::Vaisman && check(Condition::LCK, base).verdict != Verdict::holds) {
            bool both_throw = true;
            try {
                check(c, scaled);
                both_throw = false;
            } catch (const NotLckError&) {
            }
            r.record(both_throw, where(e, i));
            continue;
        }
        auto r1 = check(c, base), r2 = check(c, scaled);
        r.record(r1.verdict == r2.verdict && r1.lee_form == r2.lee_form, where(e, i) + " " + std::string(to_string(c)));
    }
    return r;
}

PropertyResult property_hierarchy(const CatalogEntry& e, std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (int i = 0; i <= count; ++i) {
        Form w = i == 0 ? e.candidate.omega : random_positive_metric(rng, e.candidate);
        Hermitian h = with_metric(e.candidate, w);
        auto k = check(Condition::Kahler, h);
        auto b = check(Condition::Balanced, h);
        auto lcb = check(Condition::LCBalanced, h);
        auto lck = check(Condition::LCK, h);
        bool ok = true;
        if (k.verdict == Verdict::holds)
            ok &= b.verdict == Verdict::holds && lck.verdict == Verdict::holds && lck.lee_form->is_zero();
        if (b.verdict == Verdict::holds)
            ok &= lcb.verdict == Verdict::holds && lcb.lee_form->is_zero();
        if (lck.verdict == Verdict::holds)
            ok &= lcb.verdict == Verdict::holds;
        r.record(ok, where(e, i));
    }
    return r;
}

PropertyResult property_obstruction_oracle(const CatalogEntry& e, std::uint64_t seed, int count)
{
    PropertyResult r;
    const auto& h = e.candidate;
    ParamSession session;
    ObstructionOptions opt;
    opt.seed = seed;
    opt.samples = 100;
    ObstructionReport rep = extract_obstruction(h.g, h.j, session, opt);
    if (!rep.determined) {
        r.record(false, e.name + ": obstruction undetermined");
        return r;
    }
    // dense random positive metrics; inconclusive points are redrawn
    MinorTable table(rep.metric, h.j, {});
    std::mt19937_64 rng(seed);
    const int n = h.complex_dim();
    int degenerate = 0;
    for (int i = 0; i < count;) {
        auto point = random_positive_point(rng, table);
        auto at = family_at(rep, point);
        if (at.status == FamilyStatus::inconclusive) {
            if (++degenerate > 4 * count) {
                r.record(false, e.name + ": too many degenerate samples");
                break;
            }
            continue;
        }
        Form w(h.g.dim(), 2);
        for (std::size_t a = 0; a < rep.metric.params.size(); ++a)
            w += Poly(point.at(rep.metric.params[a])) * rep.metric.basis[a];
        LeeSolution sol = lee_solve(with_metric(h, w), n - 1);
        bool ok = (at.status == FamilyStatus::solution) == sol.holds();
        if (ok && sol.holds())
            ok = at.theta == sol.theta;
        if (ok && rep.verdict == ObstructionVerdict::lee_form_family)
            ok = at.status == FamilyStatus::solution;
        r.record(ok, where(e, i));
        ++i;
    }
    return r;
}

} // namespace lcbal::testing
