#include "lcbal/feasibility.hpp"

#include "lcbal/conditions.hpp"
#include "lcbal/errors.hpp"

#include <algorithm>
#include <cmath>

namespace lcbal {

std::string_view to_string(SystemKind k)
{
    switch (k) {
    case SystemKind::kahler_surface_linear: return "kahler_surface_linear";
    case SystemKind::kahler_linear: return "kahler_linear";
    case SystemKind::balanced_polynomial: return "balanced_polynomial";
    }
    return "?";
}

std::string_view to_string(FeasibilityVerdict v)
{
    switch (v) {
    case FeasibilityVerdict::feasible: return "feasible";
    case FeasibilityVerdict::infeasible_certified: return "infeasible_certified";
    case FeasibilityVerdict::infeasible_heuristic: return "infeasible_heuristic";
    case FeasibilityVerdict::unknown: return "unknown";
    }
    return "?";
}

std::vector<Form> closed_one_one_basis(const LieAlgebra& g, const ComplexStructure& j)
{
    const int dim = g.dim();
    auto basis = one_one_basis(j.matrix());
    auto idx3 = multi_indices(dim, 3);
    Matrix m(idx3.size(), basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) {
        Form d = ce_differential(g, basis[a]);
        for (std::size_t i = 0; i < idx3.size(); ++i)
            m(i, a) = d.coefficient(idx3[i]).constant_term();
    }
    std::vector<Form> out;
    for (const auto& v : nullspace(m)) {
        Form w(dim, 2);
        for (std::size_t a = 0; a < basis.size(); ++a)
            if (v[a] != 0)
                w += Poly(v[a]) * basis[a];
        out.push_back(std::move(w));
    }
    return out;
}

Form reference_omega(const Matrix& j)
{
    const int dim = static_cast<int>(j.rows());
    Form w(dim, 2);
    for (int k = 0; k < dim; ++k)
        w += wedge(pullback(Form::dual(dim, k), j), Form::dual(dim, k));
    return Poly(Rational(1, 2)) * w;
}

namespace {

Rational trace_pairing(const Matrix& a, const Matrix& b)
{
    Rational t;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a(i, k) != 0 && b(k, i) != 0)
                t += a(i, k) * b(k, i);
    return t;
}

struct AscentResult {
    std::vector<StartLog> log;
    std::vector<double> best_x;
    double best = -std::numeric_limits<double>::infinity();
};

// Maximize lambda_min(sum x_i M_i) over the unit sphere by projected
// supergradient ascent from random starts. Starts are independent and merged
// in start order.
AscentResult ascend_min_eigen(const std::vector<Eigen::MatrixXd>& mats, const numerics::SearchOptions& opt,
                              double stop_at)
{
    AscentResult out;
    const std::size_t r = mats.size();
    if (r == 0)
        return out;
    std::vector<StartLog> logs(static_cast<std::size_t>(opt.starts));
    std::vector<std::vector<double>> xs(static_cast<std::size_t>(opt.starts));
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
    for (int s = 0; s < opt.starts; ++s) {
        auto rng = numerics::start_rng(opt.seed, s);
        std::normal_distribution<double> normal;
        Eigen::VectorXd x(static_cast<Eigen::Index>(r));
        for (auto& v : x)
            v = normal(rng);
        x.normalize();
        Eigen::VectorXd best_x = x;
        double best = -std::numeric_limits<double>::infinity();
        int it = 0;
        for (; it < opt.iterations; ++it) {
            Eigen::MatrixXd m = Eigen::MatrixXd::Zero(mats[0].rows(), mats[0].cols());
            for (std::size_t i = 0; i < r; ++i)
                m += x[static_cast<Eigen::Index>(i)] * mats[i];
            Eigen::VectorXd v;
            double lambda = numerics::min_eigen(m, &v);
            if (lambda > best) {
                best = lambda;
                best_x = x;
            }
            if (best >= stop_at)
                break;
            Eigen::VectorXd grad(static_cast<Eigen::Index>(r));
            for (std::size_t i = 0; i < r; ++i)
                grad[static_cast<Eigen::Index>(i)] = v.dot(mats[i] * v);
            grad -= grad.dot(x) * x;
            x += (0.5 / std::sqrt(it + 1.0)) * grad;
            x.normalize();
        }
        logs[static_cast<std::size_t>(s)] = {s, best, it};
        xs[static_cast<std::size_t>(s)].assign(best_x.data(), best_x.data() + best_x.size());
    }
    for (int s = 0; s < opt.starts; ++s) {
        if (logs[static_cast<std::size_t>(s)].objective > out.best) {
            out.best = logs[static_cast<std::size_t>(s)].objective;
            out.best_x = xs[static_cast<std::size_t>(s)];
        }
    }
    out.log = std::move(logs);
    return out;
}

Form combine(const std::vector<Form>& basis, const Vector& x, int dim)
{
    Form w(dim, 2);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (x[i] != 0)
            w += Poly(x[i]) * basis[i];
    return w;
}

bool positive(const Form& w, const Matrix& j)
{
    return !w.is_zero() && positivity_check(w, j).positive_definite;
}

// Orthogonal projection (coefficient inner product) of w onto span(basis).
Form project(const Form& w, const std::vector<Form>& basis)
{
    const std::size_t r = basis.size();
    Matrix gram(r, r);
    Vector rhs(r);
    auto dot_forms = [](const Form& a, const Form& b) {
        Rational t;
        for (const auto& [idx, c] : a.terms())
            t += c.constant_term() * b.coefficient(idx).constant_term();
        return t;
    };
    for (std::size_t a = 0; a < r; ++a) {
        rhs[a] = dot_forms(basis[a], w);
        for (std::size_t b = 0; b < r; ++b)
            gram(a, b) = dot_forms(basis[a], basis[b]);
    }
    return combine(basis, solve(gram, rhs), w.dim());
}

// Symmetric matrix from its upper triangle, in row-major order.
Matrix symmetric_from(const Vector& upper, std::size_t n)
{
    Matrix s(n, n);
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i; k < n; ++k, ++p) {
            s(i, k) = upper[p];
            s(k, i) = upper[p];
        }
    return s;
}

std::optional<DualCertificate> certify_matrix(const Matrix& s, const std::vector<Matrix>& metrics)
{
    if (s.is_zero() || !is_positive_semidefinite(s))
        return std::nullopt;
    DualCertificate c{s, {}};
    for (const auto& m : metrics) {
        c.pairings.push_back(trace_pairing(s, m));
        if (c.pairings.back() != 0)
            return std::nullopt;
    }
    return c;
}

void finish_gate(const LieAlgebra& g, const ComplexStructure& j, FeasibilityReport& r)
{
    std::string why;
    if (verify_report(g, j, r, &why))
        return;
    // never let an unverified claim out
    r.notes.push_back("claim withdrawn by the exact soundness gate: " + why);
    r.witness.reset();
    r.dual.reset();
    r.minor_obstruction.reset();
    r.verdict = FeasibilityVerdict::unknown;
}

} // namespace

std::optional<DualCertificate> find_dual_certificate(const Matrix& j, const std::vector<Form>& subspace,
                                                     const numerics::SearchOptions& opt)
{
    const std::size_t n = j.rows();
    const std::size_t vars = n * (n + 1) / 2;
    std::vector<Matrix> metrics;
    for (const auto& w : subspace)
        metrics.push_back(concrete_metric(w, j));

    // linear conditions on the upper triangle: J^T S J = S and tr(S G_i) = 0
    std::vector<Vector> rows;
    std::vector<Matrix> unit_s;
    for (std::size_t p = 0; p < vars; ++p) {
        Vector e(vars);
        e[p] = 1;
        unit_s.push_back(symmetric_from(e, n));
    }
    Matrix jt = j.transpose();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            Vector row(vars);
            for (std::size_t p = 0; p < vars; ++p) {
                Matrix t = jt * unit_s[p] * j - unit_s[p];
                row[p] = t(a, b);
            }
            rows.push_back(row);
        }
    for (const auto& m : metrics) {
        Vector row(vars);
        for (std::size_t p = 0; p < vars; ++p)
            row[p] = trace_pairing(unit_s[p], m);
        rows.push_back(row);
    }
    auto space = nullspace(Matrix::from_rows(rows, vars));
    if (space.empty())
        return std::nullopt;
    std::vector<Matrix> sbasis;
    for (const auto& v : space)
        sbasis.push_back(symmetric_from(v, n));

    // single basis elements and their negatives
    for (const auto& s : sbasis) {
        if (auto c = certify_matrix(s, metrics))
            return c;
        if (auto c = certify_matrix(Rational(-1) * s, metrics))
            return c;
    }

    // floating-point direction, rounded to small denominators
    std::vector<Eigen::MatrixXd> fm;
    for (const auto& s : sbasis)
        fm.push_back(numerics::to_eigen(s));
    auto asc = ascend_min_eigen(fm, opt, 1.0);
    if (!asc.best_x.empty() && asc.best > -1e-6) {
        double scale = 0;
        for (double v : asc.best_x)
            scale = std::max(scale, std::abs(v));
        std::vector<double> y;
        for (double v : asc.best_x)
            y.push_back(v / scale);
        for (long den : {1L, 2L, 3L, 4L, 6L, 12L, 60L, 720L}) {
            Vector q = numerics::rationalize(y, den);
            Matrix s(n, n);
            for (std::size_t i = 0; i < sbasis.size(); ++i)
                if (q[i] != 0)
                    s = s + q[i] * sbasis[i];
            if (auto c = certify_matrix(s, metrics))
                return c;
        }
    }

    // small integer combinations, deterministic order
    const std::size_t w = sbasis.size();
    const int range = 2;
    double total = std::pow(2.0 * range + 1, static_cast<double>(w));
    if (total > 20000)
        return std::nullopt;
    std::vector<int> coef(w, -range);
    while (true) {
        bool nonzero = std::any_of(coef.begin(), coef.end(), [](int c) { return c != 0; });
        if (nonzero) {
            Matrix s(n, n);
            for (std::size_t i = 0; i < w; ++i)
                if (coef[i] != 0)
                    s = s + Rational(coef[i]) * sbasis[i];
            if (auto c = certify_matrix(s, metrics))
                return c;
        }
        std::size_t i = 0;
        while (i < w && coef[i] == range)
            coef[i++] = -range;
        if (i == w)
            break;
        ++coef[i];
    }
    return std::nullopt;
}

FeasibilityReport kahler_feasibility(const LieAlgebra& g, const ComplexStructure& j, const FeasibilityOptions& opt)
{
    const int dim = g.dim();
    const Matrix& jm = j.matrix();
    FeasibilityReport r;
    r.kind = dim == 4 ? SystemKind::kahler_surface_linear : SystemKind::kahler_linear;
    r.algebra = g.name();
    r.search = opt.search;
    r.assumptions.emplace_back(invariant_assumption);
    r.subspace = closed_one_one_basis(g, j);

    if (r.subspace.empty()) {
        r.notes.push_back("no closed (1,1)-forms");
        r.dual = DualCertificate{Matrix::identity(static_cast<std::size_t>(dim)), {}};
        r.verdict = FeasibilityVerdict::infeasible_certified;
        finish_gate(g, j, r);
        return r;
    }

    // exact starts: the supplied form and the projection of the reference form
    std::vector<Form> exact;
    if (opt.start)
        exact.push_back(project(*opt.start, r.subspace));
    exact.push_back(project(reference_omega(jm), r.subspace));
    for (const auto& w : exact) {
        if (positive(w, jm)) {
            r.witness = w;
            r.verdict = FeasibilityVerdict::feasible;
            r.notes.push_back("witness from an exact projection");
            finish_gate(g, j, r);
            return r;
        }
    }

    std::vector<Eigen::MatrixXd> mats;
    for (const auto& w : r.subspace)
        mats.push_back(numerics::to_eigen(concrete_metric(w, jm)));
    auto asc = ascend_min_eigen(mats, opt.search, 0.05);
    r.log = asc.log;
    r.best_objective = asc.best;
    if (asc.best > opt.search.tol) {
        Form w = combine(r.subspace, numerics::rationalize(asc.best_x, opt.search.max_den), dim);
        if (positive(w, jm)) {
            r.witness = w;
            r.verdict = FeasibilityVerdict::feasible;
            finish_gate(g, j, r);
            return r;
        }
        r.notes.push_back("search margin " + std::to_string(asc.best) + " but the rationalized point is not positive");
    }

    if (auto cert = find_dual_certificate(jm, r.subspace, opt.search)) {
        r.dual = std::move(*cert);
        r.verdict = FeasibilityVerdict::infeasible_certified;
        finish_gate(g, j, r);
        return r;
    }
    r.verdict = asc.best < -std::sqrt(opt.search.tol) ? FeasibilityVerdict::infeasible_heuristic
                                                     : FeasibilityVerdict::unknown;
    finish_gate(g, j, r);
    return r;
}

FeasibilityReport kahler_surface_feasibility(const LieAlgebra& g, const ComplexStructure& j,
                                             const FeasibilityOptions& opt)
{
    if (g.dim() != 4)
        throw StructuralError("kahler_surface_feasibility needs dimension 4");
    return kahler_feasibility(g, j, opt);
}

namespace {

struct BalancedSystem {
    GenericMetric metric;
    std::vector<MultiIndex> index;
    std::vector<Poly> q;
};

BalancedSystem balanced_system(const LieAlgebra& g, const ComplexStructure& j)
{
    ParamSession session;
    BalancedSystem b{generic_metric(j, session, "h"), {}, {}};
    const int n = g.dim() / 2;
    Form dw = ce_differential(g, power(b.metric.omega, n - 1));
    for (const auto& [idx, c] : dw.terms()) {
        b.index.push_back(idx);
        b.q.push_back(c);
    }
    return b;
}

Form metric_at(const GenericMetric& m, const Vector& h)
{
    return combine(m.basis, h, m.omega.dim());
}

} // namespace

FeasibilityReport balanced_feasibility(const LieAlgebra& g, const ComplexStructure& j, const FeasibilityOptions& opt)
{
    const int dim = g.dim();
    if (dim % 2 != 0 || dim < 4)
        throw StructuralError("balanced_feasibility needs even dimension >= 4");
    if (dim == 4) {
        FeasibilityReport r = kahler_surface_feasibility(g, j, opt);
        r.notes.push_back("complex dimension 2: balanced coincides with Kahler");
        return r;
    }
    const Matrix& jm = j.matrix();
    FeasibilityReport r;
    r.kind = SystemKind::balanced_polynomial;
    r.algebra = g.name();
    r.search = opt.search;
    r.assumptions.emplace_back(invariant_assumption);
    BalancedSystem sys = balanced_system(g, j);
    r.equation_index = sys.index;
    r.equations = sys.q;
    r.params = sys.metric.params;
    const int n = dim / 2;

    std::vector<Form> exact;
    if (opt.start)
        exact.push_back(*opt.start);
    exact.push_back(reference_omega(jm));
    for (const auto& w : exact) {
        if (positive(w, jm) && is_one_one(w, jm) && ce_differential(g, power(w, n - 1)).is_zero()) {
            r.witness = w;
            r.verdict = FeasibilityVerdict::feasible;
            r.notes.push_back(sys.q.empty() ? "d(Omega^{n-1}) vanishes identically: every invariant metric is balanced"
                                            : "exact start is balanced");
            finish_gate(g, j, r);
            return r;
        }
    }

    MinorTable table(sys.metric, j, opt.basis_labels);
    for (std::size_t i = 0; i < sys.q.size(); ++i) {
        auto cert = recognize(sys.q[i], table);
        if (cert && cert->sign != 0) {
            r.minor_obstruction = MinorObstruction{sys.index[i], sys.q[i], *cert};
            r.verdict = FeasibilityVerdict::infeasible_certified;
            r.notes.push_back("coefficient e^" + sys.index[i].to_string() + " of d(Omega^" + std::to_string(n - 1) +
                              ") equals " + cert->text + ", which never vanishes on positive metrics");
            finish_gate(g, j, r);
            return r;
        }
    }

    // multistart descent of sum Q_I^2 on the slice tr G = 2n inside the cone
    const auto& params = sys.metric.params;
    const std::size_t np = params.size();
    std::vector<numerics::CompiledPoly> compiled;
    for (const auto& q : sys.q)
        compiled.emplace_back(q, params);
    std::vector<Eigen::MatrixXd> gbasis;
    Eigen::VectorXd trace_dir(static_cast<Eigen::Index>(np));
    for (std::size_t a = 0; a < np; ++a) {
        gbasis.push_back(numerics::to_eigen(concrete_metric(sys.metric.basis[a], jm)));
        trace_dir[static_cast<Eigen::Index>(a)] = gbasis.back().trace();
    }
    auto gram = [&](const Eigen::VectorXd& h) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
        for (std::size_t a = 0; a < np; ++a)
            m += h[static_cast<Eigen::Index>(a)] * gbasis[a];
        return m;
    };
    auto objective = [&](const Eigen::VectorXd& h, Eigen::VectorXd* grad) {
        std::vector<double> x(h.data(), h.data() + h.size()), gq(np);
        double f = 0;
        if (grad)
            grad->setZero(static_cast<Eigen::Index>(np));
        for (const auto& c : compiled) {
            double v = c.eval_grad(x, gq);
            f += v * v;
            if (grad)
                for (std::size_t a = 0; a < np; ++a)
                    (*grad)[static_cast<Eigen::Index>(a)] += 2 * v * gq[a];
        }
        return f;
    };
    const double slice = 2.0 * n;
    std::vector<StartLog> logs(static_cast<std::size_t>(opt.search.starts));
    std::vector<Eigen::VectorXd> best_h(static_cast<std::size_t>(opt.search.starts));
#pragma omp parallel for schedule(dynamic) if (opt.search.parallel)
    for (int s = 0; s < opt.search.starts; ++s) {
        auto rng = numerics::start_rng(opt.search.seed, s);
        auto start = random_positive_point(rng, table);
        Eigen::VectorXd h(static_cast<Eigen::Index>(np));
        for (std::size_t a = 0; a < np; ++a)
            h[static_cast<Eigen::Index>(a)] = numerics::to_double(start.at(params[a]));
        h *= slice / trace_dir.dot(h);
        Eigen::VectorXd grad;
        double f = objective(h, &grad);
        int it = 0;
        double step = 1.0;
        for (; it < opt.search.iterations && f > opt.search.tol * opt.search.tol; ++it) {
            // stay on the slice: remove the trace component
            grad -= (grad.dot(trace_dir) / trace_dir.squaredNorm()) * trace_dir;
            bool moved = false;
            for (int halve = 0; halve < 40; ++halve, step *= 0.5) {
                Eigen::VectorXd cand = h - step * grad;
                if (numerics::min_eigen(gram(cand)) <= 0)
                    continue;
                Eigen::VectorXd cg;
                double fc = objective(cand, &cg);
                if (fc < f - 1e-4 * step * grad.squaredNorm()) {
                    h = cand;
                    f = fc;
                    grad = cg;
                    moved = true;
                    step *= 2;
                    break;
                }
            }
            if (!moved)
                break;
        }
        logs[static_cast<std::size_t>(s)] = {s, f, it};
        best_h[static_cast<std::size_t>(s)] = h;
    }
    r.log = logs;
    std::size_t best = 0;
    for (std::size_t s = 1; s < logs.size(); ++s)
        if (logs[s].objective < logs[best].objective)
            best = s;
    r.best_objective = logs.empty() ? r.best_objective : logs[best].objective;
    if (!logs.empty() && logs[best].objective <= opt.search.tol) {
        const auto& h = best_h[best];
        Form w = metric_at(sys.metric, numerics::rationalize(std::vector<double>(h.data(), h.data() + h.size()),
                                                             opt.search.max_den));
        if (positive(w, jm) && ce_differential(g, power(w, n - 1)).is_zero()) {
            r.witness = w;
            r.verdict = FeasibilityVerdict::feasible;
            finish_gate(g, j, r);
            return r;
        }
        r.notes.push_back("near-zero residual found but its rationalization is not an exact balanced metric");
        r.verdict = FeasibilityVerdict::unknown;
    } else {
        r.notes.push_back("no start reached residual below tolerance; best sum of squares " +
                          std::to_string(r.best_objective));
        r.verdict = FeasibilityVerdict::infeasible_heuristic;
    }
    finish_gate(g, j, r);
    return r;
}

bool verify_report(const LieAlgebra& g, const ComplexStructure& j, const FeasibilityReport& r, std::string* reason)
{
    auto fail = [&](const std::string& why) {
        if (reason)
            *reason = why;
        return false;
    };
    const Matrix& jm = j.matrix();
    const int dim = g.dim();
    const int n = dim / 2;
    const bool kahler = r.kind != SystemKind::balanced_polynomial;
    switch (r.verdict) {
    case FeasibilityVerdict::feasible: {
        if (!r.witness)
            return fail("feasible without a witness");
        if (r.dual || r.minor_obstruction)
            return fail("feasible report also carries an infeasibility certificate");
        const Form& w = *r.witness;
        if (w.dim() != dim || w.degree() != 2 || !w.is_concrete())
            return fail("witness is not a concrete 2-form on the algebra");
        if (!is_one_one(w, jm))
            return fail("witness is not of type (1,1)");
        if (!positivity_check(w, jm).positive_definite)
            return fail("witness is not positive definite");
        Form residual = kahler ? ce_differential(g, w) : ce_differential(g, power(w, n - 1));
        if (!residual.is_zero())
            return fail(kahler ? "witness is not closed" : "witness is not balanced");
        return true;
    }
    case FeasibilityVerdict::infeasible_certified: {
        if (r.witness)
            return fail("infeasible report carries a witness");
        if (kahler) {
            if (!r.dual)
                return fail("certified Kahler infeasibility without a dual certificate");
            const Matrix& s = r.dual->s;
            if (s.rows() != static_cast<std::size_t>(dim) || !s.square())
                return fail("dual certificate has the wrong shape");
            if (s.is_zero())
                return fail("dual certificate is zero");
            if (!is_positive_semidefinite(s))
                return fail("dual certificate is not positive semidefinite");
            for (const auto& w : closed_one_one_basis(g, j))
                if (trace_pairing(s, concrete_metric(w, jm)) != 0)
                    return fail("dual certificate does not annihilate the closed (1,1)-forms");
            return true;
        }
        if (!r.minor_obstruction)
            return fail("certified balanced infeasibility without a minor obstruction");
        const auto& mo = *r.minor_obstruction;
        BalancedSystem sys = balanced_system(g, j);
        auto it = std::find(sys.index.begin(), sys.index.end(), mo.index);
        if (it == sys.index.end() || sys.q[static_cast<std::size_t>(it - sys.index.begin())] != mo.q)
            return fail("obstruction polynomial is not a coefficient of d(Omega^{n-1})");
        if (mo.certificate.sign == 0)
            return fail("minor certificate has no sign");
        MinorTable table(sys.metric, j, {});
        if (!verify(mo.certificate, mo.q, table))
            return fail("minor certificate does not expand to the obstruction polynomial");
        return true;
    }
    case FeasibilityVerdict::infeasible_heuristic:
    case FeasibilityVerdict::unknown:
        if (r.witness || r.dual || r.minor_obstruction)
            return fail("heuristic or unknown verdict carries a witness or certificate");
        if (r.verdict == FeasibilityVerdict::infeasible_heuristic && r.log.empty())
            return fail("heuristic verdict without a search log");
        return true;
    }
    return fail("unrecognized verdict");
}

} // namespace lcbal
