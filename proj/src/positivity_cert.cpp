#include "lcbal/positivity_cert.hpp"

#include "lcbal/errors.hpp"
#include "lcbal/numerics.hpp"

#include <algorithm>
#include <map>

namespace lcbal {

namespace {

std::vector<Vector> random_points(const GenericMetric& m, std::uint64_t seed, int count)
{
    // generic points in parameter space; positivity is irrelevant for the
    // polynomial identity filter
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9);
    std::vector<Vector> pts;
    for (int k = 0; k < count; ++k) {
        Vector v;
        for (std::size_t i = 0; i < m.params.size(); ++i)
            v.push_back(Rational(num(rng) * 7 + 3, 5 + (num(rng) + 9) % 4));
        pts.push_back(std::move(v));
    }
    return pts;
}

std::map<Var, Rational> as_map(const std::vector<Var>& vars, const Vector& v)
{
    std::map<Var, Rational> out;
    for (std::size_t i = 0; i < vars.size(); ++i)
        out[vars[i]] = v[i];
    return out;
}

} // namespace

MinorTable::MinorTable(const GenericMetric& metric, const ComplexStructure& j,
                       const std::vector<std::string>& basis_labels)
    : metric_(metric), j_(j.matrix()), frame_(complex_frame(j.matrix()))
{
    for (std::size_t a = 0; a < frame_.size(); ++a) {
        std::string name = "v" + std::to_string(a + 1);
        auto nz = std::count_if(frame_[a].begin(), frame_[a].end(), [](const Rational& x) { return x != 0; });
        for (std::size_t k = 0; k < frame_[a].size() && nz == 1; ++k)
            if (frame_[a][k] == 1 && k < basis_labels.size())
                name = basis_labels[k];
        labels_.push_back(name);
    }
    for (const auto& b : metric_.basis)
        pivots_.push_back(b.terms().begin()->first);
    auto h = hermitian_matrix(metric_.omega, j.matrix(), frame_);
    const auto n = frame_.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i))
                subset.push_back(static_cast<int>(i));
        minors_.push_back({subset, principal_minor(h, subset)});
    }
    std::stable_sort(minors_.begin(), minors_.end(),
                     [](const Minor& a, const Minor& b) { return a.subset.size() < b.subset.size(); });
}

std::string MinorTable::describe(const std::vector<int>& subset) const
{
    std::string s = "det H[";
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i)
            s += ",";
        auto k = static_cast<std::size_t>(subset[i]);
        s += labels_[k];
    }
    return s + "]";
}

std::optional<MinorCertificate> recognize(const Poly& p, const MinorTable& table, int max_factors)
{
    if (p.is_zero() || !p.is_homogeneous())
        return std::nullopt;
    const int deg = p.total_degree();
    const auto& minors = table.minors();
    const auto& vars = table.metric().params;
    auto pts = random_points(table.metric(), 0x5eed, 4);
    std::vector<Rational> pv;
    for (const auto& x : pts)
        pv.push_back(p.evaluate(as_map(vars, x)));
    std::vector<std::vector<Rational>> mv(minors.size());
    for (std::size_t i = 0; i < minors.size(); ++i)
        for (const auto& x : pts)
            mv[i].push_back(minors[i].value.evaluate(as_map(vars, x)));

    auto describe_term = [&](const std::vector<std::size_t>& t) {
        std::string s;
        for (std::size_t i = 0; i < t.size(); ++i)
            s += (i ? "*" : "") + table.describe(minors[t[i]].subset);
        return s;
    };

    // products of up to max_factors minors with matching total degree
    std::vector<std::size_t> term;
    std::optional<MinorCertificate> found;
    std::function<void(std::size_t, int)> search = [&](std::size_t from, int remaining) {
        if (found)
            return;
        if (remaining == 0) {
            Rational c;
            bool ok = true;
            for (std::size_t k = 0; k < pts.size() && ok; ++k) {
                Rational prod = 1;
                for (auto i : term)
                    prod *= mv[i][k];
                if (prod == 0) {
                    ok = pv[k] == 0;
                    continue;
                }
                Rational ratio = pv[k] / prod;
                if (k == 0 || c == 0)
                    c = ratio;
                ok = ratio == c;
            }
            if (!ok || c == 0)
                return;
            MinorCertificate cert;
            cert.kind = MinorCertificate::Kind::product;
            cert.terms = {term};
            cert.coefficients = {c};
            cert.sign = sgn(c);
            cert.text = to_string(c) + "*" + describe_term(term);
            if (verify(cert, p, table))
                found = std::move(cert);
            return;
        }
        if (static_cast<int>(term.size()) >= max_factors)
            return;
        for (std::size_t i = from; i < minors.size(); ++i) {
            int d = static_cast<int>(minors[i].subset.size());
            if (d > remaining)
                break;
            term.push_back(i);
            search(i, remaining - d);
            term.pop_back();
        }
    };
    search(0, deg);
    if (found)
        return found;

    // nonnegative combination of single minors of the right degree
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < minors.size(); ++i)
        if (static_cast<int>(minors[i].subset.size()) == deg)
            cand.push_back(i);
    if (cand.empty())
        return std::nullopt;
    std::map<Monomial, std::size_t> row_of;
    auto row = [&](const Monomial& m) {
        auto it = row_of.find(m);
        if (it != row_of.end())
            return it->second;
        std::size_t r = row_of.size();
        row_of.emplace(m, r);
        return r;
    };
    for (auto i : cand)
        for (const auto& [mono, c] : minors[i].value.terms())
            row(mono);
    for (const auto& [mono, c] : p.terms())
        row(mono);
    Matrix a(row_of.size(), cand.size());
    Vector b(row_of.size());
    for (std::size_t k = 0; k < cand.size(); ++k)
        for (const auto& [mono, c] : minors[cand[k]].value.terms())
            a(row_of.at(mono), k) = c;
    for (const auto& [mono, c] : p.terms())
        b[row_of.at(mono)] = c;
    auto sol = solve_any(a, b);
    if (!sol.ok)
        return std::nullopt;
    MinorCertificate cert;
    cert.kind = MinorCertificate::Kind::combination;
    int s = 0;
    for (std::size_t k = 0; k < cand.size(); ++k) {
        if (sol.x[k] == 0)
            continue;
        int sk = sgn(sol.x[k]);
        if (s != 0 && sk != s)
            return std::nullopt;
        s = sk;
        cert.terms.push_back({cand[k]});
        cert.coefficients.push_back(sol.x[k]);
        if (!cert.text.empty())
            cert.text += " + ";
        cert.text += to_string(sol.x[k]) + "*" + describe_term({cand[k]});
    }
    if (s == 0)
        return std::nullopt;
    cert.sign = s;
    if (!verify(cert, p, table))
        return std::nullopt;
    return cert;
}

bool verify(const MinorCertificate& cert, const Poly& p, const MinorTable& table)
{
    if (cert.terms.size() != cert.coefficients.size() || cert.terms.empty())
        return false;
    int s = sgn(cert.coefficients.front());
    Poly sum;
    for (std::size_t t = 0; t < cert.terms.size(); ++t) {
        if (sgn(cert.coefficients[t]) != s)
            return false;
        Poly prod(cert.coefficients[t]);
        for (auto i : cert.terms[t]) {
            if (i >= table.minors().size())
                return false;
            prod *= table.minors()[i].value;
        }
        sum += prod;
    }
    return s != 0 && s == cert.sign && sum == p;
}

std::map<Var, Rational> random_positive_point(std::mt19937_64& rng, const MinorTable& table)
{
    const auto& gm = table.metric();
    const Matrix& j = table.j();
    const std::size_t dim = static_cast<std::size_t>(gm.omega.dim());
    std::uniform_int_distribution<int> coef(-4, 4), weight(1, 10), extra(1, static_cast<int>(dim));
    // (J^* a) ^ a is semipositive: g(X,X) = a(X)^2 + a(JX)^2. Dense coefficients w(i,j), i < j.
    Matrix w(dim, dim);
    auto add_semipositive = [&](const Rational& scale, const Vector& a) {
        Vector b(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t l = 0; l < dim; ++l)
                if (a[l] != 0 && j(l, i) != 0)
                    b[i] += a[l] * j(l, i);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = i + 1; k < dim; ++k)
                w(i, k) += scale * (b[i] * a[k] - b[k] * a[i]);
    };
    Rational base(1, weight(rng));
    for (std::size_t k = 0; k < dim; ++k) {
        Vector e(dim);
        e[k] = 1;
        add_semipositive(base, e);
    }
    for (int t = extra(rng); t > 0; --t) {
        Vector a(dim);
        for (auto& x : a)
            x = coef(rng);
        Rational scale(weight(rng), 4);
        scale.canonicalize();
        add_semipositive(scale, a);
    }
    std::map<Var, Rational> out;
    Matrix check(dim, dim);
    for (std::size_t a = 0; a < gm.basis.size(); ++a) {
        auto idx = table.pivots()[a].entries();
        Rational h = w(idx[0], idx[1]);
        out[gm.params[a]] = h;
        if (h == 0)
            continue;
        for (const auto& [mi, c] : gm.basis[a].terms()) {
            auto e = mi.entries();
            check(e[0], e[1]) += h * c.constant_term();
        }
    }
    if (check != w)
        throw ContractError("random_positive_point: sample is not in the span of the (1,1) basis");
    return out;
}

int SampleResult::sign() const
{
    if (samples > 0 && positive == samples)
        return 1;
    if (samples > 0 && negative == samples)
        return -1;
    return 0;
}

SampleResult sample_sign(const Poly& p, const MinorTable& table, std::uint64_t seed, int samples)
{
    return sample_sign([&](const std::map<Var, Rational>& h) { return p.evaluate(h); }, table, seed, samples);
}

SampleResult sample_sign(const std::function<Rational(const std::map<Var, Rational>&)>& f, const MinorTable& table,
                         std::uint64_t seed, int samples)
{
    // one generator per sample keeps the result independent of the thread count
    std::vector<int> sign(static_cast<std::size_t>(std::max(samples, 0)));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < samples; ++i) {
        auto rng = numerics::start_rng(seed, i);
        Rational v = f(random_positive_point(rng, table));
        sign[i] = v > 0 ? 1 : (v < 0 ? -1 : 0);
    }
    SampleResult r;
    for (int s : sign) {
        ++r.samples;
        if (s > 0)
            ++r.positive;
        else if (s < 0)
            ++r.negative;
        else
            ++r.zero;
    }
    return r;
}

} // namespace lcbal
