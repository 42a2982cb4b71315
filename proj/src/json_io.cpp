#include "lcbal/json_io.hpp"

#include "lcbal/errors.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace lcbal {

namespace {

[[noreturn]] void bad(const std::string& why)
{
    throw StructuralError(why);
}

const Json& field(const Json& v, const char* key)
{
    if (!v.is_object() || !v.contains(key))
        bad(std::string("missing field '") + key + "'");
    return v.at(key);
}

int int_field(const Json& v, const char* key)
{
    const Json& f = field(v, key);
    if (!f.is_number_integer())
        bad(std::string("field '") + key + "' must be an integer");
    return f.get<int>();
}

void check_schema(const Json& v)
{
    if (v.is_object() && v.contains("schema") && v.at("schema") != Json(schema_version))
        bad("unsupported schema " + v.at("schema").dump());
}

int parse_index(std::string_view s)
{
    int out = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || p != s.data() + s.size())
        bad("bad index '" + std::string(s) + "'");
    return out;
}

/// "1,2,4" (1-based, strictly increasing) -> 0-based entries.
std::vector<int> parse_multi_index(const std::string& key, int dim)
{
    std::vector<int> out;
    if (key.empty())
        return out;
    std::size_t b = 0;
    while (true) {
        std::size_t e = key.find(',', b);
        int i = parse_index(std::string_view(key).substr(b, e == std::string::npos ? std::string::npos : e - b));
        if (i < 1 || i > dim)
            bad("index " + std::to_string(i) + " out of range in '" + key + "'");
        if (!out.empty() && i - 1 <= out.back())
            bad("indices must be strictly increasing in '" + key + "'");
        out.push_back(i - 1);
        if (e == std::string::npos)
            break;
        b = e + 1;
    }
    return out;
}

Json strings(const std::vector<std::string>& v)
{
    Json a = Json::array();
    for (const auto& s : v)
        a.push_back(s);
    return a;
}

Json names(const std::vector<Var>& vars)
{
    Json a = Json::array();
    for (auto v : vars)
        a.push_back(v.name());
    return a;
}

Json polys(const std::vector<Poly>& ps)
{
    Json a = Json::array();
    for (const auto& p : ps)
        a.push_back(p.to_string());
    return a;
}

Json forms(const std::vector<Form>& fs)
{
    Json a = Json::array();
    for (const auto& f : fs)
        a.push_back(to_json(f));
    return a;
}

Json rationals(const std::vector<Rational>& v)
{
    Json a = Json::array();
    for (const auto& q : v)
        a.push_back(to_string(q));
    return a;
}

Json to_json(const MinorCertificate& c)
{
    Json out;
    out["kind"] = c.kind == MinorCertificate::Kind::product ? "product" : "combination";
    out["sign"] = c.sign;
    out["text"] = c.text;
    out["terms"] = c.terms;
    out["coefficients"] = rationals(c.coefficients);
    return out;
}

Json residual_json(const Residual& r)
{
    if (const auto* f = std::get_if<Form>(&r))
        return to_json(*f);
    Json out;
    out["tensor"] = to_json(std::get<Matrix>(r));
    return out;
}

} // namespace

Rational rational_from_json(const Json& v)
{
    if (v.is_number_integer())
        return Rational(v.get<long>());
    if (!v.is_string())
        bad("rational must be a \"p/q\" string or an integer, got " + v.dump());
    return parse_rational(v.get<std::string>());
}

Json to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows.push_back(rationals(m.row(r)));
    return rows;
}

Matrix matrix_from_json(const Json& v)
{
    if (!v.is_array() || v.empty())
        bad("matrix must be a nonempty array of rows");
    std::vector<Vector> rows;
    for (const auto& row : v) {
        if (!row.is_array() || row.size() != v.at(0).size())
            bad("matrix rows must be arrays of equal length");
        Vector r;
        for (const auto& x : row)
            r.push_back(rational_from_json(x));
        rows.push_back(std::move(r));
    }
    return Matrix::from_rows(rows, rows.front().size());
}

Json to_json(const RawAlgebra& raw)
{
    Json out;
    out["schema"] = schema_version;
    out["dim"] = raw.dim();
    if (!raw.name().empty())
        out["name"] = raw.name();
    Json brackets = Json::array();
    for (const auto& [ij, vec] : raw.brackets()) {
        Json o = Json::object();
        for (std::size_t k = 0; k < vec.size(); ++k)
            if (vec[k] != 0)
                o[std::to_string(k + 1)] = to_string(vec[k]);
        if (o.empty())
            continue;
        brackets.push_back(Json{{"i", ij.first + 1}, {"j", ij.second + 1}, {"out", o}});
    }
    out["brackets"] = brackets;
    return out;
}

RawAlgebra algebra_from_json(const Json& v)
{
    check_schema(v);
    int dim = int_field(v, "dim");
    if (dim < 1 || dim > MultiIndex::max_dim)
        bad("dim out of range");
    RawAlgebra raw(dim, v.contains("name") ? field(v, "name").get<std::string>() : std::string());
    const Json& brackets = field(v, "brackets");
    if (!brackets.is_array())
        bad("'brackets' must be an array");
    std::set<std::pair<int, int>> seen;
    for (const auto& b : brackets) {
        int i = int_field(b, "i"), j = int_field(b, "j");
        if (i < 1 || j < 1 || i > dim || j > dim)
            bad("bracket index out of range: [" + std::to_string(i) + "," + std::to_string(j) + "]");
        if (i >= j)
            bad("bracket entries need i < j, got [" + std::to_string(i) + "," + std::to_string(j) + "]");
        if (!seen.insert({i, j}).second)
            bad("duplicate bracket [" + std::to_string(i) + "," + std::to_string(j) + "]");
        const Json& out = field(b, "out");
        if (!out.is_object())
            bad("'out' must be an object");
        Vector vec(static_cast<std::size_t>(dim));
        for (const auto& [key, c] : out.items()) {
            int k = parse_index(key);
            if (k < 1 || k > dim)
                bad("bracket output index out of range: " + key);
            vec[static_cast<std::size_t>(k - 1)] = rational_from_json(c);
        }
        raw.set_bracket(i - 1, j - 1, std::move(vec));
    }
    return raw;
}

Json to_json(const Form& f)
{
    Json out;
    out["schema"] = schema_version;
    out["degree"] = f.degree();
    out["dim"] = f.dim();
    auto vars = f.variables();
    if (!vars.empty())
        out["variables"] = names(std::vector<Var>(vars.begin(), vars.end()));
    Json terms = Json::object();
    for (const auto& [idx, c] : f.terms())
        terms[idx.to_string()] = c.to_string();
    out["terms"] = terms;
    return out;
}

Form form_from_json(const Json& v)
{
    check_schema(v);
    int dim = int_field(v, "dim"), degree = int_field(v, "degree");
    if (dim < 1 || dim > MultiIndex::max_dim || degree < 0)
        bad("form dim/degree out of range");
    std::set<std::string> declared;
    if (v.contains("variables"))
        for (const auto& n : field(v, "variables"))
            declared.insert(n.get<std::string>());
    const Json& terms = field(v, "terms");
    if (!terms.is_object())
        bad("'terms' must be an object");
    Form f(dim, degree);
    for (const auto& [key, c] : terms.items()) {
        auto idx = parse_multi_index(key, dim);
        if (static_cast<int>(idx.size()) != degree)
            bad("term '" + key + "' does not have degree " + std::to_string(degree));
        if (!c.is_string())
            bad("coefficient of '" + key + "' must be a string");
        Poly p = Poly::parse(c.get<std::string>());
        for (auto var : p.variables())
            if (!declared.count(var.name()))
                bad("undeclared variable '" + var.name() + "' in term '" + key + "'");
        f.add(MultiIndex::from_sorted(idx), p);
    }
    return f;
}

AlgebraFile algebra_file_from_json(const Json& v)
{
    AlgebraFile f;
    f.raw = algebra_from_json(v);
    int dim = f.raw.dim();
    if (v.contains("J")) {
        f.j = matrix_from_json(v.at("J"));
        if (f.j->rows() != static_cast<std::size_t>(dim) || f.j->cols() != static_cast<std::size_t>(dim))
            bad("J must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (v.contains("metric")) {
        f.metric = form_from_json(v.at("metric"));
        if (f.metric->dim() != dim || f.metric->degree() != 2)
            bad("metric must be a 2-form on the algebra");
    }
    if (v.contains("labels")) {
        for (const auto& l : v.at("labels"))
            f.basis_labels.push_back(l.get<std::string>());
        if (f.basis_labels.size() != static_cast<std::size_t>(dim))
            bad("'labels' must have one entry per basis vector");
    }
    return f;
}

Json to_json(const AlgebraFile& f)
{
    Json out = to_json(f.raw);
    if (f.j)
        out["J"] = to_json(*f.j);
    if (f.metric)
        out["metric"] = to_json(*f.metric);
    if (!f.basis_labels.empty())
        out["labels"] = strings(f.basis_labels);
    return out;
}

Json export_entry(const CatalogEntry& e)
{
    AlgebraFile f;
    f.raw = e.candidate.g.constants();
    f.raw.set_name(e.name);
    f.j = e.candidate.j.matrix();
    f.metric = e.candidate.omega;
    f.basis_labels = e.basis_labels;
    Json out = to_json(f);
    out["description"] = e.description;
    Json expected = Json::array();
    for (const auto& x : e.expected)
        expected.push_back(Json{{"condition", std::string(to_string(x.condition))},
                                {"verdict", std::string(to_string(x.verdict))},
                                {"provenance", x.provenance}});
    out["expected"] = expected;
    if (!e.factors.empty())
        out["factors"] = strings(e.factors);
    out["notes"] = strings(e.notes);
    return out;
}

Json to_json(const ConditionReport& r)
{
    Json out;
    out["schema"] = schema_version;
    out["condition"] = std::string(to_string(r.condition));
    out["verdict"] = std::string(to_string(r.verdict));
    if (r.lee_form)
        out["lee_form"] = to_json(*r.lee_form);
    out["residual"] = residual_json(r.residual);
    if (r.lee_differential)
        out["lee_differential"] = to_json(*r.lee_differential);
    out["degenerate"] = r.degenerate;
    out["assumptions"] = strings(r.assumptions);
    out["notes"] = strings(r.notes);
    return out;
}

Json to_json(const LeeSolution& s, int k)
{
    Json out;
    out["schema"] = schema_version;
    out["k"] = k;
    out["theta"] = to_json(s.theta);
    out["equation_residual"] = to_json(s.equation_residual);
    out["d_theta"] = to_json(s.d_theta);
    out["solves"] = s.solves();
    out["closed"] = s.closed();
    out["holds"] = s.holds();
    out["assumptions"] = strings({std::string(invariant_assumption)});
    return out;
}

Json to_json(const ProductReport& r)
{
    Json out;
    out["schema"] = schema_version;
    out["algebra"] = r.product.g.name();
    out["omega"] = to_json(r.product.omega);
    out["J"] = to_json(r.product.j.matrix());
    out["theta_first"] = to_json(r.theta_first);
    out["theta_second"] = to_json(r.theta_second);
    out["lee_sum"] = to_json(r.theta_first + r.theta_second);
    out["c_first"] = to_string(r.c_first);
    out["c_second"] = to_string(r.c_second);
    out["expansion_identity"] = r.expansion_identity;
    out["lee_matches_sum"] = r.lee_matches_sum;
    out["lcbalanced"] = to_json(r.report);
    out["lck_on_product"] = to_json(r.lck_on_product);
    out["assumptions"] = strings(r.report.assumptions);
    return out;
}

Json to_json(const ObstructionReport& r)
{
    Json out;
    out["schema"] = schema_version;
    out["algebra"] = r.algebra;
    out["complex_dim"] = r.complex_dim;
    out["closed_basis"] = forms(r.closed_basis);
    out["lee_params"] = names(r.lee_params);
    out["metric_params"] = names(r.metric.params);
    out["metric"] = to_json(r.metric.omega);
    Json fz = Json::array();
    for (const auto& f : r.forced_zero) {
        Json o;
        o["param"] = f.param.name();
        o["status"] = f.status;
        o["detail"] = f.detail;
        o["expanded"] = f.expanded;
        o["governing"] = f.expanded ? Json(f.governing.to_string()) : Json(nullptr);
        if (f.certificate)
            o["certificate"] = to_json(*f.certificate);
        fz.push_back(o);
    }
    out["forced_zero"] = fz;
    out["certified"] = names(r.certified);
    if (!r.forcing_rows.empty()) {
        Json rows = Json::array();
        for (auto i : r.forcing_rows)
            rows.push_back(r.rows[i].to_string());
        out["forcing_rows"] = rows;
        Json w = Json::object();
        for (auto v : r.metric.params)
            if (auto it = r.rank_witness.find(v); it != r.rank_witness.end())
                w[v.name()] = to_string(it->second);
        out["rank_witness"] = w;
    }
    out["determined"] = r.determined;
    if (r.determined) {
        out["denominator"] = r.denominator.to_string();
        out["numerators"] = polys(r.numerators);
        out["validity"] = r.validity.to_string();
    }
    out["residual_system"] = polys(r.residual_system);
    out["verdict"] = std::string(to_string(r.verdict));
    out["assumptions"] = strings(r.assumptions);
    out["notes"] = strings(r.notes);
    return out;
}

Json to_json(const FeasibilityReport& r)
{
    Json out;
    out["schema"] = schema_version;
    out["algebra"] = r.algebra;
    out["system_kind"] = std::string(to_string(r.kind));
    out["verdict"] = std::string(to_string(r.verdict));
    if (!r.subspace.empty())
        out["subspace"] = forms(r.subspace);
    if (!r.equations.empty()) {
        Json eqs = Json::array();
        for (std::size_t i = 0; i < r.equations.size(); ++i)
            eqs.push_back(Json{{"index", r.equation_index[i].to_string()}, {"q", r.equations[i].to_string()}});
        out["equations"] = eqs;
        out["params"] = names(r.params);
    }
    if (r.witness)
        out["witness"] = to_json(*r.witness);
    if (r.dual)
        out["dual"] = Json{{"s", to_json(r.dual->s)}, {"pairings", rationals(r.dual->pairings)}};
    if (r.minor_obstruction)
        out["minor_obstruction"] = Json{{"index", r.minor_obstruction->index.to_string()},
                                        {"q", r.minor_obstruction->q.to_string()},
                                        {"certificate", to_json(r.minor_obstruction->certificate)}};
    Json log = Json::array();
    for (const auto& l : r.log)
        log.push_back(Json{{"start", l.start}, {"objective", l.objective}, {"iterations", l.iterations}});
    out["log"] = log;
    out["best_objective"] = r.best_objective;
    out["numerics"] = Json{{"seed", r.search.seed},
                           {"starts", r.search.starts},
                           {"iterations", r.search.iterations},
                           {"tol", r.search.tol},
                           {"max_den", r.search.max_den}};
    out["assumptions"] = strings(r.assumptions);
    out["notes"] = strings(r.notes);
    return out;
}

} // namespace lcbal
