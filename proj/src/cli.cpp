#include "lcbal/cli.hpp"

#include "lcbal/catalog.hpp"
#include "lcbal/errors.hpp"
#include "lcbal/feasibility.hpp"
#include "lcbal/json_io.hpp"
#include "lcbal/obstruction.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace lcbal {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_fails = 1;
constexpr int exit_structural = 2;

constexpr const char* conventions =
    "# conventions: de^k = -sum_{i<j} c^k_ij e^i^e^j; column c of J is J e_c; g(X,Y) = omega(X,JY);\n"
    "# forms in dual-basis notation with 1-based indices (e1^e2 = e^1 ^ e^2)\n";

struct Globals {
    bool json = false;
    std::uint64_t seed = 20240607;
    int starts = 64;
    int iterations = 500;
    double tol = 1e-9;

    numerics::SearchOptions search() const
    {
        numerics::SearchOptions s;
        s.seed = seed;
        s.starts = starts;
        s.iterations = iterations;
        s.tol = tol;
        return s;
    }
};

/// An algebra from a file or the catalog, with whatever J and metric it carries.
struct Input {
    std::string name;
    AlgebraFile file;
    const CatalogEntry* entry = nullptr;
};

Input load_input(const std::string& source)
{
    Input in;
    if (std::filesystem::exists(source)) {
        std::ifstream f(source);
        if (!f)
            throw StructuralError("cannot read '" + source + "'");
        Json v;
        try {
            v = Json::parse(f);
        } catch (const Json::parse_error& e) {
            throw StructuralError("'" + source + "' is not valid JSON: " + e.what());
        }
        in.file = algebra_file_from_json(v);
        in.name = in.file.raw.name().empty() ? std::filesystem::path(source).stem().string() : in.file.raw.name();
        return in;
    }
    for (const auto& e : catalog())
        if (e.name == source) {
            in.entry = &e;
            in.name = e.name;
            in.file.raw = e.candidate.g.constants();
            in.file.j = e.candidate.j.matrix();
            in.file.metric = e.candidate.omega;
            in.file.basis_labels = e.basis_labels;
            return in;
        }
    throw StructuralError("'" + source + "' is neither a file nor a catalog entry (see 'catalog list')");
}

LieAlgebra algebra_of(const Input& in)
{
    return in.entry ? in.entry->candidate.g : LieAlgebra::validate(in.file.raw);
}

ComplexStructure structure_of(const Input& in, const LieAlgebra& g)
{
    if (in.entry)
        return in.entry->candidate.j;
    if (!in.file.j)
        throw StructuralError(in.name + ": no complex structure \"J\" given");
    try {
        return ComplexStructure::make(g, *in.file.j);
    } catch (const ContractError& e) {
        throw StructuralError(in.name + ": " + e.what());
    }
}

Hermitian hermitian_of(const Input& in)
{
    if (in.entry)
        return in.entry->candidate;
    auto g = algebra_of(in);
    auto j = structure_of(in, g);
    if (!in.file.metric)
        throw StructuralError(in.name + ": no \"metric\" given");
    if (!in.file.metric->is_concrete())
        throw StructuralError(in.name + ": the metric must not carry parameters");
    return Hermitian{g, j, *in.file.metric};
}

std::string labelled(const Form& f, const std::vector<std::string>& labels)
{
    std::string s = f.to_string();
    if (f.degree() == 1 && f.terms().size() == 1 && !labels.empty()) {
        const auto& [idx, c] = *f.terms().begin();
        int i = idx.entries().front();
        const auto& l = labels[static_cast<std::size_t>(i)];
        if (c == Poly(1) && l != "e" + std::to_string(i + 1))
            s += " (" + l + "*)";
    }
    return s;
}

std::string residual_text(const Residual& r)
{
    if (const auto* f = std::get_if<Form>(&r))
        return f->is_zero() ? "0" : f->to_string();
    const auto& m = std::get<Matrix>(r);
    if (m.is_zero())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? "; " : "[";
        for (std::size_t c = 0; c < m.cols(); ++c)
            s += (c ? " " : "") + to_string(m(i, c));
    }
    return s + "]";
}

std::string matrix_text(const Matrix& m, const std::string& indent)
{
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += indent + "[";
        for (std::size_t c = 0; c < m.cols(); ++c)
            s += (c ? " " : "") + to_string(m(i, c));
        s += "]\n";
    }
    return s;
}

void print_assumptions(std::ostream& out, const std::vector<std::string>& a)
{
    for (const auto& s : a)
        out << "assumption: " << s << "\n";
}

void print_notes(std::ostream& out, const std::vector<std::string>& notes)
{
    for (const auto& s : notes)
        out << "note: " << s << "\n";
}

void print_condition(std::ostream& out, const ConditionReport& r)
{
    out << "condition: " << to_string(r.condition) << "\n";
    out << "verdict: " << to_string(r.verdict) << (r.degenerate ? " (degenerate: theta = 0)" : "") << "\n";
    if (r.lee_form)
        out << "lee form: " << (r.lee_form->is_zero() ? "0" : r.lee_form->to_string()) << "\n";
    if (r.lee_differential)
        out << "d(theta): " << (r.lee_differential->is_zero() ? "0" : r.lee_differential->to_string()) << "\n";
    out << "residual: " << residual_text(r.residual) << "\n";
    print_notes(out, r.notes);
    print_assumptions(out, r.assumptions);
}

ConditionReport run_check(Condition c, const Hermitian& h)
{
    try {
        return check(c, h);
    } catch (const NotLckError& e) {
        ConditionReport r = e.lck_report();
        r.condition = Condition::Vaisman;
        r.verdict = Verdict::fails;
        r.notes.push_back("not LCK, hence not Vaisman");
        return r;
    }
}

void emit(std::ostream& out, const Json& j)
{
    out << j.dump(2) << "\n";
}

// ---- subcommands ----

int cmd_validate(const Globals& gl, const std::string& source, std::ostream& out)
{
    Input in = load_input(source);
    Json rep;
    rep["schema"] = schema_version;
    rep["algebra"] = in.name;
    rep["dim"] = in.file.raw.dim();
    bool ok = true;

    auto violations = jacobi_check(in.file.raw);
    Json jac = Json::array();
    for (const auto& v : violations) {
        Json a = Json::array();
        for (const auto& q : v.jacobiator)
            a.push_back(to_string(q));
        jac.push_back(Json{{"i", v.i + 1}, {"j", v.j + 1}, {"k", v.k + 1}, {"jacobiator", a}});
    }
    rep["jacobi"] = Json{{"ok", violations.empty()}, {"violations", jac}};
    ok &= violations.empty();

    std::optional<ComplexStructure> js;
    if (in.file.j && violations.empty()) {
        auto g = LieAlgebra::validate(in.file.raw);
        Json jr;
        auto acs = check_acs(*in.file.j);
        jr["acs"] = !acs.has_value();
        if (acs)
            jr["acs_failure"] = Json{{"row", acs->row + 1}, {"col", acs->col + 1}, {"j2", to_string(acs->value)}};
        Json defects = Json::array();
        if (!acs) {
            for (const auto& d : nijenhuis(g, *in.file.j)) {
                Json a = Json::array();
                for (const auto& q : d.value)
                    a.push_back(to_string(q));
                defects.push_back(Json{{"i", d.i + 1}, {"j", d.j + 1}, {"value", a}});
            }
            if (defects.empty())
                js = ComplexStructure::make(g, *in.file.j);
        }
        jr["integrable"] = !acs && defects.empty();
        jr["nijenhuis_defects"] = defects;
        rep["J"] = jr;
        ok &= js.has_value();
    }
    if (in.file.metric && js) {
        Json mr;
        bool one_one = is_one_one(*in.file.metric, js->matrix());
        mr["one_one"] = one_one;
        if (one_one && in.file.metric->is_concrete()) {
            auto p = positivity_check(*in.file.metric, js->matrix());
            mr["positive"] = p.positive_definite;
            Json minors = Json::array();
            for (const auto& q : p.minors)
                minors.push_back(to_string(q));
            mr["leading_minors"] = minors;
            ok &= p.positive_definite;
        } else {
            mr["positive"] = false;
            ok = false;
        }
        rep["metric"] = mr;
    }
    rep["valid"] = ok;

    if (gl.json) {
        emit(out, rep);
    } else {
        out << conventions;
        out << "algebra: " << in.name << " (dim " << in.file.raw.dim() << ")\n";
        out << "jacobi: " << (violations.empty() ? "ok" : std::to_string(violations.size()) + " violating triples")
            << "\n";
        for (const auto& v : violations)
            out << "  (" << v.i + 1 << "," << v.j + 1 << "," << v.k + 1 << ")\n";
        if (rep.contains("J")) {
            const auto& jr = rep["J"];
            out << "J^2 = -I: " << (jr["acs"].get<bool>() ? "ok" : "fails") << "\n";
            out << "integrable: " << (jr["integrable"].get<bool>() ? "yes" : "no") << "\n";
            for (const auto& d : jr["nijenhuis_defects"])
                out << "  N(e" << d["i"].get<int>() << ",e" << d["j"].get<int>() << ") != 0\n";
        }
        if (rep.contains("metric"))
            out << "metric positive (1,1): " << (rep["metric"]["positive"].get<bool>() ? "yes" : "no") << "\n";
        out << "valid: " << (ok ? "yes" : "no") << "\n";
    }
    return ok ? exit_ok : exit_fails;
}

int cmd_check(const Globals& gl, const std::string& source, const std::string& condition, std::ostream& out)
{
    Condition c = parse_condition(condition);
    Input in = load_input(source);
    Hermitian h = hermitian_of(in);
    ConditionReport r;
    try {
        r = run_check(c, h);
    } catch (const ContractError& e) {
        throw StructuralError(in.name + ": " + e.what());
    }
    if (gl.json) {
        Json j = to_json(r);
        j["algebra"] = in.name;
        emit(out, j);
    } else {
        out << conventions << "algebra: " << in.name << "\n";
        print_condition(out, r);
    }
    return r.verdict == Verdict::holds ? exit_ok : exit_fails;
}

int cmd_lee(const Globals& gl, const std::string& source, int k, std::ostream& out)
{
    Input in = load_input(source);
    Hermitian h = hermitian_of(in);
    LeeSolution s;
    try {
        s = lee_solve(h, k);
    } catch (const ContractError& e) {
        throw StructuralError(in.name + ": " + e.what());
    }
    if (gl.json) {
        Json j = to_json(s, k);
        j["algebra"] = in.name;
        emit(out, j);
    } else {
        out << conventions << "algebra: " << in.name << "\n";
        out << "equation: d(omega^" << k << ") = theta ^ omega^" << k << "\n";
        out << "theta: " << (s.theta.is_zero() ? "0" : s.theta.to_string()) << "\n";
        out << "equation residual: " << (s.equation_residual.is_zero() ? "0" : s.equation_residual.to_string())
            << "\n";
        out << "d(theta): " << (s.d_theta.is_zero() ? "0" : s.d_theta.to_string()) << "\n";
        out << "closed Lee form: " << (s.holds() ? "yes" : "no") << "\n";
        print_assumptions(out, {std::string(invariant_assumption)});
    }
    return s.holds() ? exit_ok : exit_fails;
}

void print_product(std::ostream& out, const ProductReport& p)
{
    int n = p.product.complex_dim();
    out << "algebra: " << p.product.g.name() << " (dim " << p.product.g.dim() << ")\n";
    out << "Omega: " << p.product.omega.to_string() << "\n";
    out << "theta1: " << (p.theta_first.is_zero() ? "0" : p.theta_first.to_string()) << "\n";
    out << "theta2: " << (p.theta_second.is_zero() ? "0" : p.theta_second.to_string()) << "\n";
    Form sum = p.theta_first + p.theta_second;
    out << "d(Omega^" << n - 1 << ") = (theta1 + theta2) ^ Omega^" << n - 1 << ": "
        << (p.report.verdict == Verdict::holds && p.lee_matches_sum ? "exact" : "fails")
        << ", residual " << residual_text(p.report.residual) << "\n";
    out << "theta1 + theta2: " << (sum.is_zero() ? "0" : sum.to_string()) << "\n";
    out << "Omega^" << n - 1 << " = " << to_string(p.c_first) << " w1^n1 ^ w2^(n2-1) + " << to_string(p.c_second)
        << " w1^(n1-1) ^ w2^n2: " << (p.expansion_identity ? "verified" : "fails") << "\n";
    out << "LC-balanced: " << to_string(p.report.verdict) << "\n";
    out << "LCK on the product: " << to_string(p.lck_on_product.verdict) << "\n";
}

bool product_ok(const ProductReport& p)
{
    return p.report.verdict == Verdict::holds && p.lee_matches_sum && p.expansion_identity &&
           is_zero(p.report.residual);
}

int cmd_product(const Globals& gl, const std::string& a, const std::string& b, std::ostream& out)
{
    Input ia = load_input(a), ib = load_input(b);
    Hermitian ha = hermitian_of(ia), hb = hermitian_of(ib);
    std::optional<ProductReport> p;
    try {
        p.emplace(product_verify(ha, hb));
    } catch (const ContractError& e) {
        if (gl.json) {
            emit(out, Json{{"schema", schema_version}, {"error", e.what()}, {"verdict", "fails"}});
        } else {
            out << "product: " << e.what() << "\n";
        }
        return exit_fails;
    }
    if (gl.json) {
        emit(out, to_json(*p));
    } else {
        out << conventions;
        print_product(out, *p);
        print_assumptions(out, p->report.assumptions);
    }
    return product_ok(*p) ? exit_ok : exit_fails;
}

ObstructionOptions obstruction_options(const Globals& gl, const Input& in)
{
    ObstructionOptions o;
    o.seed = gl.seed;
    o.basis_labels = in.file.basis_labels;
    return o;
}

void print_obstruction(std::ostream& out, const ObstructionReport& r, const std::vector<std::string>& labels)
{
    out << "algebra: " << r.algebra << " (complex dim " << r.complex_dim << ")\n";
    out << "closed 1-forms:";
    if (r.closed_basis.empty())
        out << " none";
    for (std::size_t a = 0; a < r.closed_basis.size(); ++a)
        out << (a ? ", " : " ") << labelled(r.closed_basis[a], labels);
    out << "\n";
    if (!r.lee_params.empty()) {
        out << "theta =";
        for (std::size_t a = 0; a < r.lee_params.size(); ++a)
            out << (a ? " + " : " ") << r.lee_params[a].name() << "*(" << r.closed_basis[a].to_string() << ")";
        out << "\n";
    }
    out << "metric parameters: " << r.metric.params.size() << "\n";
    for (const auto& f : r.forced_zero) {
        out << "forced zero: " << f.param.name() << " [" << f.status << "]";
        if (!f.detail.empty())
            out << " " << f.detail;
        out << "\n";
    }
    if (!r.forced_zero.empty()) {
        out << "certified:";
        if (r.certified.empty())
            out << " none";
        for (auto v : r.certified)
            out << " " << v.name();
        out << "\n";
    }
    if (r.verdict == ObstructionVerdict::lee_form_family) {
        out << "Lee family: denominator " << r.denominator.to_string() << "\n";
        for (std::size_t a = 0; a < r.lee_params.size(); ++a)
            out << "  " << r.lee_params[a].name() << " = (" << r.numerators[a].to_string() << ") / ("
                << r.denominator.to_string() << ")\n";
    }
    out << "residual system: " << r.residual_system.size() << " equations\n";
    out << "verdict: " << to_string(r.verdict) << "\n";
    print_notes(out, r.notes);
    print_assumptions(out, r.assumptions);
}

int cmd_obstruct(const Globals& gl, const std::string& source, std::ostream& out)
{
    Input in = load_input(source);
    auto g = algebra_of(in);
    auto j = structure_of(in, g);
    ParamSession session;
    auto r = extract_obstruction(g, j, session, obstruction_options(gl, in));
    if (r.algebra.empty())
        r.algebra = in.name;
    if (gl.json) {
        emit(out, to_json(r));
    } else {
        out << conventions;
        print_obstruction(out, r, in.file.basis_labels);
    }
    return exit_ok;
}

FeasibilityReport run_feasibility(const Globals& gl, const Input& in, const LieAlgebra& g,
                                  const ComplexStructure& j, const std::string& condition)
{
    FeasibilityOptions o;
    o.search = gl.search();
    o.basis_labels = in.file.basis_labels;
    if (in.file.metric && in.file.metric->is_concrete())
        o.start = in.file.metric;
    FeasibilityReport r;
    if (condition == "kahler")
        r = g.dim() == 4 ? kahler_surface_feasibility(g, j, o) : kahler_feasibility(g, j, o);
    else
        r = balanced_feasibility(g, j, o);
    if (r.algebra.empty())
        r.algebra = in.name;
    return r;
}

void print_feasibility(std::ostream& out, const FeasibilityReport& r)
{
    out << "system: " << to_string(r.kind) << "\n";
    out << "verdict: " << to_string(r.verdict) << "\n";
    if (!r.subspace.empty()) {
        out << "closed (1,1)-forms:";
        for (std::size_t i = 0; i < r.subspace.size(); ++i)
            out << (i ? ", " : " ") << r.subspace[i].to_string();
        out << "\n";
    }
    if (r.kind == SystemKind::balanced_polynomial)
        out << "equations: " << r.equations.size() << "\n";
    if (r.witness)
        out << "witness: " << r.witness->to_string() << "\n";
    if (r.dual)
        out << "dual certificate S (PSD, tr(S G) = 0 on the subspace):\n" << matrix_text(r.dual->s, "  ");
    if (r.minor_obstruction)
        out << "sign-definite coefficient at " << r.minor_obstruction->index.to_string() << ": "
            << r.minor_obstruction->certificate.text << "\n";
    if (!r.log.empty())
        out << "search: " << r.log.size() << " starts, best objective " << r.best_objective << "\n";
    print_notes(out, r.notes);
    print_assumptions(out, r.assumptions);
}

int cmd_feasible(const Globals& gl, const std::string& source, const std::string& condition, std::ostream& out)
{
    Input in = load_input(source);
    auto g = algebra_of(in);
    auto j = structure_of(in, g);
    auto r = run_feasibility(gl, in, g, j, condition);
    if (gl.json) {
        emit(out, to_json(r));
    } else {
        out << conventions << "algebra: " << in.name << "\n";
        print_feasibility(out, r);
    }
    return r.verdict == FeasibilityVerdict::feasible ? exit_ok : exit_fails;
}

int cmd_catalog(const Globals& gl, const std::string& action, const std::string& name, const std::string& output,
                std::ostream& out)
{
    if (action == "list") {
        if (gl.json) {
            Json a = Json::array();
            for (const auto& e : catalog())
                a.push_back(Json{{"name", e.name}, {"dim", e.candidate.g.dim()}, {"description", e.description}});
            emit(out, Json{{"schema", schema_version}, {"entries", a}});
        } else {
            for (const auto& e : catalog())
                out << e.name << "  dim " << e.candidate.g.dim() << "  " << e.description << "\n";
        }
        return exit_ok;
    }
    if (action == "selfcheck") {
        auto lines = catalog_selfcheck();
        bool ok = std::all_of(lines.begin(), lines.end(), [](const auto& l) { return l.ok(); });
        if (gl.json) {
            Json a = Json::array();
            for (const auto& l : lines)
                a.push_back(Json{{"entry", l.entry},
                                 {"condition", std::string(to_string(l.condition))},
                                 {"expected", std::string(to_string(l.expected))},
                                 {"actual", std::string(to_string(l.actual))}});
            emit(out, Json{{"schema", schema_version}, {"ok", ok}, {"checks", a}});
        } else {
            for (const auto& l : lines)
                out << (l.ok() ? "ok   " : "FAIL ") << l.entry << " " << to_string(l.condition) << ": expected "
                    << to_string(l.expected) << ", got " << to_string(l.actual) << "\n";
        }
        return ok ? exit_ok : exit_fails;
    }
    if (name.empty())
        throw StructuralError("catalog " + action + " needs an entry name");
    const auto& e = catalog_entry(name);
    if (action == "export") {
        std::string text = export_entry(e).dump(2) + "\n";
        if (output.empty()) {
            out << text;
        } else {
            std::ofstream f(output);
            if (!(f << text))
                throw StructuralError("cannot write '" + output + "'");
        }
        return exit_ok;
    }
    // show
    if (gl.json) {
        emit(out, export_entry(e));
        return exit_ok;
    }
    const auto& g = e.candidate.g;
    out << conventions;
    out << e.name << ": " << e.description << "\n";
    out << "dim " << g.dim() << ", basis";
    for (const auto& l : e.basis_labels)
        out << " " << l;
    out << "\n";
    for (const auto& [ij, v] : g.constants().brackets()) {
        std::string rhs;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k] != 0)
                rhs += (rhs.empty() ? "" : " + ") + (v[k] == 1 ? std::string() : to_string(v[k]) + "*") + "e" +
                       std::to_string(k + 1);
        if (!rhs.empty())
            out << "[e" << ij.first + 1 << ",e" << ij.second + 1 << "] = " << rhs << "\n";
    }
    out << "J:\n" << matrix_text(e.candidate.j.matrix(), "  ");
    out << "omega: " << e.candidate.omega.to_string() << "\n";
    for (const auto& x : e.expected)
        out << "expected " << to_string(x.condition) << ": " << to_string(x.verdict) << " (" << x.provenance << ")\n";
    print_notes(out, e.notes);
    return exit_ok;
}

// ---- reproduction scripts ----

int repro_product(const Globals& gl, std::ostream& out)
{
    Json cases = Json::array();
    bool ok = true;
    if (!gl.json)
        out << conventions;
    for (const char* name : {"kodaira_thurston", "su2_r"}) {
        const auto& e = catalog_entry(name);
        auto p = product_verify(e.candidate, e.candidate);
        ok &= product_ok(p);
        if (gl.json) {
            cases.push_back(to_json(p));
        } else {
            out << "== " << name << " x " << name << "\n";
            print_product(out, p);
        }
    }
    if (gl.json) {
        emit(out, Json{{"schema", schema_version},
                       {"script", "prop3.1"},
                       {"cases", cases},
                       {"ok", ok},
                       {"assumptions", Json::array({std::string(invariant_assumption)})}});
    } else {
        out << "summary: " << (ok ? "products of LC-balanced metrics are LC-balanced with Lee form theta1 + theta2"
                                  : "product identity FAILED")
            << "\n";
        print_assumptions(out, {std::string(invariant_assumption)});
    }
    return ok ? exit_ok : exit_fails;
}

int repro_obstruction(const Globals& gl, std::ostream& out)
{
    const auto& e = catalog_entry("inoue_x_inoue");
    const auto& h = e.candidate;
    Input in;
    in.name = e.name;
    in.entry = &e;
    in.file.basis_labels = e.basis_labels;
    in.file.metric = h.omega;

    ParamSession session;
    auto r = extract_obstruction(h.g, h.j, session, obstruction_options(gl, in));
    bool all_forced = !r.lee_params.empty() && r.forced_zero.size() == r.lee_params.size();
    bool all_certified = all_forced && r.certified.size() == r.lee_params.size();

    // with theta = 0 what remains is the balanced system
    Form dw = ce_differential(h.g, power(r.metric.omega, h.complex_dim() - 1));
    std::vector<Poly> balanced;
    for (const auto& [idx, c] : dw.terms())
        balanced.push_back(c);
    bool residual_is_balanced = all_forced && r.residual_system == balanced;

    auto f = run_feasibility(gl, in, h.g, h.j, "balanced");
    bool infeasible = f.verdict == FeasibilityVerdict::infeasible_certified ||
                      f.verdict == FeasibilityVerdict::infeasible_heuristic;

    std::string summary;
    if (all_forced && infeasible) {
        summary = "no invariant LC-balanced metric (";
        summary += all_certified ? "certified" : "generic";
        if (f.verdict == FeasibilityVerdict::infeasible_heuristic)
            summary += "; balanced infeasibility heuristic";
        summary += ")";
    } else {
        summary = "inconclusive";
    }

    // the catalog product metric is LC-balanced with theta != 0; the forced
    // zeros must fail there, i.e. it sits on the exceptional set
    auto lcb = check(Condition::LCBalanced, h);
    auto coords = metric_coordinates(r.metric, h.omega);
    Rational forcing_at = forcing_value(r, coords);
    bool exception = lcb.verdict == Verdict::holds && lcb.lee_form && !lcb.lee_form->is_zero();
    std::string caveat;
    if (exception)
        caveat = "the product metric " + h.omega.to_string() + " is LC-balanced with theta = " +
                 lcb.lee_form->to_string() + "; the forcing polynomial vanishes there (value " +
                 to_string(forcing_at) + "), so the forced zeros hold only off that set";

    if (gl.json) {
        Json j;
        j["schema"] = schema_version;
        j["script"] = "prop3.2";
        j["obstruction"] = to_json(r);
        j["residual_is_balanced_system"] = residual_is_balanced;
        j["balanced_feasibility"] = to_json(f);
        j["summary"] = summary;
        if (exception)
            j["exception"] = Json{{"metric", to_json(h.omega)},
                                  {"lee_form", to_json(*lcb.lee_form)},
                                  {"forcing_value", to_string(forcing_at)},
                                  {"caveat", caveat}};
        j["assumptions"] = Json::array({std::string(invariant_assumption)});
        emit(out, j);
    } else {
        out << conventions;
        print_obstruction(out, r, e.basis_labels);
        out << "residual system equals the balanced system: " << (residual_is_balanced ? "yes" : "no") << "\n";
        out << "balanced feasibility: " << to_string(f.verdict);
        if (f.minor_obstruction)
            out << ", coefficient at " << f.minor_obstruction->index.to_string() << " is "
                << f.minor_obstruction->certificate.text;
        out << "\n";
        out << "summary: " << summary << "\n";
        if (exception)
            out << "caveat: " << caveat << "\n";
    }
    return summary == "inconclusive" ? exit_fails : exit_ok;
}

int repro_iwasawa(const Globals& gl, std::ostream& out)
{
    const auto& h = catalog_entry("iwasawa").candidate;
    auto balanced = check(Condition::Balanced, h);
    auto kahler = check(Condition::Kahler, h);
    bool ok = balanced.verdict == Verdict::holds && is_zero(balanced.residual) &&
              kahler.verdict == Verdict::fails && !is_zero(kahler.residual);
    if (gl.json) {
        emit(out, Json{{"schema", schema_version},
                       {"script", "iwasawa"},
                       {"balanced", to_json(balanced)},
                       {"kahler", to_json(kahler)},
                       {"ok", ok}});
    } else {
        out << conventions << "algebra: iwasawa\n";
        out << "omega: " << h.omega.to_string() << "\n";
        out << "d(omega^2): " << residual_text(balanced.residual) << " -> Balanced " << to_string(balanced.verdict)
            << "\n";
        out << "d(omega): " << residual_text(kahler.residual) << " -> Kahler " << to_string(kahler.verdict) << "\n";
        out << "summary: " << (ok ? "balanced, not Kahler" : "UNEXPECTED") << "\n";
        print_assumptions(out, balanced.assumptions);
    }
    return ok ? exit_ok : exit_fails;
}

std::uint64_t default_seed()
{
    const char* env = std::getenv("LCBAL_SEED");
    if (!env || !*env)
        return 20240607;
    try {
        std::size_t used = 0;
        auto v = std::stoull(env, &used);
        if (used != std::string(env).size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw StructuralError(std::string("LCBAL_SEED is not an unsigned integer: '") + env + "'");
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Globals gl;
    try {
        gl.seed = default_seed();
    } catch (const StructuralError& e) {
        err << "error: " << e.what() << "\n";
        return exit_structural;
    }

    CLI::App app{"Exact checker for special Hermitian metrics on Lie algebras", "lcbal"};
    app.set_version_flag("--version", std::string("lcbal ") + tool_version + " (json schema " + schema_version + ")");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", gl.json, "Machine-readable JSON output");
    app.add_option("--seed", gl.seed, "Random seed (default: $LCBAL_SEED or 20240607)");
    app.add_option("--starts", gl.starts, "Multistart starts")->check(CLI::PositiveNumber);
    app.add_option("--iterations", gl.iterations, "Iterations per start")->check(CLI::PositiveNumber);
    app.add_option("--tol", gl.tol, "Floating-point tolerance for candidate searches")->check(CLI::PositiveNumber);

    std::string algebra, condition, action, name, output, script, second;
    int k = 1;
    auto add_algebra = [&](CLI::App* sub) {
        sub->add_option("--algebra,-a", algebra, "Algebra JSON file or catalog entry name")->required();
    };

    auto* validate = app.add_subcommand("validate", "Jacobi, J^2 = -I, integrability and metric checks");
    add_algebra(validate);
    auto* check_cmd = app.add_subcommand("check", "Decide a metric condition for the given metric");
    add_algebra(check_cmd);
    check_cmd->add_option("--condition,-c", condition, "kahler|balanced|lck|lcbalanced|vaisman")->required();
    auto* lee = app.add_subcommand("lee", "Solve d(omega^k) = theta ^ omega^k");
    add_algebra(lee);
    lee->add_option("--k", k, "Power of omega")->check(CLI::PositiveNumber);
    auto* product = app.add_subcommand("product", "LC-balanced product of two Hermitian algebras");
    product->add_option("first", algebra, "First factor (file or catalog name)")->required();
    product->add_option("second", second, "Second factor (file or catalog name)")->required();
    auto* obstruct = app.add_subcommand("obstruct", "Lee coefficients forced for a generic invariant metric");
    add_algebra(obstruct);
    auto* feasible = app.add_subcommand("feasible", "Invariant positive-cone feasibility");
    add_algebra(feasible);
    feasible->add_option("--condition,-c", condition, "kahler|balanced")
        ->required()
        ->check(CLI::IsMember({"kahler", "balanced"}));
    auto* cat = app.add_subcommand("catalog", "Built-in examples");
    cat->add_option("action", action, "list|show|export|selfcheck")
        ->required()
        ->check(CLI::IsMember({"list", "show", "export", "selfcheck"}));
    cat->add_option("name", name, "Entry name");
    cat->add_option("--output,-o", output, "export: write to this file");
    auto* repro = app.add_subcommand("repro", "Reproduction scripts");
    repro->add_option("script", script, "prop3.1|prop3.2|iwasawa")
        ->required()
        ->check(CLI::IsMember({"prop3.1", "prop3.2", "iwasawa"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, x;
        int code = app.exit(e, o, x);
        out << o.str();
        err << x.str();
        return code == 0 ? exit_ok : exit_structural;
    }

    try {
        if (validate->parsed())
            return cmd_validate(gl, algebra, out);
        if (check_cmd->parsed())
            return cmd_check(gl, algebra, condition, out);
        if (lee->parsed())
            return cmd_lee(gl, algebra, k, out);
        if (product->parsed())
            return cmd_product(gl, algebra, second, out);
        if (obstruct->parsed())
            return cmd_obstruct(gl, algebra, out);
        if (feasible->parsed())
            return cmd_feasible(gl, algebra, condition, out);
        if (cat->parsed())
            return cmd_catalog(gl, action, name, output, out);
        if (script == "prop3.1")
            return repro_product(gl, out);
        if (script == "prop3.2")
            return repro_obstruction(gl, out);
        return repro_iwasawa(gl, out);
    } catch (const StructuralError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const JacobiError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ContractError& e) {
        err << "error: " << e.what() << "\n";
    }
    return exit_structural;
}

} // namespace lcbal
