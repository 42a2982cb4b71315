#include "lcbal/polynomial.hpp"

#include "lcbal/errors.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace lcbal {

namespace {

struct Interner {
    std::shared_mutex mutex;
    std::unordered_map<std::string, std::uint32_t> ids;
    std::deque<std::string> names;
};

Interner& interner()
{
    static Interner table;
    return table;
}

// "h10" sorts after "h9": compare alphabetic prefix, then numeric suffix.
bool natural_less(const std::string& a, const std::string& b)
{
    auto split = [](const std::string& s) {
        std::size_t k = s.size();
        while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1])))
            --k;
        return std::pair<std::string, std::string>(s.substr(0, k), s.substr(k));
    };
    auto [pa, na] = split(a);
    auto [pb, nb] = split(b);
    if (pa != pb)
        return pa < pb;
    if (na.size() != nb.size())
        return na.size() < nb.size();
    return na < nb;
}

} // namespace

Var Var::intern(std::string_view name)
{
    if (name.empty())
        throw StructuralError("empty variable name");
    auto& t = interner();
    std::string key(name);
    {
        std::shared_lock lock(t.mutex);
        auto it = t.ids.find(key);
        if (it != t.ids.end())
            return Var(it->second);
    }
    std::unique_lock lock(t.mutex);
    auto it = t.ids.find(key);
    if (it != t.ids.end())
        return Var(it->second);
    auto id = static_cast<std::uint32_t>(t.names.size());
    t.names.push_back(key);
    t.ids.emplace(key, id);
    return Var(id);
}

Var Var::from_id(std::uint32_t id)
{
    return Var(id);
}

const std::string& Var::name() const
{
    auto& t = interner();
    std::shared_lock lock(t.mutex);
    return t.names.at(id_);
}

Var ParamSession::declare(const std::string& name)
{
    if (!names_.insert(name).second)
        throw ContractError("parameter '" + name + "' already declared in this session");
    Var v = Var::intern(name);
    order_.push_back(v);
    return v;
}

std::vector<Var> ParamSession::fresh(const std::string& prefix, std::size_t count)
{
    std::vector<Var> out;
    out.reserve(count);
    for (std::size_t i = 1; i <= count; ++i)
        out.push_back(declare(prefix + std::to_string(i)));
    return out;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Var v, std::uint32_t e)
{
    if (e > 0)
        f_.emplace_back(v.id(), e);
}

Monomial Monomial::from_factors(std::vector<std::pair<std::uint32_t, std::uint32_t>> f)
{
    Monomial m;
    m.f_ = std::move(f);
    return m;
}

std::uint32_t Monomial::degree() const
{
    std::uint32_t d = 0;
    for (const auto& [v, e] : f_)
        d += e;
    return d;
}

std::uint32_t Monomial::exponent(Var v) const
{
    for (const auto& [id, e] : f_)
        if (id == v.id())
            return e;
    return 0;
}

bool Monomial::divides(const Monomial& other) const
{
    std::size_t j = 0;
    for (const auto& [v, e] : f_) {
        while (j < other.f_.size() && other.f_[j].first < v)
            ++j;
        if (j == other.f_.size() || other.f_[j].first != v || other.f_[j].second < e)
            return false;
    }
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial m;
    m.f_.reserve(a.f_.size() + b.f_.size());
    std::size_t i = 0, j = 0;
    while (i < a.f_.size() || j < b.f_.size()) {
        if (j == b.f_.size() || (i < a.f_.size() && a.f_[i].first < b.f_[j].first)) {
            m.f_.push_back(a.f_[i++]);
        } else if (i == a.f_.size() || b.f_[j].first < a.f_[i].first) {
            m.f_.push_back(b.f_[j++]);
        } else {
            m.f_.emplace_back(a.f_[i].first, a.f_[i].second + b.f_[j].second);
            ++i;
            ++j;
        }
    }
    return m;
}

Monomial operator/(const Monomial& a, const Monomial& b)
{
    Monomial m;
    std::size_t j = 0;
    for (const auto& [v, e] : a.f_) {
        std::uint32_t sub = 0;
        if (j < b.f_.size() && b.f_[j].first == v)
            sub = b.f_[j++].second;
        if (e > sub)
            m.f_.emplace_back(v, e - sub);
    }
    return m;
}

bool operator<(const Monomial& a, const Monomial& b)
{
    auto da = a.degree(), db = b.degree();
    if (da != db)
        return da < db;
    std::size_t i = 0, j = 0;
    while (i < a.f_.size() || j < b.f_.size()) {
        std::uint32_t va = i < a.f_.size() ? a.f_[i].first : UINT32_MAX;
        std::uint32_t vb = j < b.f_.size() ? b.f_[j].first : UINT32_MAX;
        std::uint32_t v = std::min(va, vb);
        std::uint32_t ea = va == v ? a.f_[i].second : 0;
        std::uint32_t eb = vb == v ? b.f_[j].second : 0;
        if (ea != eb)
            return ea < eb;
        if (va == v)
            ++i;
        if (vb == v)
            ++j;
    }
    return false;
}

Monomial Monomial::without(Var v) const
{
    Monomial m;
    for (const auto& f : f_)
        if (f.first != v.id())
            m.f_.push_back(f);
    return m;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& c)
{
    if (c != 0)
        terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(Var v)
{
    return term(Monomial(v), Rational(1));
}

Poly Poly::term(const Monomial& m, const Rational& c)
{
    Poly p;
    if (c != 0)
        p.terms_.emplace(m, c);
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_value() const
{
    if (!is_constant())
        throw ContractError("polynomial '" + to_string() + "' is not a constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational Poly::constant_term() const
{
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Poly::total_degree() const
{
    return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

bool Poly::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    auto d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
        if (m.degree() != d)
            return false;
    return true;
}

std::set<Var> Poly::variables() const
{
    std::set<Var> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors())
            out.insert(Var::from_id(v));
    return out;
}

void Poly::add_term(const Monomial& m, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    Poly out;
    if (a.is_zero() || b.is_zero())
        return out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            out.add_term(ma * mb, ca * cb);
    return out;
}

Poly& Poly::operator*=(const Poly& o)
{
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(const Rational& s)
{
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_)
        c *= s;
    return *this;
}

Poly Poly::operator-() const
{
    Poly p = *this;
    for (auto& [m, c] : p.terms_)
        c = -c;
    return p;
}

namespace {

Rational power(const Rational& x, std::uint32_t e)
{
    Rational r = 1;
    for (std::uint32_t i = 0; i < e; ++i)
        r *= x;
    return r;
}

} // namespace

Rational Poly::evaluate(const std::map<Var, Rational>& values) const
{
    std::unordered_map<std::uint32_t, const Rational*> lookup;
    for (const auto& [v, x] : values)
        lookup.emplace(v.id(), &x);
    Rational sum;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& [v, e] : m.factors()) {
            auto it = lookup.find(v);
            if (it == lookup.end())
                throw ContractError("unbound variable in evaluation");
            t *= power(*it->second, e);
        }
        sum += t;
    }
    return sum;
}

Poly Poly::specialize(const std::map<Var, Rational>& values) const
{
    std::unordered_map<std::uint32_t, const Rational*> lookup;
    for (const auto& [v, x] : values)
        lookup.emplace(v.id(), &x);
    Poly out;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> rest;
        for (const auto& [v, e] : m.factors()) {
            auto it = lookup.find(v);
            if (it == lookup.end())
                rest.emplace_back(v, e);
            else
                t *= power(*it->second, e);
        }
        out.add_term(Monomial::from_factors(std::move(rest)), t);
    }
    return out;
}

Poly Poly::substitute(const std::map<Var, Poly>& values) const
{
    std::unordered_map<std::uint32_t, const Poly*> lookup;
    for (const auto& [v, p] : values)
        lookup.emplace(v.id(), &p);
    Poly out;
    for (const auto& [m, c] : terms_) {
        Poly t(c);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> rest;
        for (const auto& [v, e] : m.factors()) {
            auto it = lookup.find(v);
            if (it == lookup.end()) {
                rest.emplace_back(v, e);
                continue;
            }
            for (std::uint32_t k = 0; k < e; ++k)
                t = t * *it->second;
        }
        out += t * Poly::term(Monomial::from_factors(std::move(rest)), Rational(1));
    }
    return out;
}

Poly Poly::derivative(Var v) const
{
    Poly out;
    for (const auto& [m, c] : terms_) {
        auto e = m.exponent(v);
        if (e == 0)
            continue;
        out.add_term(m / Monomial(v), c * e);
    }
    return out;
}

Poly Poly::linear_coefficient(Var v) const
{
    Poly out;
    for (const auto& [m, c] : terms_)
        if (m.exponent(v) == 1)
            out.add_term(m.without(v), c);
    return out;
}

Poly Poly::without(const std::set<Var>& vs) const
{
    Poly out;
    for (const auto& [m, c] : terms_) {
        bool free = true;
        for (const auto& v : vs)
            if (m.exponent(v) != 0) {
                free = false;
                break;
            }
        if (free)
            out.add_term(m, c);
    }
    return out;
}

Poly Poly::divide_exact(const Poly& b) const
{
    if (b.is_zero())
        throw ContractError("division by the zero polynomial");
    const auto& [lm_b, lc_b] = *b.terms_.rbegin();
    Poly rem = *this;
    Poly quo;
    while (!rem.is_zero()) {
        const auto& [lm, lc] = *rem.terms_.rbegin();
        if (!lm_b.divides(lm))
            throw ContractError("inexact polynomial division");
        Poly t = Poly::term(lm / lm_b, lc / lc_b);
        quo += t;
        rem -= t * b;
    }
    return quo;
}

namespace {

struct PrintTerm {
    std::vector<std::pair<std::string, std::uint32_t>> factors;
    std::uint32_t degree = 0;
    Rational coef;
};

bool print_order(const PrintTerm& a, const PrintTerm& b)
{
    if (a.degree != b.degree)
        return a.degree > b.degree;
    std::size_t n = std::min(a.factors.size(), b.factors.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& fa = a.factors[i];
        const auto& fb = b.factors[i];
        if (fa.first != fb.first)
            return natural_less(fa.first, fb.first);
        if (fa.second != fb.second)
            return fa.second > fb.second;
    }
    return a.factors.size() < b.factors.size();
}

} // namespace

std::string Poly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::vector<PrintTerm> ts;
    ts.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        PrintTerm t;
        t.coef = c;
        t.degree = m.degree();
        for (const auto& [v, e] : m.factors())
            t.factors.emplace_back(Var::from_id(v).name(), e);
        std::sort(t.factors.begin(), t.factors.end(),
                  [](const auto& x, const auto& y) { return natural_less(x.first, y.first); });
        ts.push_back(std::move(t));
    }
    std::sort(ts.begin(), ts.end(), print_order);
    std::string out;
    bool first = true;
    for (const auto& t : ts) {
        Rational c = t.coef;
        if (first) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0)
                c = -c;
        }
        first = false;
        std::string mono;
        for (const auto& [name, e] : t.factors) {
            if (!mono.empty())
                mono += "*";
            mono += name;
            if (e > 1)
                mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            out += lcbal::to_string(c);
        else if (c == 1)
            out += mono;
        else
            out += lcbal::to_string(c) + "*" + mono;
    }
    return out;
}

std::string to_string(const Poly& p)
{
    return p.to_string();
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    Poly parse()
    {
        Poly out;
        skip();
        if (pos_ == s_.size())
            fail("empty polynomial");
        bool first = true;
        while (true) {
            skip();
            if (pos_ == s_.size())
                break;
            int sgn = 1;
            if (s_[pos_] == '+' || s_[pos_] == '-') {
                sgn = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            Poly t = term();
            if (sgn < 0)
                t = -t;
            out += t;
        }
        return out;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) const
    {
        throw StructuralError("polynomial parse error at offset " + std::to_string(pos_) + ": " + why +
                              " in '" + std::string(s_) + "'");
    }

    Poly term()
    {
        Poly t(1);
        while (true) {
            skip();
            t = t * factor();
            skip();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        return t;
    }

    Poly factor()
    {
        if (pos_ == s_.size())
            fail("unexpected end");
        char c = s_[pos_];
        if (c == '-' || c == '+') {
            ++pos_;
            skip();
            Poly f = factor();
            return c == '-' ? -f : f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t b = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                std::size_t d = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
                if (d == pos_)
                    fail("missing denominator");
            }
            if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
                fail("floating-point literals are not accepted");
            return Poly(parse_rational(s_.substr(b, pos_ - b)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t b = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            Var v = Var::intern(s_.substr(b, pos_ - b));
            std::uint32_t e = 1;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '^') {
                ++pos_;
                skip();
                std::size_t d = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
                if (d == pos_)
                    fail("missing exponent");
                e = static_cast<std::uint32_t>(std::stoul(std::string(s_.substr(d, pos_ - d))));
            }
            return Poly::term(Monomial(v, e), Rational(1));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Poly Poly::parse(std::string_view text)
{
    return PolyParser(text).parse();
}

} // namespace lcbal
