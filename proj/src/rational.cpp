#include "lcbal/rational.hpp"

#include "lcbal/errors.hpp"

#include <cmath>
#include <cctype>

namespace lcbal {

Rational parse_rational(std::string_view text)
{
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1])))
        --e;
    std::string_view s = text.substr(b, e - b);
    if (s.empty())
        throw StructuralError("empty rational literal");

    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-')
        ++i;
    bool seen_digit = false;
    bool seen_slash = false;
    bool digit_after_slash = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            seen_digit = true;
            if (seen_slash)
                digit_after_slash = true;
        } else if (c == '/' && !seen_slash && seen_digit) {
            seen_slash = true;
        } else {
            throw StructuralError("invalid rational literal '" + std::string(s) + "'");
        }
    }
    if (!seen_digit || (seen_slash && !digit_after_slash))
        throw StructuralError("invalid rational literal '" + std::string(s) + "'");

    std::string buf(s[0] == '+' ? s.substr(1) : s);
    Rational q;
    if (q.set_str(buf, 10) != 0)
        throw StructuralError("invalid rational literal '" + std::string(s) + "'");
    if (q.get_den() == 0)
        throw StructuralError("zero denominator in '" + std::string(s) + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_str();
}

Rational rationalize(double x, long max_den)
{
    if (!std::isfinite(x))
        throw ContractError("cannot rationalize a non-finite value");
    if (max_den < 1)
        max_den = 1;
    // Convergents p/q of the continued fraction of x.
    long double v = x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rational best(static_cast<long>(std::llround(x)));
    for (int it = 0; it < 64; ++it) {
        long double a = std::floor(v);
        if (std::fabs(a) > 9e15L)
            break;
        long long ai = static_cast<long long>(a);
        long long q2 = ai * q1 + q0;
        if (q2 > max_den) {
            // semiconvergent with the largest admissible partial quotient
            long long k = (q1 == 0) ? 0 : (max_den - q0) / q1;
            if (k > 0) {
                Rational semi(mpz_class(std::to_string(k * p1 + p0)), mpz_class(std::to_string(k * q1 + q0)));
                semi.canonicalize();
                Rational conv(mpz_class(std::to_string(p1)), mpz_class(std::to_string(q1)));
                conv.canonicalize();
                Rational xr(x);
                best = (abs(semi - xr) < abs(conv - xr)) ? semi : conv;
            }
            return best;
        }
        long long p2 = ai * p1 + p0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        best = Rational(mpz_class(std::to_string(p1)), mpz_class(std::to_string(q1)));
        best.canonicalize();
        long double frac = v - a;
        if (frac < 1e-18L)
            break;
        v = 1.0L / frac;
    }
    return best;
}

} // namespace lcbal
