#include "momap/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace momap {

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("rat_from_double: non-finite value");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [1/2,1)
    // 53 doublings make the mantissa integral.
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rat r(mant);
    BigInt two(2);
    if (exp >= 0) {
        r *= Rat(boost::multiprecision::pow(two, exp));
    } else {
        r /= Rat(boost::multiprecision::pow(two, -exp));
    }
    return r;
}

Rat parse_rat(const std::string& s) {
    std::string t;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    }
    if (t.empty()) throw std::invalid_argument("parse_rat: empty string");
    auto slash = t.find('/');
    if (slash != std::string::npos) {
        BigInt p(t.substr(0, slash));
        BigInt q(t.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("parse_rat: zero denominator");
        return Rat(p) / Rat(q);
    }
    auto dot_pos = t.find('.');
    if (dot_pos != std::string::npos) {
        std::string digits = t.substr(0, dot_pos) + t.substr(dot_pos + 1);
        std::size_t frac = t.size() - dot_pos - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("parse_rat: bad decimal");
        BigInt p(digits);
        BigInt q = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac));
        return Rat(p) / Rat(q);
    }
    return Rat(BigInt(t));
}

std::string format_rat(const Rat& x) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(x);
    if (boost::multiprecision::denominator(x) != 1) {
        os << '/' << boost::multiprecision::denominator(x);
    }
    return os.str();
}

GaussRat parse_gauss(const std::string& s) {
    std::string t;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    }
    if (t.empty()) throw std::invalid_argument("parse_gauss: empty string");
    if (t.back() != 'i') return GaussRat(parse_rat(t));
    // Split "a+bi" / "a-bi" / "bi" at the sign that separates the parts
    // (skip position 0 and signs directly after '/' exponents are not a thing;
    // rational components contain no inner '+'/'-' except a leading one).
    std::string body = t.substr(0, t.size() - 1);
    for (std::size_t pos = body.size(); pos-- > 1;) {
        if ((body[pos] == '+' || body[pos] == '-') && body[pos - 1] != '/' && body[pos - 1] != '+' &&
            body[pos - 1] != '-') {
            std::string re = body.substr(0, pos);
            std::string im = body.substr(pos);
            if (im == "+" || im == "-") im += "1";
            return {parse_rat(re), parse_rat(im)};
        }
    }
    if (body.empty() || body == "+") return {Rat(0), Rat(1)};
    if (body == "-") return {Rat(0), Rat(-1)};
    return {Rat(0), parse_rat(body)};
}

std::string format_gauss(const GaussRat& z) {
    if (z.im == 0) return format_rat(z.re);
    std::string s;
    if (z.re != 0) {
        s = format_rat(z.re);
        if (z.im > 0) s += "+";
    }
    s += format_rat(z.im) + "i";
    return s;
}

BigInt common_denominator(const RatVec& v) {
    BigInt l = 1;
    for (const Rat& x : v) {
        l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(x)));
    }
    return l;
}

}  // namespace momap
