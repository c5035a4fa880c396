// Exact rational scalars used throughout the kernel.
//
// `Rat` is an arbitrary-precision rational (GMP-backed); `GaussRat` is a
// complex number with rational real and imaginary parts, used wherever a
// point or group element must stay exact (supports, section evaluation,
// unipotent translates).

#ifndef MOMAP_RATIONAL_HPP
#define MOMAP_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace momap {

using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

using RatVec = std::vector<Rat>;

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }

// Exact binary value of a double as a rational.  NaN/inf rejected.
Rat rat_from_double(double x);

// Parses "p", "p/q" or a plain decimal like "-1.25" (exact).
Rat parse_rat(const std::string& s);

// Canonical "p/q" form ("p" when q == 1).
std::string format_rat(const Rat& x);

// ---------------------------------------------------------------------------
// Gaussian rationals

struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rat r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(int r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat conj() const { return {re, -im}; }
    // |z|^2, exact.
    Rat norm2() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat n = b.norm2();
        if (n == 0) throw std::domain_error("GaussRat: division by zero");
        GaussRat num = a * b.conj();
        return {num.re / n, num.im / n};
    }
    GaussRat& operator+=(const GaussRat& b) { *this = *this + b; return *this; }
    GaussRat& operator-=(const GaussRat& b) { *this = *this - b; return *this; }
    GaussRat& operator*=(const GaussRat& b) { *this = *this * b; return *this; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
};

using GaussVec = std::vector<GaussRat>;

// Parses "a", "a/b", "a+ci", "a-c/di", "ci", ... (rational components).
GaussRat parse_gauss(const std::string& s);
std::string format_gauss(const GaussRat& z);

// ---------------------------------------------------------------------------
// Small vector helpers (exact)

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool lex_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

// lcm of denominators; always positive.
BigInt common_denominator(const RatVec& v);

}  // namespace momap

#endif  // MOMAP_RATIONAL_HPP
