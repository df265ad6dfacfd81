#pragma once

// Exact arithmetic building blocks shared across the library: big integers,
// rationals, Gaussian rationals, certified square-root bounds, and a few
// deterministic utilities (hashing, float formatting).
//
// Everything geometric downstream (interval gaps, center separations,
// disc/annulus comparisons) is decided in exact rational arithmetic; doubles
// only enter when a value is finally consumed by quadrature or reporting.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fhc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& x) { return numerator(x); }
inline Int rat_den(const Rat& x) { return denominator(x); }

inline Int rat_floor(const Rat& x) {
    Int n = numerator(x), d = denominator(x);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

inline Int rat_ceil(const Rat& x) {
    Int n = numerator(x), d = denominator(x);
    Int q = n / d;
    if (n > 0 && q * d != n) ++q;
    return q;
}

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }
inline double to_double(const Int& x) { return x.template convert_to<double>(); }

// Exact: every double is a dyadic rational.
inline Rat rat_from_double(double x) { return Rat(x); }

// floor(sqrt(n)) for n >= 0.
inline Int int_sqrt_floor(const Int& n) {
    if (n < 0) throw std::domain_error("int_sqrt_floor: negative argument");
    return boost::multiprecision::sqrt(n);
}

// Rational u with u^2 >= x >= 0, within relative 2^-48 of sqrt(x).
inline Rat sqrt_upper(const Rat& x) {
    if (x < 0) throw std::domain_error("sqrt_upper: negative argument");
    if (x == 0) return Rat(0);
    const int shift = 96;  // two extra bits per output bit
    Int scaled = (numerator(x) << shift) / denominator(x) + 1;
    Int r = int_sqrt_floor(scaled) + 1;
    Rat u(r, Int(1) << (shift / 2));
    // r = floor(sqrt(scaled)) + 1 => r^2 > scaled >= x * 2^shift, so u^2 > x.
    return u;
}

// Rational l with 0 <= l^2 <= x, within relative 2^-48 of sqrt(x).
inline Rat sqrt_lower(const Rat& x) {
    if (x < 0) throw std::domain_error("sqrt_lower: negative argument");
    if (x == 0) return Rat(0);
    const int shift = 96;
    Int scaled = (numerator(x) << shift) / denominator(x);
    Int r = int_sqrt_floor(scaled);
    return Rat(r, Int(1) << (shift / 2));
}

// ---------------------------------------------------------------------------
// Gaussian rationals a + b*i with a, b in Q.
// ---------------------------------------------------------------------------

struct GaussianRational {
    Rat re;
    Rat im;

    GaussianRational() = default;
    GaussianRational(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussianRational(long v) : re(v), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }
    // |c|^2, exact.
    Rat norm() const { return re * re + im * im; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rat n = b.norm();
        if (n == 0) throw std::domain_error("GaussianRational: division by zero");
        GaussianRational c = a * b.conj();
        return {c.re / n, c.im / n};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline Rat abs_upper(const GaussianRational& c) { return sqrt_upper(c.norm()); }
inline Rat abs_lower(const GaussianRational& c) { return sqrt_lower(c.norm()); }

inline std::complex<double> to_complex(const GaussianRational& c) {
    return {to_double(c.re), to_double(c.im)};
}

// Height of a rational: max(|numerator|, denominator).
inline Int rat_height(const Rat& x) {
    Int n = numerator(x);
    if (n < 0) n = -n;
    Int d = denominator(x);
    return n > d ? n : d;
}

inline Int height(const GaussianRational& c) {
    Int a = rat_height(c.re), b = rat_height(c.im);
    return a > b ? a : b;
}

// ---------------------------------------------------------------------------
// Deterministic utilities.
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 1469598103934665603ull) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Shortest-round-trip-ish fixed formatting; identical bytes for identical
// doubles, used by every CSV/report writer.
std::string format_double(double x);

std::string to_decimal_string(const Rat& x, int digits = 20);

}  // namespace fhc
