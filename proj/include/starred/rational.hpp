#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

#include "starred/errors.hpp"

namespace starred {

using Int = mpz_class;
using Rat = mpq_class;

inline double to_double(const Rat& q) { return q.get_d(); }

/// Canonicalized p/q (mpq_class(p, q) alone does not reduce).
inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Canonical "p" / "p/q" rendering (lowest terms, q > 0 suppressed when 1).
inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    Rat q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal: " + s);
    if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

/// Exact dyadic rational value of a binary64 float.
inline Rat rat_from_double_exact(double x) { return Rat(x); }

/// Complex scalar a + b*i over arbitrary-precision rationals. The coefficient
/// field of every polynomial in the library; arithmetic never rounds.
class GaussianRational {
  public:
    Rat re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long v) : re(v), im(0) {}
    GaussianRational(const Int& v) : re(v), im(0) {}
    GaussianRational(const Rat& r) : re(r), im(0) {}
    GaussianRational(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational unit_i() { return GaussianRational(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return GaussianRational(re, -im); }

    /// |re| + |im|: an exact rational majorant of the complex modulus.
    Rat abs_majorant() const { return abs(re) + abs(im); }

    Rat norm_sq() const { return re * re + im * im; }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    GaussianRational inv() const {
        Rat n = norm_sq();
        if (n == 0) throw std::domain_error("GaussianRational: division by zero");
        return GaussianRational(re / n, -im / n);
    }

    GaussianRational operator-() const { return GaussianRational(-re, -im); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rat r = re * o.re - im * o.im;
        Rat i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inv(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

/// i^e for e >= 0.
inline GaussianRational i_power(unsigned long e) {
    switch (e % 4) {
        case 0: return GaussianRational(1);
        case 1: return GaussianRational::unit_i();
        case 2: return GaussianRational(-1);
        default: return GaussianRational(Rat(0), Rat(-1));
    }
}

/// Scalar text form: "a/b", "a/b+c/di" or "a/b-c/di".
inline std::string gaussian_to_string(const GaussianRational& c) {
    if (c.im == 0) return rat_to_string(c.re);
    std::string s = rat_to_string(c.re);
    if (c.im > 0) s += "+";
    s += rat_to_string(c.im);
    s += "i";
    return s;
}

inline GaussianRational gaussian_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty scalar literal");
    // split at the sign that separates real and imaginary parts (not the
    // leading sign, not the sign inside "p/q")
    size_t split = std::string::npos;
    for (size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/') {
            split = i;
            break;
        }
    }
    if (s.back() == 'i') {
        if (split == std::string::npos)
            return GaussianRational(Rat(0), rat_from_string(s.substr(0, s.size() - 1)));
        std::string ims = s.substr(split, s.size() - 1 - split);
        if (ims == "+" || ims == "-") ims += "1";
        return GaussianRational(rat_from_string(s.substr(0, split)), rat_from_string(ims));
    }
    if (split != std::string::npos) throw ParseError("bad scalar literal: " + s);
    return GaussianRational(rat_from_string(s));
}

} // namespace starred
