#pragma once

#include <variant>
#include <vector>

#include "starred/multiindex.hpp"
#include "starred/rational.hpp"

namespace starred {

/// Univariate polynomial in the deformation parameter over GaussianRational,
/// coefficients ascending, no trailing zeros.
class HPoly {
  public:
    std::vector<GaussianRational> c;

    HPoly() = default;
    HPoly(GaussianRational c0) {
        if (!c0.is_zero()) c.push_back(std::move(c0));
    }
    explicit HPoly(std::vector<GaussianRational> cs) : c(std::move(cs)) { trim(); }

    static HPoly zero() { return HPoly(); }
    static HPoly one() { return HPoly(GaussianRational(1)); }
    static HPoly hbar() { return HPoly(std::vector<GaussianRational>{GaussianRational(0), GaussianRational(1)}); }
    /// 1 - k*hbar
    static HPoly one_minus_k_hbar(long k) {
        return HPoly(std::vector<GaussianRational>{GaussianRational(1), GaussianRational(-k)});
    }

    int degree() const { return (int)c.size() - 1; } // -1 for the zero polynomial
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == GaussianRational(1); }
    bool is_constant() const { return c.size() <= 1; }

    const GaussianRational& leading() const {
        if (c.empty()) throw std::domain_error("HPoly: leading of zero");
        return c.back();
    }

    GaussianRational eval(const GaussianRational& x) const {
        GaussianRational r(0);
        for (size_t k = c.size(); k-- > 0;) r = r * x + c[k];
        return r;
    }
    std::complex<double> eval(const std::complex<double>& x) const {
        std::complex<double> r = 0;
        for (size_t k = c.size(); k-- > 0;) r = r * x + c[k].to_complex();
        return r;
    }

    HPoly conj() const {
        HPoly r(*this);
        for (auto& x : r.c) x = x.conj();
        return r;
    }

    HPoly operator-() const {
        HPoly r(*this);
        for (auto& x : r.c) x = -x;
        return r;
    }

    friend HPoly operator+(const HPoly& a, const HPoly& b) {
        HPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t k = 0; k < r.c.size(); ++k) {
            if (k < a.c.size()) r.c[k] += a.c[k];
            if (k < b.c.size()) r.c[k] += b.c[k];
        }
        r.trim();
        return r;
    }
    friend HPoly operator-(const HPoly& a, const HPoly& b) { return a + (-b); }
    friend HPoly operator*(const HPoly& a, const HPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        HPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, GaussianRational(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    friend HPoly operator*(const GaussianRational& s, HPoly b) {
        for (auto& x : b.c) x = s * x;
        b.trim();
        return b;
    }
    friend bool operator==(const HPoly& a, const HPoly& b) { return a.c == b.c; }
    friend bool operator!=(const HPoly& a, const HPoly& b) { return !(a == b); }

    /// Quotient and remainder over the field Q(i).
    static std::pair<HPoly, HPoly> divmod(const HPoly& a, const HPoly& b) {
        if (b.is_zero()) throw std::domain_error("HPoly: division by zero");
        HPoly q, r = a;
        q.c.assign(a.c.size(), GaussianRational(0));
        GaussianRational linv = b.leading().inv();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            size_t shift = (size_t)(r.degree() - b.degree());
            GaussianRational coef = r.leading() * linv;
            q.c[shift] += coef;
            for (size_t j = 0; j < b.c.size(); ++j) r.c[shift + j] -= coef * b.c[j];
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    static HPoly gcd(HPoly a, HPoly b) {
        while (!b.is_zero()) {
            HPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a.leading().inv() * a; // monic
    }

    bool divides(const HPoly& a) const { return divmod(a, *this).second.is_zero(); }

    static HPoly lcm(const HPoly& a, const HPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        HPoly g = gcd(a, b);
        HPoly l = a * divmod(b, g).first;
        return l.leading().inv() * l; // monic
    }

  private:
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
};

/// prod_{k=0}^{m-1} (1 - k*hbar): the hbar^m-scaled falling factorial of 1/hbar.
/// Degree m-1 for m >= 2, constant 1 otherwise; value 1 at hbar = 0.
inline HPoly falling_scaled(unsigned m) {
    HPoly r = HPoly::one();
    for (unsigned k = 1; k < m; ++k) r = r * HPoly::one_minus_k_hbar(k);
    return r;
}

/// Rational function of hbar over GaussianRational, kept in normal form:
/// gcd(num, den) = 1 and den monic.
class HRational {
  public:
    HPoly num, den;

    HRational() : num(HPoly::zero()), den(HPoly::one()) {}
    HRational(GaussianRational c) : num(HPoly(std::move(c))), den(HPoly::one()) {}
    HRational(long v) : num(HPoly(GaussianRational(v))), den(HPoly::one()) {}
    HRational(HPoly n) : num(std::move(n)), den(HPoly::one()) {}
    HRational(HPoly n, HPoly d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    static HRational hbar() { return HRational(HPoly::hbar()); }

    bool is_zero() const { return num.is_zero(); }
    bool is_constant() const { return num.is_constant() && den.is_one(); }

    void reduce() {
        if (den.is_zero()) throw std::domain_error("HRational: zero denominator");
        if (num.is_zero()) {
            den = HPoly::one();
            return;
        }
        HPoly g = HPoly::gcd(num, den);
        if (!g.is_one()) {
            num = HPoly::divmod(num, g).first;
            den = HPoly::divmod(den, g).first;
        }
        GaussianRational linv = den.leading().inv();
        num = linv * num;
        den = linv * den;
    }

    HRational conj() const { // hbar treated as a real symbol
        HRational r;
        r.num = num.conj();
        r.den = den.conj();
        r.reduce();
        return r;
    }

    HRational operator-() const {
        HRational r(*this);
        r.num = -r.num;
        return r;
    }

    friend HRational operator+(const HRational& a, const HRational& b) {
        return HRational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend HRational operator-(const HRational& a, const HRational& b) { return a + (-b); }
    friend HRational operator*(const HRational& a, const HRational& b) {
        return HRational(a.num * b.num, a.den * b.den);
    }
    friend HRational operator/(const HRational& a, const HRational& b) {
        if (b.is_zero()) throw std::domain_error("HRational: division by zero");
        return HRational(a.num * b.den, a.den * b.num);
    }
    HRational& operator+=(const HRational& o) { return *this = *this + o; }
    HRational& operator-=(const HRational& o) { return *this = *this - o; }
    HRational& operator*=(const HRational& o) { return *this = *this * o; }

    friend bool operator==(const HRational& a, const HRational& b) {
        return a.num == b.num && a.den == b.den; // both in normal form
    }
    friend bool operator!=(const HRational& a, const HRational& b) { return !(a == b); }

    GaussianRational eval(const GaussianRational& h) const {
        GaussianRational d = den.eval(h);
        if (d.is_zero()) throw PoleError("HRational: evaluation at a pole");
        return num.eval(h) * d.inv();
    }
    GaussianRational eval_zero() const { return eval(GaussianRational(0)); }

    /// Exact division by hbar; the numerator must vanish at 0.
    HRational div_hbar() const {
        return HRational(num, den * HPoly::hbar());
    }

    /// True iff den divides prod_{k=1}^K (1 - k*hbar) up to scalar.
    bool denominator_divides_falling(unsigned K) const {
        HPoly p = falling_scaled(K + 1); // factors k = 1..K
        GaussianRational linv = p.leading().is_zero() ? GaussianRational(1) : p.leading().inv();
        if (den.is_one()) return true;
        if (p.is_constant()) return false;
        return den.divides(linv * p);
    }
};

inline HRational to_hrational(const GaussianRational& c) { return HRational(c); }
inline const HRational& to_hrational(const HRational& c) { return c; }

/// Structure-constant weight hbar^t * A(a+b-t) / (A(a) A(b)) with
/// A(m) = falling_scaled(m), in pre-cancelled form: the shared factors of the
/// falling products drop out, leaving
///   hbar^t * prod_{k=max(a,b)}^{a+b-t-1} (1-k hbar) / prod_{k=1}^{min(a,b)-1} (1-k hbar).
inline HRational star_weight_symbolic(unsigned t, unsigned a, unsigned b) {
    HPoly n = HPoly::one();
    for (unsigned k = 0; k < t; ++k) n = n * HPoly::hbar();
    for (unsigned k = std::max(a, b); k + t < a + b; ++k) n = n * HPoly::one_minus_k_hbar(k);
    HPoly d = HPoly::one();
    for (unsigned k = 1; k + 1 <= std::min(a, b); ++k) d = d * HPoly::one_minus_k_hbar(k);
    return HRational(std::move(n), std::move(d));
}

inline GaussianRational star_weight_at(unsigned t, unsigned a, unsigned b, const GaussianRational& h) {
    GaussianRational r(1);
    for (unsigned k = 0; k < t; ++k) r *= h;
    for (unsigned k = std::max(a, b); k + t < a + b; ++k)
        r *= GaussianRational(1) - GaussianRational((long)k) * h;
    for (unsigned k = 1; k + 1 <= std::min(a, b); ++k) {
        GaussianRational f = GaussianRational(1) - GaussianRational((long)k) * h;
        if (f.is_zero()) throw PoleError("star weight: hbar = 1/k pole");
        r *= f.inv();
    }
    return r;
}

/// Deformation parameter: exact rational, binary64, or a formal symbol.
struct SymbolicHbar {};
using HbarValue = std::variant<Rat, double, SymbolicHbar>;

inline bool is_symbolic(const HbarValue& h) { return std::holds_alternative<SymbolicHbar>(h); }

/// Exact rational value of a numeric parameter (doubles are dyadic rationals).
inline Rat hbar_exact(const HbarValue& h) {
    if (auto* q = std::get_if<Rat>(&h)) return *q;
    if (auto* d = std::get_if<double>(&h)) return rat_from_double_exact(*d);
    throw std::invalid_argument("hbar_exact: symbolic parameter");
}

/// Membership in Omega = C \ ({0} u {1/k : k in N}). Floats are compared
/// bit-exactly against representable 1/k with k <= 2^53; values merely close
/// to a pole are accepted (Omega is open, proximity is the caller's concern).
inline bool in_omega(const HbarValue& h) {
    if (std::holds_alternative<SymbolicHbar>(h)) return true;
    if (auto* q = std::get_if<Rat>(&h)) {
        if (*q == 0) return false;
        return !(q->get_num() == 1); // 1/k excluded, canonical form has den > 0
    }
    double d = std::get<double>(h);
    if (d == 0.0) return false;
    if (d > 0.0 && d <= 1.0) {
        Rat q = rat_from_double_exact(d); // canonical, den a power of two
        static const Int two53 = Int(1) << 53;
        if (q.get_num() == 1 && q.get_den() <= two53) return false;
    }
    return true;
}

} // namespace starred
