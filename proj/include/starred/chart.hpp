#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "starred/rational.hpp"

namespace starred {

/// Sparse multivariate polynomial over GaussianRational in a fixed number of
/// commuting indeterminates. For the reduced chart the 2n variables are
/// w^1..w^n followed by wbar^1..wbar^n (wbar is an independent variable; the
/// bar-swap involution models complex conjugation).
class MPoly {
  public:
    using Exps = std::vector<unsigned>;

    size_t nvars = 0;
    std::map<Exps, GaussianRational> terms; // lex on exponent vectors

    MPoly() = default;
    explicit MPoly(size_t nv) : nvars(nv) {}

    static MPoly constant(size_t nv, GaussianRational c) {
        MPoly p(nv);
        p.add(Exps(nv, 0), std::move(c));
        return p;
    }
    static MPoly variable(size_t nv, size_t v, unsigned e = 1) {
        MPoly p(nv);
        Exps x(nv, 0);
        x.at(v) = e;
        p.add(x, GaussianRational(1));
        return p;
    }

    void add(const Exps& e, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && terms.begin()->first == Exps(nvars, 0));
    }
    GaussianRational constant_value() const {
        if (terms.empty()) return GaussianRational(0);
        return terms.begin()->second;
    }
    unsigned total_degree() const {
        unsigned d = 0;
        for (auto& [e, c] : terms) {
            unsigned t = 0;
            for (unsigned x : e) t += x;
            d = std::max(d, t);
        }
        return d;
    }

    MPoly operator-() const;
    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const GaussianRational& s, const MPoly& p);
    friend bool operator==(const MPoly& a, const MPoly& b) {
        return a.nvars == b.nvars && a.terms == b.terms;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
    /// Map-lexicographic comparison; a deterministic total order used to
    /// keep denominator factor lists canonical.
    friend bool operator<(const MPoly& a, const MPoly& b);

    MPoly pow(unsigned k) const;
    MPoly derivative(size_t v) const;
    /// Swap variables j <-> half+j and conjugate coefficients.
    MPoly barswap(size_t half) const;

    GaussianRational eval(const std::vector<GaussianRational>& x) const;
    std::complex<double> eval(const std::vector<std::complex<double>>& x) const;

    /// Exact division; nullopt when b does not divide a.
    static std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b);
};

/// Rational function num / prod_i f_i^{m_i} with the denominator kept in
/// factored form; factors are pivot-normalized (lex-least monomial has
/// coefficient 1), sorted, non-constant. Trial division after every
/// operation keeps the known structural factors cancelled.
class ChartFunction {
  public:
    MPoly num;
    std::vector<std::pair<MPoly, int>> den;

    ChartFunction() = default;
    explicit ChartFunction(MPoly n) : num(std::move(n)) {}
    ChartFunction(MPoly n, std::vector<std::pair<MPoly, int>> d) : num(std::move(n)), den(std::move(d)) {
        normalize();
    }

    static ChartFunction constant(size_t nv, GaussianRational c) {
        return ChartFunction(MPoly::constant(nv, std::move(c)));
    }
    static ChartFunction zero(size_t nv) { return ChartFunction(MPoly(nv)); }

    size_t nvars() const { return num.nvars; }
    bool is_zero() const { return num.is_zero(); }

    MPoly den_expanded() const;

    ChartFunction operator-() const {
        ChartFunction r(*this);
        r.num = -r.num;
        return r;
    }
    friend ChartFunction operator+(const ChartFunction& a, const ChartFunction& b);
    friend ChartFunction operator-(const ChartFunction& a, const ChartFunction& b) { return a + (-b); }
    friend ChartFunction operator*(const ChartFunction& a, const ChartFunction& b);
    friend ChartFunction operator*(const GaussianRational& s, const ChartFunction& f);
    friend ChartFunction operator/(const ChartFunction& a, const ChartFunction& b);
    /// Exact equality of rational functions (cross-multiplied).
    friend bool operator==(const ChartFunction& a, const ChartFunction& b);
    friend bool operator!=(const ChartFunction& a, const ChartFunction& b) { return !(a == b); }

    ChartFunction derivative(size_t v) const;
    ChartFunction barswap(size_t half) const;
    ChartFunction pow(unsigned k) const;

    GaussianRational eval(const std::vector<GaussianRational>& x) const;
    std::complex<double> eval(const std::vector<std::complex<double>>& x) const;

  private:
    void normalize();
};

} // namespace starred
