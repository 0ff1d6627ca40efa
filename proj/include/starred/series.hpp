#pragma once

#include <vector>

#include "starred/multiindex.hpp"
#include "starred/rational.hpp"

namespace starred {

/// Formal power series truncated at a fixed order: coefficients c_0..c_N,
/// ring operations drop everything beyond degree N.
class TruncatedSeries {
  public:
    unsigned order;
    std::vector<GaussianRational> c; // size order+1

    explicit TruncatedSeries(unsigned N) : order(N), c(N + 1, GaussianRational(0)) {}
    TruncatedSeries(unsigned N, GaussianRational c0) : TruncatedSeries(N) { c[0] = std::move(c0); }

    static TruncatedSeries one(unsigned N) { return TruncatedSeries(N, GaussianRational(1)); }
    /// a + b*lambda
    static TruncatedSeries linear(unsigned N, GaussianRational a, GaussianRational b) {
        TruncatedSeries r(N, std::move(a));
        if (N >= 1) r.c[1] = std::move(b);
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        check(a, b);
        TruncatedSeries r(a.order);
        for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.c[k] + b.c[k];
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        check(a, b);
        TruncatedSeries r(a.order);
        for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.c[k] - b.c[k];
        return r;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        check(a, b);
        TruncatedSeries r(a.order);
        for (size_t i = 0; i <= a.order; ++i) {
            if (a.c[i].is_zero()) continue;
            for (size_t j = 0; i + j <= b.order; ++j) r.c[i + j] += a.c[i] * b.c[j];
        }
        return r;
    }
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.order == b.order && a.c == b.c;
    }

    /// Multiplicative inverse; requires c_0 != 0.
    TruncatedSeries inv() const {
        if (c[0].is_zero()) throw std::domain_error("TruncatedSeries: inverse needs c_0 != 0");
        TruncatedSeries r(order);
        GaussianRational a0inv = c[0].inv();
        r.c[0] = a0inv;
        for (unsigned k = 1; k <= order; ++k) {
            GaussianRational s(0);
            for (unsigned j = 1; j <= k; ++j) s += c[j] * r.c[k - j];
            r.c[k] = -(a0inv * s);
        }
        return r;
    }

  private:
    static void check(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.order != b.order) throw std::invalid_argument("TruncatedSeries: order mismatch");
    }
};

/// Checks the combinatorial identity
///   sum_{s>=0} lambda^s s! C(k+s-1,k-1)^2 / prod_{l=1}^{k+s}(1+lambda l)
///     = 1 / prod_{l=1}^{k-1}(1-lambda l)
/// as truncated series up to the given order. Term s enters at degree >= s,
/// so the partial sum up to s = order is exact mod lambda^{order+1}.
inline bool verify_falling_rising(unsigned k, unsigned order) {
    if (k < 1) throw std::invalid_argument("verify_falling_rising: k >= 1 required");
    const unsigned N = order;

    // running product prod_{l=1}^{k+s} (1 + lambda l), grown incrementally
    TruncatedSeries rising = TruncatedSeries::one(N);
    for (unsigned l = 1; l <= k; ++l)
        rising = rising * TruncatedSeries::linear(N, GaussianRational(1), GaussianRational((long)l));

    TruncatedSeries lhs(N);
    for (unsigned s = 0; s <= order; ++s) {
        if (s > 0)
            rising = rising * TruncatedSeries::linear(N, GaussianRational(1), GaussianRational((long)(k + s)));
        Int b = binom(k + s - 1, k - 1);
        GaussianRational coef = GaussianRational(Rat(factorial(s) * b * b));
        TruncatedSeries term(N);
        if (s <= N) term.c[s] = coef; // lambda^s * coef
        lhs = lhs + term * rising.inv();
    }

    TruncatedSeries falling = TruncatedSeries::one(N);
    for (unsigned l = 1; l + 1 <= k; ++l)
        falling = falling * TruncatedSeries::linear(N, GaussianRational(1), GaussianRational(-(long)l));

    return lhs == falling.inv();
}

} // namespace starred
