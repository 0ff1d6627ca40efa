#pragma once

#include <complex>
#include <map>

#include "starred/ambient.hpp"

namespace starred {

/// Fundamental-basis key Z[P,Q] with P, Q of length n. These are linearly
/// independent (a Schauder basis of the completed algebra).
struct FundamentalKey {
    MultiIndex P, Q;
    friend bool operator==(const FundamentalKey& a, const FundamentalKey& b) {
        return a.P == b.P && a.Q == b.Q;
    }
};

/// Reduced-monomial key Y[P,Q] with P, Q of length 1+n and |P| = |Q|
/// (image of a U(1)-invariant ambient monomial; linearly dependent family).
struct ReducedKey {
    MultiIndex P, Q;
};

/// Z[P,Q] as a reduced monomial: pad position 0 of the lighter side with
/// the degree difference.
inline ReducedKey pad_to_reduced(const FundamentalKey& k) {
    unsigned dp = k.P.total(), dq = k.Q.total();
    std::vector<unsigned> P(k.P.size() + 1), Q(k.Q.size() + 1);
    P[0] = dp <= dq ? dq - dp : 0;
    Q[0] = dp <= dq ? 0 : dp - dq;
    for (size_t j = 0; j < k.P.size(); ++j) {
        P[j + 1] = k.P[j];
        Q[j + 1] = k.Q[j];
    }
    return ReducedKey{MultiIndex(std::move(P)), MultiIndex(std::move(Q))};
}

template <class C>
struct ReducedPoly {
    Signature sig;
    std::map<FundamentalKey, C, KeyLess> terms;

    ReducedPoly() = default;
    explicit ReducedPoly(Signature s) : sig(s) {}

    static ReducedPoly monomial(Signature s, MultiIndex P, MultiIndex Q, C coeff = C(1)) {
        ReducedPoly f(s);
        f.add(FundamentalKey{std::move(P), std::move(Q)}, std::move(coeff));
        return f;
    }
    static ReducedPoly constant(Signature s, C c) {
        return monomial(s, MultiIndex::zero((size_t)s.n), MultiIndex::zero((size_t)s.n), std::move(c));
    }
    static ReducedPoly one(Signature s) { return constant(s, C(1)); }
    static ReducedPoly zero(Signature s) { return ReducedPoly(s); }

    void add(const FundamentalKey& k, const C& c) {
        if (c == C(0)) return;
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, c);
        } else {
            it->second = it->second + c;
            if (it->second == C(0)) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    ReducedPoly operator-() const {
        ReducedPoly r(sig);
        for (auto& [k, c] : terms) r.terms.emplace(k, -c);
        return r;
    }
    friend ReducedPoly operator+(const ReducedPoly& a, const ReducedPoly& b) {
        require_same_sig(a, b);
        ReducedPoly r = a;
        for (auto& [k, c] : b.terms) r.add(k, c);
        return r;
    }
    friend ReducedPoly operator-(const ReducedPoly& a, const ReducedPoly& b) { return a + (-b); }
    friend ReducedPoly operator*(const C& s, const ReducedPoly& f) {
        ReducedPoly r(f.sig);
        for (auto& [k, c] : f.terms) r.add(k, s * c);
        return r;
    }
    friend bool operator==(const ReducedPoly& a, const ReducedPoly& b) {
        return a.sig == b.sig && a.terms == b.terms;
    }

    static void require_same_sig(const ReducedPoly& a, const ReducedPoly& b) {
        if (a.sig != b.sig) throw SignatureMismatch("reduced operands over different signatures");
    }
};

using ReducedPolyQ = ReducedPoly<GaussianRational>;
using ReducedPolyH = ReducedPoly<HRational>;

inline ReducedPolyH to_hrational(const ReducedPolyQ& f) {
    ReducedPolyH r(f.sig);
    for (auto& [k, c] : f.terms) r.terms.emplace(k, HRational(c));
    return r;
}
inline const ReducedPolyH& to_hrational(const ReducedPolyH& f) { return f; }

/// Expansion of a reduced monomial in the fundamental basis:
/// Y[P,Q] = sum_{|T| <= m} (-1)^|T| sgn(T) C(m,|T|) (|T|!/T!) Z[P'+T, Q'+T],
/// m = min(P_0, Q_0); P', Q' drop the 0-th entry.
inline ReducedPolyQ reduced_to_fundamental(const ReducedKey& key, const Signature& sig) {
    if (key.P.total() != key.Q.total())
        throw std::invalid_argument("reduced_to_fundamental: |P| != |Q|");
    const size_t n = key.P.size() - 1;
    unsigned m = std::min(key.P[0], key.Q[0]);
    std::vector<unsigned> Pp(n), Qp(n);
    for (size_t j = 0; j < n; ++j) {
        Pp[j] = key.P[j + 1];
        Qp[j] = key.Q[j + 1];
    }
    MultiIndex Pbase(Pp), Qbase(Qp);

    ReducedPolyQ r(sig);
    // enumerate T in N_0^n with |T| <= m
    MultiIndex cap = MultiIndex::zero(n);
    for (size_t j = 0; j < n; ++j) cap[j] = m;
    detail::for_each_below(cap, [&](const MultiIndex& T) {
        unsigned t = T.total();
        if (t > m) return;
        Rat coef(binom(m, t) * factorial(t));
        coef /= Rat(T.factorial());
        int sign = sgn_pm(sig, T);
        if (t % 2) sign = -sign;
        if (sign < 0) coef = -coef;
        r.add(FundamentalKey{Pbase + T, Qbase + T}, GaussianRational(coef));
    });
    return r;
}

/// Reduction of a U(1)-invariant ambient polynomial to the fundamental basis.
template <class C>
ReducedPoly<C> reduce_ambient(const AmbientPoly<C>& f) {
    if (!is_u1_invariant(f)) throw std::invalid_argument("reduce_ambient: input not U(1)-invariant");
    ReducedPoly<C> r(f.sig);
    for (auto& [k, c] : f.terms) {
        ReducedPolyQ ex = reduced_to_fundamental(ReducedKey{k.P, k.Q}, f.sig);
        for (auto& [fk, fc] : ex.terms) r.add(fk, c * C(fc));
    }
    return r;
}

/// Pointwise product: pad to reduced monomials, add keys, expand back.
template <class C>
ReducedPoly<C> reduced_mul(const ReducedPoly<C>& f, const ReducedPoly<C>& g) {
    ReducedPoly<C>::require_same_sig(f, g);
    ReducedPoly<C> r(f.sig);
    for (auto& [kf, cf] : f.terms)
        for (auto& [kg, cg] : g.terms) {
            ReducedKey a = pad_to_reduced(kf), b = pad_to_reduced(kg);
            ReducedPolyQ ex = reduced_to_fundamental(ReducedKey{a.P + b.P, a.Q + b.Q}, f.sig);
            C base = cf * cg;
            for (auto& [fk, fc] : ex.terms) r.add(fk, base * C(fc));
        }
    return r;
}

namespace detail {

/// Y-level star product kernel. WeightFn(t, a, b) -> C yields the parameter
/// weight hbar^t A(a+b-t)/(A(a)A(b)); the integer part sgn(T) T! C(Q,T) C(R,T)
/// is computed here.
template <class C, class CIn, class WeightFn>
ReducedPoly<C> star_red_generic(const ReducedPoly<CIn>& f, const ReducedPoly<CIn>& g, WeightFn&& weight) {
    ReducedPoly<CIn>::require_same_sig(f, g);
    const Signature& sig = f.sig;
    ReducedPoly<C> r(sig);
    for (auto& [kf, cf] : f.terms)
        for (auto& [kg, cg] : g.terms) {
            ReducedKey yf = pad_to_reduced(kf), yg = pad_to_reduced(kg);
            const unsigned a = yf.Q.total(), b = yg.P.total();
            C base = C(cf) * C(cg);
            MultiIndex Tmax = MultiIndex::min(yf.Q, yg.P);
            for_each_below(Tmax, [&](const MultiIndex& T) {
                Int num = T.factorial() * multi_binom(yf.Q, T) * multi_binom(yg.P, T);
                if (sgn_pm(sig, T) < 0) num = -num;
                C coef = base * C(GaussianRational(Rat(num))) * weight(T.total(), a, b);
                ReducedKey yk{(yf.P + yg.P).minus(T), (yf.Q + yg.Q).minus(T)};
                ReducedPolyQ ex = reduced_to_fundamental(yk, sig);
                for (auto& [fk, fc] : ex.terms) r.add(fk, coef * C(fc));
            });
        }
    return r;
}

} // namespace detail

/// Reduced star product with a formal parameter; every coefficient is a
/// rational function of hbar whose denominator divides prod (1 - k hbar).
template <class CIn>
ReducedPolyH star_red_symbolic(const ReducedPoly<CIn>& f, const ReducedPoly<CIn>& g) {
    return detail::star_red_generic<HRational>(
        f, g, [](unsigned t, unsigned a, unsigned b) { return star_weight_symbolic(t, a, b); });
}

/// Reduced star product at an exact parameter value; hbar must lie in Omega.
inline ReducedPolyQ star_red_at(const ReducedPolyQ& f, const ReducedPolyQ& g, const Rat& hbar) {
    if (!in_omega(HbarValue(hbar))) throw OmegaError("star_red: hbar outside Omega");
    GaussianRational h{hbar};
    return detail::star_red_generic<GaussianRational>(
        f, g, [&](unsigned t, unsigned a, unsigned b) { return star_weight_at(t, a, b, h); });
}

/// Reduced Poisson bracket on Y-level constants:
/// (1/i) sum_k nu_k (Q_k R_k - S_k P_k) Y[P+R-E_k, Q+S-E_k].
template <class C>
ReducedPoly<C> poisson_red(const ReducedPoly<C>& f, const ReducedPoly<C>& g) {
    ReducedPoly<C>::require_same_sig(f, g);
    const Signature& sig = f.sig;
    ReducedPoly<C> r(sig);
    const C minus_i = C(GaussianRational(Rat(0), Rat(-1)));
    for (auto& [kf, cf] : f.terms)
        for (auto& [kg, cg] : g.terms) {
            ReducedKey yf = pad_to_reduced(kf), yg = pad_to_reduced(kg);
            for (int k = 0; k <= sig.n; ++k) {
                long w = (long)yf.Q[k] * yg.P[k] - (long)yg.Q[k] * yf.P[k];
                if (w == 0) continue;
                ReducedKey yk{(yf.P + yg.P).minus(MultiIndex::unit(sig.n + 1, k)),
                              (yf.Q + yg.Q).minus(MultiIndex::unit(sig.n + 1, k))};
                C coef = minus_i * C(GaussianRational(Rat(sig.nu(k) * w))) * cf * cg;
                ReducedPolyQ ex = reduced_to_fundamental(yk, sig);
                for (auto& [fk, fc] : ex.terms) r.add(fk, coef * C(fc));
            }
        }
    return r;
}

/// Conjugation: Z[P,Q] -> Z[Q,P], coefficients conjugated.
template <class C>
ReducedPoly<C> reduced_conj(const ReducedPoly<C>& f) {
    ReducedPoly<C> r(f.sig);
    for (auto& [k, c] : f.terms) r.add(FundamentalKey{k.Q, k.P}, c.conj());
    return r;
}

/// Chart evaluation: Z[P,Q](w) = w^P wbar^Q / (1 + sum_k nu_k |w^k|^2)^max(|P|,|Q|).
/// Requires the denominator base to be positive (point inside the chart).
inline std::complex<double> eval_red(const ReducedPolyQ& f, const std::vector<std::complex<double>>& w) {
    if ((int)w.size() != f.sig.n) throw std::invalid_argument("eval_red: point dimension mismatch");
    double base = 1.0;
    for (int k = 0; k < f.sig.n; ++k) base += f.sig.nu(k + 1) * std::norm(w[k]);
    if (!(base > 0.0)) throw ChartDomainError("eval_red: point outside the chart of M_red");
    std::complex<double> acc = 0.0;
    for (auto& [k, c] : f.terms) {
        std::complex<double> t = c.to_complex();
        for (int j = 0; j < f.sig.n; ++j) {
            for (unsigned p = 0; p < k.P[(size_t)j]; ++p) t *= w[(size_t)j];
            for (unsigned q = 0; q < k.Q[(size_t)j]; ++q) t *= std::conj(w[(size_t)j]);
        }
        unsigned m = std::max(k.P.total(), k.Q.total());
        for (unsigned j = 0; j < m; ++j) t /= base;
        acc += t;
    }
    return acc;
}

inline Rat seminorm_red(const ReducedPolyQ& f, const Rat& r) {
    if (r < 1) throw std::invalid_argument("seminorm: r >= 1 required");
    Rat s(0);
    for (auto& [k, c] : f.terms) {
        Rat w(1);
        unsigned d = k.P.total() + k.Q.total();
        for (unsigned j = 0; j < d; ++j) w *= r;
        s += c.abs_majorant() * w;
    }
    return s;
}

struct LimitCommutatorResult {
    ReducedPolyQ pointwise; // hbar -> 0 of f * g
    ReducedPolyQ bracket;   // hbar -> 0 of (1/(i hbar)) [f, g]
    bool pointwise_matches_mul = false;
    bool bracket_matches_poisson = false;
};

/// Classical limits through exact rational-function evaluation: the shared
/// hbar factor of the commutator is cancelled before evaluating at 0, so no
/// pole is ever touched.
inline LimitCommutatorResult limit_commutator(const ReducedPolyQ& f, const ReducedPolyQ& g) {
    ReducedPolyH fg = star_red_symbolic(f, g);
    ReducedPolyH gf = star_red_symbolic(g, f);

    LimitCommutatorResult res;
    res.pointwise = ReducedPolyQ(f.sig);
    for (auto& [k, c] : fg.terms) res.pointwise.add(k, c.eval_zero());

    ReducedPolyH comm = fg - gf;
    const HRational i_hbar = HRational(GaussianRational::unit_i()) * HRational::hbar();
    res.bracket = ReducedPolyQ(f.sig);
    for (auto& [k, c] : comm.terms) res.bracket.add(k, (c / i_hbar).eval_zero());

    res.pointwise_matches_mul = (res.pointwise == reduced_mul(f, g));
    res.bracket_matches_poisson = (res.bracket == poisson_red(f, g));
    return res;
}

} // namespace starred
