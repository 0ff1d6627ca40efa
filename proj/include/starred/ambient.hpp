#pragma once

#include <map>

#include "starred/hbar.hpp"
#include "starred/multiindex.hpp"

namespace starred {

/// Basis key z^P zbar^Q on C^{1+n}; P, Q of length 1+n.
struct AmbientKey {
    MultiIndex P, Q;
    friend bool operator==(const AmbientKey& a, const AmbientKey& b) { return a.P == b.P && a.Q == b.Q; }
};

/// Canonical graded-lexicographic order on (|P|+|Q|, P, Q).
struct KeyLess {
    template <class K>
    bool operator()(const K& a, const K& b) const {
        unsigned da = a.P.total() + a.Q.total();
        unsigned db = b.P.total() + b.Q.total();
        if (da != db) return da < db;
        if (a.P != b.P) return a.P < b.P;
        return a.Q < b.Q;
    }
};

template <class C>
struct AmbientPoly {
    Signature sig;
    std::map<AmbientKey, C, KeyLess> terms;

    AmbientPoly() = default;
    explicit AmbientPoly(Signature s) : sig(s) {}

    static AmbientPoly monomial(Signature s, MultiIndex P, MultiIndex Q, C coeff = C(1)) {
        AmbientPoly f(s);
        f.add(AmbientKey{std::move(P), std::move(Q)}, std::move(coeff));
        return f;
    }
    static AmbientPoly constant(Signature s, C c) {
        size_t len = (size_t)s.n + 1;
        return monomial(s, MultiIndex::zero(len), MultiIndex::zero(len), std::move(c));
    }
    static AmbientPoly zero(Signature s) { return AmbientPoly(s); }

    void add(const AmbientKey& k, const C& c) {
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

    AmbientPoly operator-() const {
        AmbientPoly r(sig);
        for (auto& [k, c] : terms) r.terms.emplace(k, -c);
        return r;
    }
    friend AmbientPoly operator+(const AmbientPoly& a, const AmbientPoly& b) {
        require_same_sig(a, b);
        AmbientPoly r = a;
        for (auto& [k, c] : b.terms) r.add(k, c);
        return r;
    }
    friend AmbientPoly operator-(const AmbientPoly& a, const AmbientPoly& b) { return a + (-b); }
    friend AmbientPoly operator*(const C& s, const AmbientPoly& f) {
        AmbientPoly r(f.sig);
        for (auto& [k, c] : f.terms) r.add(k, s * c);
        return r;
    }
    friend bool operator==(const AmbientPoly& a, const AmbientPoly& b) {
        return a.sig == b.sig && a.terms == b.terms;
    }

    static void require_same_sig(const AmbientPoly& a, const AmbientPoly& b) {
        if (a.sig != b.sig) throw SignatureMismatch("ambient operands over different signatures");
    }
};

using AmbientPolyQ = AmbientPoly<GaussianRational>;
using AmbientPolyH = AmbientPoly<HRational>;

inline AmbientPolyH to_hrational(const AmbientPolyQ& f) {
    AmbientPolyH r(f.sig);
    for (auto& [k, c] : f.terms) r.terms.emplace(k, HRational(c));
    return r;
}
inline const AmbientPolyH& to_hrational(const AmbientPolyH& f) { return f; }

/// Pointwise product: keys add.
template <class C>
AmbientPoly<C> ambient_mul(const AmbientPoly<C>& f, const AmbientPoly<C>& g) {
    AmbientPoly<C>::require_same_sig(f, g);
    AmbientPoly<C> r(f.sig);
    for (auto& [kf, cf] : f.terms)
        for (auto& [kg, cg] : g.terms) r.add(AmbientKey{kf.P + kg.P, kf.Q + kg.Q}, cf * cg);
    return r;
}

/// {z^P zbar^Q, z^R zbar^S} = (1/i) sum_k nu_k (Q_k R_k - P_k S_k) z^{P+R-E_k} zbar^{Q+S-E_k}.
template <class C>
AmbientPoly<C> ambient_poisson(const AmbientPoly<C>& f, const AmbientPoly<C>& g) {
    AmbientPoly<C>::require_same_sig(f, g);
    const Signature& sig = f.sig;
    AmbientPoly<C> r(sig);
    const C minus_i = C(GaussianRational(Rat(0), Rat(-1)));
    for (auto& [kf, cf] : f.terms)
        for (auto& [kg, cg] : g.terms) {
            for (int k = 0; k <= sig.n; ++k) {
                long w = (long)kf.Q[k] * kg.P[k] - (long)kf.P[k] * kg.Q[k];
                if (w == 0) continue;
                MultiIndex P = (kf.P + kg.P).minus(MultiIndex::unit(sig.n + 1, k));
                MultiIndex Q = (kf.Q + kg.Q).minus(MultiIndex::unit(sig.n + 1, k));
                C coef = minus_i * C(GaussianRational(Rat(sig.nu(k) * w))) * cf * cg;
                r.add(AmbientKey{std::move(P), std::move(Q)}, coef);
            }
        }
    return r;
}

namespace detail {

/// Odometer over {T : 0 <= T <= Tmax elementwise}; calls fn(T).
template <class Fn>
void for_each_below(const MultiIndex& Tmax, Fn&& fn) {
    MultiIndex T = MultiIndex::zero(Tmax.size());
    while (true) {
        fn(T);
        size_t k = 0;
        while (k < T.size() && T[k] == Tmax[k]) {
            T[k] = 0;
            ++k;
        }
        if (k == T.size()) break;
        T[k]++;
    }
}

} // namespace detail

/// Wick star structure constants:
/// Monom{P}{Q} * Monom{R}{S} = sum_{T <= min(Q,R)} sgn(T) h^|T| T! C(Q,T) C(R,T) Monom{P+R-T}{Q+S-T}.
/// CoeffFn(t, integer_factor_with_sign) -> C supplies the h-dependence.
template <class C, class CIn, class WeightFn>
AmbientPoly<C> ambient_star_generic(const AmbientPoly<CIn>& f, const AmbientPoly<CIn>& g, WeightFn&& weight) {
    AmbientPoly<CIn>::require_same_sig(f, g);
    const Signature& sig = f.sig;
    AmbientPoly<C> r(sig);
    for (auto& tf : f.terms)
        for (auto& tg : g.terms) {
            const AmbientKey& kf = tf.first;
            const AmbientKey& kg = tg.first;
            MultiIndex Tmax = MultiIndex::min(kf.Q, kg.P);
            C base = C(tf.second) * C(tg.second);
            detail::for_each_below(Tmax, [&](const MultiIndex& T) {
                Int num = T.factorial() * multi_binom(kf.Q, T) * multi_binom(kg.P, T);
                if (sgn_pm(sig, T) < 0) num = -num;
                C coef = base * weight(T.total(), num);
                AmbientKey key{(kf.P + kg.P).minus(T), (kf.Q + kg.Q).minus(T)};
                r.add(key, coef);
            });
        }
    return r;
}

/// Star product with a formal parameter; coefficients are polynomials in hbar
/// (stored as HRational for uniformity with the reduced algebra).
template <class CIn>
AmbientPolyH ambient_wick_star_symbolic(const AmbientPoly<CIn>& f, const AmbientPoly<CIn>& g) {
    return ambient_star_generic<HRational>(f, g, [](unsigned t, const Int& num) {
        HPoly p{GaussianRational(Rat(num))};
        for (unsigned k = 0; k < t; ++k) p = p * HPoly::hbar();
        return HRational(std::move(p));
    });
}

/// Star product at a numeric parameter (no poles exist ambiently).
inline AmbientPolyQ ambient_wick_star_at(const AmbientPolyQ& f, const AmbientPolyQ& g,
                                         const GaussianRational& h) {
    return ambient_star_generic<GaussianRational>(f, g, [&](unsigned t, const Int& num) {
        GaussianRational c{Rat(num)};
        for (unsigned k = 0; k < t; ++k) c *= h;
        return c;
    });
}

/// The hbar-weighted product with reduced structure-constant weights on
/// U(1)-invariant ambient polynomials (the continuity-estimate subject).
inline AmbientPolyQ ambient_star_reduced_weights_at(const AmbientPolyQ& f, const AmbientPolyQ& g,
                                                    const GaussianRational& h) {
    AmbientPolyQ::require_same_sig(f, g);
    AmbientPolyQ r(f.sig);
    for (auto& tf : f.terms)
        for (auto& tg : g.terms) {
            const AmbientKey& kf = tf.first;
            const AmbientKey& kg = tg.first;
            unsigned a = kf.Q.total(), b = kg.P.total();
            GaussianRational base = tf.second * tg.second;
            MultiIndex Tmax = MultiIndex::min(kf.Q, kg.P);
            detail::for_each_below(Tmax, [&](const MultiIndex& T) {
                Int num = T.factorial() * multi_binom(kf.Q, T) * multi_binom(kg.P, T);
                if (sgn_pm(f.sig, T) < 0) num = -num;
                GaussianRational coef =
                    base * GaussianRational(Rat(num)) * star_weight_at(T.total(), a, b, h);
                r.add(AmbientKey{(kf.P + kg.P).minus(T), (kf.Q + kg.Q).minus(T)}, coef);
            });
        }
    return r;
}

/// Conjugation: swap P and Q, conjugate coefficients (hbar fixed, a real symbol).
template <class C>
AmbientPoly<C> ambient_conj(const AmbientPoly<C>& f) {
    AmbientPoly<C> r(f.sig);
    for (auto& [k, c] : f.terms) r.add(AmbientKey{k.Q, k.P}, c.conj());
    return r;
}

/// sum |c_{P,Q}| r^{|P|+|Q|} with |c| the exact majorant |re|+|im|.
inline Rat ambient_seminorm(const AmbientPolyQ& f, const Rat& r) {
    if (r < 1) throw std::invalid_argument("seminorm: r >= 1 required");
    Rat acc(0);
    for (auto& [k, c] : f.terms) {
        Rat w(1);
        unsigned d = k.P.total() + k.Q.total();
        for (unsigned j = 0; j < d; ++j) w *= r;
        acc += c.abs_majorant() * w;
    }
    return acc;
}

template <class C>
bool is_u1_invariant(const AmbientPoly<C>& f) {
    for (auto& [k, c] : f.terms)
        if (k.P.total() != k.Q.total()) return false;
    return true;
}

/// Projection onto the U(1)-invariant part: keep keys with |P| = |Q|.
template <class C>
AmbientPoly<C> u1_project(const AmbientPoly<C>& f) {
    AmbientPoly<C> r(f.sig);
    for (auto& [k, c] : f.terms)
        if (k.P.total() == k.Q.total()) r.terms.emplace(k, c);
    return r;
}

/// Level-set action of the equivalence transformation: each invariant key
/// (P,Q) is scaled by prod_{k=0}^{|P|-1} (1 - k hbar).
template <class CIn>
AmbientPolyH s_scale_on_levelset(const AmbientPoly<CIn>& f) {
    if (!is_u1_invariant(f)) throw std::invalid_argument("s_scale_on_levelset: input not U(1)-invariant");
    AmbientPolyH r(f.sig);
    for (auto& [k, c] : f.terms) r.add(k, to_hrational(c) * HRational(falling_scaled(k.P.total())));
    return r;
}

/// Relabel variable indices by a permutation of {0..n}.
template <class C>
AmbientPoly<C> apply_index_permutation(const AmbientPoly<C>& f, const std::vector<int>& perm) {
    AmbientPoly<C> r(f.sig);
    size_t len = (size_t)f.sig.n + 1;
    if (perm.size() != len) throw std::invalid_argument("permutation length mismatch");
    for (auto& [k, c] : f.terms) {
        MultiIndex P = MultiIndex::zero(len), Q = MultiIndex::zero(len);
        for (size_t j = 0; j < len; ++j) {
            P[(size_t)perm[j]] = k.P[j];
            Q[(size_t)perm[j]] = k.Q[j];
        }
        r.add(AmbientKey{std::move(P), std::move(Q)}, c);
    }
    return r;
}

} // namespace starred
