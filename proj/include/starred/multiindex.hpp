#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "starred/rational.hpp"

namespace starred {

/// Vector of non-negative exponents. Length 1+n for ambient keys,
/// length n for fundamental keys; trailing zeros are never trimmed.
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<unsigned> entries) : e_(std::move(entries)) {}

    static MultiIndex zero(size_t len) { return MultiIndex(std::vector<unsigned>(len, 0)); }
    static MultiIndex unit(size_t len, size_t k) {
        std::vector<unsigned> v(len, 0);
        v.at(k) = 1;
        return MultiIndex(std::move(v));
    }

    size_t size() const { return e_.size(); }
    unsigned operator[](size_t k) const { return e_[k]; }
    unsigned& operator[](size_t k) { return e_[k]; }
    const std::vector<unsigned>& entries() const { return e_; }

    unsigned total() const {
        unsigned t = 0;
        for (unsigned x : e_) t += x;
        return t;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        check_len(o);
        MultiIndex r(*this);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] += o.e_[k];
        return r;
    }

    /// Elementwise difference; requires o <= *this.
    MultiIndex minus(const MultiIndex& o) const {
        check_len(o);
        if (!o.leq(*this)) throw std::invalid_argument("MultiIndex: negative entry in difference");
        MultiIndex r(*this);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] -= o.e_[k];
        return r;
    }

    bool leq(const MultiIndex& o) const {
        check_len(o);
        for (size_t k = 0; k < e_.size(); ++k)
            if (e_[k] > o.e_[k]) return false;
        return true;
    }

    static MultiIndex min(const MultiIndex& a, const MultiIndex& b) {
        a.check_len(b);
        MultiIndex r(a);
        for (size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = std::min(a.e_[k], b.e_[k]);
        return r;
    }

    Int factorial() const {
        Int f = 1;
        for (unsigned x : e_) {
            mpz_class t;
            mpz_fac_ui(t.get_mpz_t(), x);
            f *= t;
        }
        return f;
    }

    bool is_zero() const { return total() == 0; }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.e_ != b.e_; }
    /// Plain lexicographic order (lengths assumed equal where it matters).
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.e_ < b.e_; }

  private:
    std::vector<unsigned> e_;

    void check_len(const MultiIndex& o) const {
        if (e_.size() != o.e_.size()) throw std::invalid_argument("MultiIndex: length mismatch");
    }
};

/// prod_k C(P_k, Q_k); requires Q <= P elementwise.
inline Int multi_binom(const MultiIndex& P, const MultiIndex& Q) {
    if (!Q.leq(P)) throw std::invalid_argument("multi_binom: Q !<= P");
    Int r = 1;
    for (size_t k = 0; k < P.size(); ++k) {
        mpz_class t;
        mpz_bin_uiui(t.get_mpz_t(), P[k], Q[k]);
        r *= t;
    }
    return r;
}

inline Int binom(unsigned long n, unsigned long k) {
    mpz_class t;
    mpz_bin_uiui(t.get_mpz_t(), n, k);
    return t;
}

inline Int factorial(unsigned long n) {
    mpz_class t;
    mpz_fac_ui(t.get_mpz_t(), n);
    return t;
}

/// Signature data (n, s): complex dimension n of the reduced manifold and
/// number s of +1 entries in the sign vector nu over indices 0..n.
struct Signature {
    int n = 1;
    int s = 2;

    Signature() = default;
    Signature(int n_, int s_) : n(n_), s(s_) {
        if (n < 1) throw std::invalid_argument("Signature: n must be >= 1");
        if (s < 1 || s > 1 + n) throw std::invalid_argument("Signature: need 1 <= s <= 1+n");
    }

    /// nu_k for k in 0..n; nu_0 = +1 always.
    int nu(int k) const { return k < s ? +1 : -1; }

    friend bool operator==(const Signature& a, const Signature& b) { return a.n == b.n && a.s == b.s; }
    friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }
};

/// sgn(T) = prod_{k=1}^n nu_k^{T_k}. T of length n indexes variables 1..n;
/// T of length 1+n indexes 0..n (same value since nu_0 = +1).
inline int sgn_pm(const Signature& sig, const MultiIndex& T) {
    size_t off;
    if ((int)T.size() == sig.n)
        off = 1; // entry j corresponds to ambient index j+1
    else if ((int)T.size() == sig.n + 1)
        off = 0;
    else
        throw std::invalid_argument("sgn_pm: bad multi-index length");
    unsigned parity = 0;
    for (size_t j = 0; j < T.size(); ++j)
        if (sig.nu((int)(j + off)) < 0) parity += T[j];
    return (parity % 2) ? -1 : +1;
}

} // namespace starred
