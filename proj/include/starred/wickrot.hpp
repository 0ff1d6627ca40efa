#pragma once

#include "starred/reduced.hpp"

namespace starred {

// Wick rotation into the definite signature s' = 1+n: a diagonal rescaling
// of basis keys by powers of i. Intertwines pointwise, star and Poisson
// structures; not compatible with complex conjugation when s < 1+n.

template <class C>
AmbientPoly<C> rotate_ambient(const AmbientPoly<C>& f) {
    Signature target(f.sig.n, f.sig.n + 1);
    AmbientPoly<C> r(target);
    for (auto& [k, c] : f.terms) {
        unsigned long e = 0;
        for (int j = f.sig.s; j <= f.sig.n; ++j) e += k.P[(size_t)j] + k.Q[(size_t)j];
        r.add(k, c * C(i_power(e)));
    }
    return r;
}

template <class C>
ReducedPoly<C> rotate_reduced(const ReducedPoly<C>& f) {
    Signature target(f.sig.n, f.sig.n + 1);
    ReducedPoly<C> r(target);
    for (auto& [k, c] : f.terms) {
        unsigned long e = 0;
        // fundamental entry j carries ambient index j+1
        for (int j = f.sig.s - 1; j < f.sig.n; ++j) e += k.P[(size_t)j] + k.Q[(size_t)j];
        r.add(k, c * C(i_power(e)));
    }
    return r;
}

} // namespace starred
