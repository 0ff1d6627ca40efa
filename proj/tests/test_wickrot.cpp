#include <doctest.h>

#include <random>

#include "starred/wickrot.hpp"

using namespace starred;

namespace {

MultiIndex mi(std::vector<unsigned> v) { return MultiIndex(std::move(v)); }

ReducedPolyQ rand_reduced(std::mt19937_64& rng, const Signature& sig, unsigned maxdeg, int nterms) {
    size_t n = (size_t)sig.n;
    ReducedPolyQ f(sig);
    for (int t = 0; t < nterms; ++t) {
        auto rand_mi = [&]() {
            MultiIndex m = MultiIndex::zero(n);
            unsigned d = rng() % (maxdeg + 1);
            for (unsigned j = 0; j < d; ++j) m[rng() % n]++;
            return m;
        };
        GaussianRational c(make_rat((long)(rng() % 9) - 4, 1 + (long)(rng() % 3)),
                           make_rat((long)(rng() % 5) - 2));
        f = f + c * ReducedPolyQ::monomial(sig, rand_mi(), rand_mi());
    }
    return f;
}

} // namespace

TEST_CASE("rotation pinned values") {
    Signature s11(1, 1);
    auto z10 = ReducedPolyQ::monomial(s11, mi({1}), mi({0}));
    auto r1 = rotate_reduced(z10);
    CHECK(r1.sig == Signature(1, 2));
    CHECK(r1.terms.begin()->second == GaussianRational::unit_i());

    auto z11 = ReducedPolyQ::monomial(s11, mi({1}), mi({1}));
    auto r2 = rotate_reduced(z11);
    CHECK(r2.terms.begin()->second == GaussianRational(-1));

    // s = 1+n: identity
    Signature s12(1, 2);
    auto f = ReducedPolyQ::monomial(s12, mi({2}), mi({1}));
    CHECK(rotate_reduced(f) == f);

    // ambient variant
    auto m = AmbientPolyQ::monomial(s11, MultiIndex::unit(2, 1), MultiIndex::zero(2));
    CHECK(rotate_ambient(m).terms.begin()->second == GaussianRational::unit_i());
    auto m2 = AmbientPolyQ::monomial(s11, MultiIndex::unit(2, 1), MultiIndex::unit(2, 1));
    CHECK(rotate_ambient(m2).terms.begin()->second == GaussianRational(-1));
}

TEST_CASE("rotation intertwines products, star and Poisson") {
    std::mt19937_64 rng(71);
    for (Signature sig : {Signature(1, 1), Signature(2, 1), Signature(2, 2), Signature(2, 3)}) {
        for (int it = 0; it < 8; ++it) {
            auto f = rand_reduced(rng, sig, 3, 2);
            auto g = rand_reduced(rng, sig, 3, 2);
            CHECK(rotate_reduced(reduced_mul(f, g)) ==
                  reduced_mul(rotate_reduced(f), rotate_reduced(g)));
            CHECK(rotate_reduced(poisson_red(f, g)) ==
                  poisson_red(rotate_reduced(f), rotate_reduced(g)));
            CHECK(rotate_reduced(star_red_symbolic(f, g)) ==
                  star_red_symbolic(rotate_reduced(f), rotate_reduced(g)));
        }
    }
}

TEST_CASE("ambient rotation intertwines the ambient structures") {
    std::mt19937_64 rng(73);
    Signature sig(2, 1);
    for (int it = 0; it < 8; ++it) {
        AmbientPolyQ f(sig), g(sig);
        for (int t = 0; t < 2; ++t) {
            auto rand_mi = [&]() {
                MultiIndex m = MultiIndex::zero(3);
                unsigned d = rng() % 4;
                for (unsigned j = 0; j < d; ++j) m[rng() % 3]++;
                return m;
            };
            f = f + GaussianRational(make_rat((long)(rng() % 7) - 3)) *
                        AmbientPolyQ::monomial(sig, rand_mi(), rand_mi());
            g = g + GaussianRational(make_rat((long)(rng() % 7) - 3)) *
                        AmbientPolyQ::monomial(sig, rand_mi(), rand_mi());
        }
        CHECK(rotate_ambient(ambient_mul(f, g)) == ambient_mul(rotate_ambient(f), rotate_ambient(g)));
        CHECK(rotate_ambient(ambient_poisson(f, g)) ==
              ambient_poisson(rotate_ambient(f), rotate_ambient(g)));
        CHECK(rotate_ambient(ambient_wick_star_symbolic(f, g)) ==
              ambient_wick_star_symbolic(rotate_ambient(f), rotate_ambient(g)));
    }
}

TEST_CASE("rotation is not a *-isomorphism for s < 1+n") {
    for (Signature sig : {Signature(1, 1), Signature(2, 1), Signature(2, 2), Signature(3, 3)}) {
        // witness Z[e_n, 0]
        auto f = ReducedPolyQ::monomial(sig, MultiIndex::unit((size_t)sig.n, (size_t)sig.n - 1),
                                        MultiIndex::zero((size_t)sig.n));
        auto lhs = rotate_reduced(reduced_conj(f));
        auto rhs = reduced_conj(rotate_reduced(f));
        CHECK(lhs == -rhs);
        CHECK(lhs != rhs);
    }
}

TEST_CASE("rotation maps the relation polynomial across signatures") {
    for (Signature sig : {Signature(1, 1), Signature(2, 1), Signature(2, 2), Signature(3, 2)}) {
        auto relation = [](const Signature& s) {
            ReducedPolyQ r = ReducedPolyQ::one(s);
            for (int k = 1; k <= s.n; ++k)
                r = r - GaussianRational(Rat(s.nu(k))) *
                            ReducedPolyQ::monomial(s, MultiIndex::unit((size_t)s.n, (size_t)k - 1),
                                                   MultiIndex::unit((size_t)s.n, (size_t)k - 1));
            return r;
        };
        CHECK(rotate_reduced(relation(sig)) == relation(Signature(sig.n, sig.n + 1)));
    }
}
