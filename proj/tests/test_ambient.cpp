#include <doctest.h>

#include <random>

#include "starred/ambient.hpp"

using namespace starred;

namespace {

MultiIndex E(size_t len, size_t k) { return MultiIndex::unit(len, k); }
MultiIndex Z(size_t len) { return MultiIndex::zero(len); }

AmbientPolyQ rand_monomial(std::mt19937_64& rng, const Signature& sig, unsigned maxdeg) {
    size_t len = (size_t)sig.n + 1;
    auto rand_mi = [&]() {
        MultiIndex m = MultiIndex::zero(len);
        unsigned d = rng() % (maxdeg + 1);
        for (unsigned j = 0; j < d; ++j) m[rng() % len]++;
        return m;
    };
    return AmbientPolyQ::monomial(sig, rand_mi(), rand_mi());
}

AmbientPolyQ rand_poly(std::mt19937_64& rng, const Signature& sig, unsigned maxdeg, int nterms) {
    AmbientPolyQ f(sig);
    for (int t = 0; t < nterms; ++t) {
        GaussianRational c(make_rat((long)(rng() % 9) - 4, 1 + (long)(rng() % 3)),
                           make_rat((long)(rng() % 5) - 2));
        f = f + c * rand_monomial(rng, sig, maxdeg);
    }
    return f;
}

} // namespace

TEST_CASE("pointwise product: keys add") {
    Signature sig(1, 2);
    auto z0 = AmbientPolyQ::monomial(sig, E(2, 0), Z(2));
    auto zb0 = AmbientPolyQ::monomial(sig, Z(2), E(2, 0));
    auto prod = ambient_mul(z0, zb0);
    CHECK(prod == AmbientPolyQ::monomial(sig, E(2, 0), E(2, 0)));

    std::mt19937_64 rng(1);
    auto one = AmbientPolyQ::constant(sig, GaussianRational(1));
    auto f = rand_poly(rng, sig, 2, 3);
    CHECK(ambient_mul(one, f) == f);

    // (z^{E0} + zbar^{E1})^2 = z^{2E0} + 2 z^{E0} zbar^{E1} + zbar^{2E1}
    auto zb1 = AmbientPolyQ::monomial(sig, Z(2), E(2, 1));
    auto s = z0 + zb1;
    auto sq = ambient_mul(s, s);
    AmbientPolyQ want(sig);
    want.add({E(2, 0) + E(2, 0), Z(2)}, GaussianRational(1));
    want.add({E(2, 0), E(2, 1)}, GaussianRational(2));
    want.add({Z(2), E(2, 1) + E(2, 1)}, GaussianRational(1));
    CHECK(sq == want);
}

TEST_CASE("Poisson bracket pinned values") {
    Signature sig(1, 2);
    auto z0 = AmbientPolyQ::monomial(sig, E(2, 0), Z(2));
    auto zb0 = AmbientPolyQ::monomial(sig, Z(2), E(2, 0));
    // {zbar^{E0}, z^{E0}} = -i
    auto br = ambient_poisson(zb0, z0);
    CHECK(br == AmbientPolyQ::constant(sig, GaussianRational(Rat(0), Rat(-1))));

    std::mt19937_64 rng(3);
    auto f = rand_poly(rng, sig, 3, 4);
    CHECK(ambient_poisson(f, f).is_zero());

    Signature s11(1, 1);
    auto z1 = AmbientPolyQ::monomial(s11, E(2, 1), Z(2));
    auto zb1 = AmbientPolyQ::monomial(s11, Z(2), E(2, 1));
    CHECK(ambient_poisson(zb1, z1) == AmbientPolyQ::constant(s11, GaussianRational::unit_i()));

    CHECK_THROWS_AS(ambient_poisson(AmbientPolyQ::constant(sig, GaussianRational(1)),
                                    AmbientPolyQ::constant(s11, GaussianRational(1))),
                    SignatureMismatch);
}

TEST_CASE("Wick star pinned structure constants") {
    Signature sig(1, 2);
    auto z0 = AmbientPolyQ::monomial(sig, E(2, 0), Z(2));
    auto zb0 = AmbientPolyQ::monomial(sig, Z(2), E(2, 0));
    // z * zbar has min{Q,R} = 0: a single term
    auto p1 = ambient_wick_star_symbolic(z0, zb0);
    CHECK(p1.terms.size() == 1);
    CHECK(p1.terms.begin()->second == HRational(1));

    // zbar^{E1} * z^{E1} = Monom{E1}{E1} + nu_1 hbar, signature (1,1)
    Signature s11(1, 1);
    auto z1 = AmbientPolyQ::monomial(s11, E(2, 1), Z(2));
    auto zb1 = AmbientPolyQ::monomial(s11, Z(2), E(2, 1));
    auto p2 = ambient_wick_star_symbolic(zb1, z1);
    AmbientPolyH want2(s11);
    want2.add({E(2, 1), E(2, 1)}, HRational(1));
    want2.add({Z(2), Z(2)},
              HRational(HPoly(std::vector<GaussianRational>{GaussianRational(0), GaussianRational(-1)})));
    CHECK(p2 == want2);

    // zbar^{2E0} * z^{2E0} = Monom{2E0}{2E0} + 4 hbar Monom{E0}{E0} + 2 hbar^2
    auto zb02 = AmbientPolyQ::monomial(sig, Z(2), E(2, 0) + E(2, 0));
    auto z02 = AmbientPolyQ::monomial(sig, E(2, 0) + E(2, 0), Z(2));
    auto p3 = ambient_wick_star_symbolic(zb02, z02);
    AmbientPolyH want3(sig);
    want3.add({E(2, 0) + E(2, 0), E(2, 0) + E(2, 0)}, HRational(1));
    want3.add({E(2, 0), E(2, 0)},
              HRational(HPoly(std::vector<GaussianRational>{GaussianRational(0), GaussianRational(4)})));
    want3.add({Z(2), Z(2)}, HRational(HPoly(std::vector<GaussianRational>{
                                GaussianRational(0), GaussianRational(0), GaussianRational(2)})));
    CHECK(p3 == want3);

    // numeric evaluation agrees with the symbolic product
    auto pnum = ambient_wick_star_at(zb02, z02, GaussianRational(make_rat(-1, 2)));
    AmbientPolyQ want_num(sig);
    for (auto& [k, c] : p3.terms) want_num.add(k, c.eval(GaussianRational(make_rat(-1, 2))));
    CHECK(pnum == want_num);
}

TEST_CASE("star: lambda^0 is pointwise, lambda^1 commutator is i * Poisson") {
    std::mt19937_64 rng(11);
    for (Signature sig : {Signature(1, 1), Signature(1, 2), Signature(2, 2)}) {
        for (int it = 0; it < 12; ++it) {
            auto f = rand_poly(rng, sig, 3, 3);
            auto g = rand_poly(rng, sig, 3, 3);
            auto fg = ambient_wick_star_symbolic(f, g);
            auto gf = ambient_wick_star_symbolic(g, f);

            AmbientPolyQ order0(sig), order1comm(sig);
            for (auto& [k, c] : fg.terms) {
                REQUIRE(c.den.is_one());
                if (!c.num.is_zero()) order0.add(k, c.num.c[0]);
            }
            CHECK(order0 == ambient_mul(f, g));

            auto comm = fg - gf;
            for (auto& [k, c] : comm.terms) {
                REQUIRE(c.den.is_one());
                if (c.num.degree() >= 1) order1comm.add(k, c.num.c[1]);
            }
            CHECK(order1comm == GaussianRational::unit_i() * ambient_poisson(f, g));
        }
    }
}

TEST_CASE("star associativity with a formal parameter") {
    std::mt19937_64 rng(23);
    for (Signature sig : {Signature(1, 1), Signature(2, 1), Signature(2, 3), Signature(3, 2)}) {
        for (int it = 0; it < 10; ++it) {
            auto f = rand_monomial(rng, sig, 4);
            auto g = rand_monomial(rng, sig, 4);
            auto h = rand_monomial(rng, sig, 4);
            auto lhs = ambient_wick_star_symbolic(ambient_wick_star_symbolic(f, g), to_hrational(h));
            auto rhs = ambient_wick_star_symbolic(to_hrational(f), ambient_wick_star_symbolic(g, h));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("star is unital and Hermitian") {
    std::mt19937_64 rng(31);
    Signature sig(2, 2);
    auto one = AmbientPolyQ::constant(sig, GaussianRational(1));
    for (int it = 0; it < 10; ++it) {
        auto f = rand_poly(rng, sig, 3, 3);
        auto g = rand_poly(rng, sig, 3, 3);
        CHECK(ambient_wick_star_symbolic(one, f) == to_hrational(f));
        CHECK(ambient_wick_star_symbolic(f, one) == to_hrational(f));
        // conj(f * g) = conj(g) * conj(f), hbar a real symbol
        CHECK(ambient_conj(ambient_wick_star_symbolic(f, g)) ==
              ambient_wick_star_symbolic(ambient_conj(g), ambient_conj(f)));
    }
}

TEST_CASE("Poisson bracket laws: antisymmetry, Leibniz, Jacobi") {
    std::mt19937_64 rng(41);
    for (Signature sig : {Signature(1, 1), Signature(2, 2)}) {
        for (int it = 0; it < 8; ++it) {
            auto f = rand_poly(rng, sig, 2, 3);
            auto g = rand_poly(rng, sig, 2, 3);
            auto h = rand_poly(rng, sig, 2, 3);
            CHECK(ambient_poisson(f, g) == -ambient_poisson(g, f));
            CHECK(ambient_poisson(f, ambient_mul(g, h)) ==
                  ambient_mul(g, ambient_poisson(f, h)) + ambient_mul(ambient_poisson(f, g), h));
            auto jac = ambient_poisson(f, ambient_poisson(g, h)) +
                       ambient_poisson(g, ambient_poisson(h, f)) +
                       ambient_poisson(h, ambient_poisson(f, g));
            CHECK(jac.is_zero());
        }
    }
}

TEST_CASE("conjugation involution") {
    std::mt19937_64 rng(5);
    Signature sig(2, 2);
    auto f = rand_poly(rng, sig, 3, 4);
    CHECK(ambient_conj(ambient_conj(f)) == f);
    auto i1 = AmbientPolyQ::constant(sig, GaussianRational::unit_i());
    CHECK(ambient_conj(i1) == AmbientPolyQ::constant(sig, GaussianRational(Rat(0), Rat(-1))));
    auto m = AmbientPolyQ::monomial(sig, E(3, 0), E(3, 1) + E(3, 2));
    CHECK(ambient_conj(m) == AmbientPolyQ::monomial(sig, E(3, 1) + E(3, 2), E(3, 0)));
}

TEST_CASE("seminorm pinned values and errors") {
    Signature sig(1, 2);
    auto m = AmbientPolyQ::monomial(sig, E(2, 0), E(2, 0));
    CHECK(ambient_seminorm(m, Rat(2)) == 4);
    CHECK(ambient_seminorm(AmbientPolyQ::zero(sig), Rat(5)) == 0);
    auto c = GaussianRational(Rat(1), Rat(1)) * AmbientPolyQ::monomial(sig, E(2, 0), Z(2));
    CHECK(ambient_seminorm(c, Rat(1)) == 2); // majorant |re|+|im|
    CHECK_THROWS_AS(ambient_seminorm(m, make_rat(1, 2)), std::invalid_argument);
}

TEST_CASE("U(1) projection") {
    Signature sig(1, 2);
    auto inv = AmbientPolyQ::monomial(sig, E(2, 0), E(2, 1));
    CHECK(u1_project(inv) == inv);
    auto ninv = AmbientPolyQ::monomial(sig, E(2, 0), Z(2));
    CHECK(u1_project(ninv).is_zero());
    auto mixed = inv + AmbientPolyQ::monomial(sig, E(2, 0) + E(2, 0), E(2, 0));
    CHECK(u1_project(mixed) == inv);
    CHECK(u1_project(u1_project(mixed)) == u1_project(mixed));
}

TEST_CASE("level-set scaling by falling factors") {
    Signature sig(2, 2);
    auto m1 = AmbientPolyQ::monomial(sig, E(3, 0), E(3, 0));
    auto s1 = s_scale_on_levelset(m1);
    CHECK(s1.terms.begin()->second == HRational(1));

    auto m2 = AmbientPolyQ::monomial(sig, E(3, 0) + E(3, 0), E(3, 0) + E(3, 0));
    auto s2 = s_scale_on_levelset(m2);
    CHECK(s2.terms.begin()->second == HRational(falling_scaled(2)));

    auto m3 = AmbientPolyQ::monomial(sig, E(3, 0) + E(3, 0) + E(3, 1), E(3, 0) + E(3, 1) + E(3, 2));
    auto s3 = s_scale_on_levelset(m3);
    CHECK(s3.terms.begin()->second == HRational(falling_scaled(3)));

    auto bad = AmbientPolyQ::monomial(sig, E(3, 0), Z(3));
    CHECK_THROWS_AS(s_scale_on_levelset(bad), std::invalid_argument);
}

TEST_CASE("block permutation equivariance") {
    std::mt19937_64 rng(59);
    Signature sig(2, 2); // sign blocks {0,1} and {2}
    std::vector<int> perm{1, 0, 2};
    for (int it = 0; it < 8; ++it) {
        auto f = rand_poly(rng, sig, 3, 3);
        auto g = rand_poly(rng, sig, 3, 3);
        auto pf = apply_index_permutation(f, perm);
        auto pg = apply_index_permutation(g, perm);
        CHECK(apply_index_permutation(ambient_mul(f, g), perm) == ambient_mul(pf, pg));
        CHECK(apply_index_permutation(ambient_poisson(f, g), perm) == ambient_poisson(pf, pg));
        auto sf = ambient_wick_star_symbolic(f, g);
        AmbientPolyH psf(sig);
        for (auto& [k, c] : apply_index_permutation(sf, perm).terms) psf.add(k, c);
        CHECK(psf == ambient_wick_star_symbolic(pf, pg));
    }
}
